#pragma once

#include <stdexcept>
#include <string>

namespace compro {

/// Malformed input: bad schema, bad flags, bad word syntax.
class usage_error : public std::runtime_error {
 public:
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

/// An outcome the theory forbids on verified inputs (reserved exit code 3).
class contradiction_error : public std::runtime_error {
 public:
  explicit contradiction_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace compro
