#include "core/rational.hpp"

#include <cctype>
#include <charconv>

namespace compro {

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view s) {
  size_t i = 0, j = s.size();
  while (i < j && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
  s = s.substr(i, j - i);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace compro
