#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/axioms.hpp"
#include "core/calibrate.hpp"
#include "core/system.hpp"

namespace compro {

using Json = nlohmann::json;  // std::map-backed, so object keys serialize sorted

/// Canonical text form: sorted keys, two-space indent, trailing newline.
/// Identical values produce identical bytes.
std::string canonical(const Json& j);

Json id_json(const ElementId& id);
ElementId id_from_json(const Json& j);

Json report_json(const AxiomReport& rep);
Json ladder_json(const Ladder& ladder);
Ladder ladder_from_json(const Json& j);

struct LoadOptions {
  bool strict = false;
};

struct LoadOutcome {
  std::vector<std::string> warnings;
};

/// Reads the instance format: m, theta, elements, act pairs, sparse dpi
/// entries, optional boundary flags. Asymmetric act input is closed up with
/// a warning, or rejected under strict. A dpi entry over an inactive pair is
/// always an error.
CompositeSystem load_system_json(const Json& doc, const LoadOptions& opt,
                                 LoadOutcome* outcome = nullptr);
CompositeSystem load_system_file(const std::string& path, const LoadOptions& opt,
                                 LoadOutcome* outcome = nullptr);

/// Serializes a table-backed system (formula backends are materialized into
/// explicit entries).
Json system_json(const CompositeSystem& sys);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace compro
