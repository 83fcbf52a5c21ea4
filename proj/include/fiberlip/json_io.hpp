#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "fiberlip/fibration.hpp"

namespace fiberlip::io {

inline constexpr const char* kSchema = "fiberlip/1";

struct LoadedSpec {
    Fibration fibration;
    std::map<std::string, Section> sections;
};

/// Fibration spec:
/// { "schema": "fiberlip/1",
///   "space": {"backend": "...", "points": [[...]], "dist": [[...]]?},
///   "fibers": {"<point_index>": "<base_label>", ...},
///   "base_labels": ["..."]?, "base_coords": {"<label>": [...]}?,
///   "affine": {"matrix": [[...]], "labels": {"<label>": [...]}}?,
///   "sections": {"name": {"<base_label>": <point_index>}}? }
/// The loader rejects non-surjective fiber maps.
LoadedSpec load_fibration_spec(const nlohmann::json& doc);
LoadedSpec load_fibration_file(const std::string& path);

nlohmann::json fibration_to_json(const Fibration& f, const std::map<std::string, Section>& sections);

/// Parses with line/column diagnostics on failure (SpecError).
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

} // namespace fiberlip::io
