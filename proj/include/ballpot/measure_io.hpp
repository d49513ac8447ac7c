#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ballpot/measure.hpp"

namespace ballpot {

/// Measure files are JSON documents:
///   {"dimension": 2,
///    "atoms": [{"coords": [[re, im], ...], "mass": m}, ...],
///    "densities": [{"alpha": a, "amplitude": A, "cutoff": c}, ...]}
/// Unknown fields are rejected. Errors are ConfigError with a line number (syntax) or a field
/// path such as atoms[3].mass (content).
Measure parseMeasure(std::string_view text, std::string_view source = "<input>");
Measure loadMeasure(const std::filesystem::path& path);

/// From an already parsed value; `where` prefixes field paths in messages.
Measure measureFromJson(const nlohmann::json& doc, const std::string& where = "");
nlohmann::json measureToJson(const Measure& mu);

/// Parses JSON text, turning syntax errors into ConfigError naming source and line.
nlohmann::json parseJsonText(std::string_view text, std::string_view source);
std::string readTextFile(const std::filesystem::path& path);

}  // namespace ballpot
