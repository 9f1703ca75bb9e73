#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qiopa/sweep.hpp"

namespace qiopa {

// Floats in data files carry 9 significant digits ("%.9g").
std::string format_g9(double v);

// CSV body for one curve: lowercase header (x,r,d and success_prob when the
// curve records it), comma separators, LF line endings. Byte-identical for
// identical inputs; no clocks.
std::string curve_to_csv(const SweepCurve& curve);

// Same content as the CSV plus the curve metadata, as a JSON value.
nlohmann::json curve_to_json(const SweepCurve& curve);

// Writes via a temporary file in the target directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qiopa
