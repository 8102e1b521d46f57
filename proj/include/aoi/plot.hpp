#pragma once

#include <filesystem>
#include <string>

#include "aoi/runner.hpp"

namespace aoi {

/// SVG with a log-scale y axis: the exact curve (simulated when no exact
/// value exists) and the bound curve when present. Output depends only on
/// the table. Throws std::invalid_argument for an empty table.
std::string render_svg(const ResultTable& table);

/// Writes render_svg to `path`; I/O failures throw std::runtime_error naming the path.
void plot(const ResultTable& table, const std::filesystem::path& path);

}  // namespace aoi
