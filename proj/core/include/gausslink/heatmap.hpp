#pragma once

#include <filesystem>
#include <string>

namespace gausslink {

/// Renders one metric column of a two-axis sweep CSV as an SVG heatmap.
/// The first axis runs vertically (bottom to top), the second horizontally.
/// Empty cells (unstable points) are drawn in neutral grey. Throws
/// std::invalid_argument for CSV text that is not a complete row-major grid.
std::string render_heatmap_svg(const std::string& csv_text, const std::string& metric);

void emit_heatmap(const std::filesystem::path& csv, const std::string& metric, const std::filesystem::path& svg);

}  // namespace gausslink
