#pragma once

// CSV and SVG emission for sheets and curves.
//
// CSV: header "n,s,x,y", one line per (row, node), LF endings, every number
// with 17 significant digits so that a read-back is bit-identical.
// SVG: version 1.1, one polyline per curve, viewBox fitted to the data with
// a 5% margin, strokes cycling red, blue, black. The y axis points up.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dflow/geometry.hpp"

namespace dflow {

std::string format_csv(const Sheet& sheet);

struct CsvTable {
    std::vector<double> s;                         ///< node parameters, shared by every row
    std::vector<std::vector<PlanePoint>> rows;     ///< rows[n][i]
};

/// Parses text in the format_csv layout. Rows must be numbered 0, 1, ...
/// and all rows must share the same s column. Errors carry the line number.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Grid spanned by the s column (first node and mean spacing).
SGrid grid_of(const CsvTable& table);

std::string render_svg(std::span<const std::vector<PlanePoint>> curves, std::span<const PlanePoint> markers = {});

void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace dflow
