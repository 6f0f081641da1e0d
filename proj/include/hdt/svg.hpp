#pragma once

#include <string>

#include "hdt/csv.hpp"

namespace hdt {

/// Minimal static SVG 1.1 line plot of a table: first column on the x-axis,
/// one polyline per remaining column. No external plotting dependency.
std::string render_svg(const CsvTable& table, int width = 640,
                       int height = 420);

void write_svg(const CsvTable& table, const std::string& path);

}  // namespace hdt
