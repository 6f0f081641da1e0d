#include "hdt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hdt/errors.hpp"

namespace hdt {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2", "#aec7e8", "#98df8a"};

}  // namespace

std::string render_svg(const CsvTable& table, int width, int height) {
  if (table.columns.size() < 2 || table.rows.empty()) {
    throw ConfigError("render_svg: need an x column, one data column, and "
                      "at least one row");
  }
  const int margin = 40;
  const double plot_w = width - 2 * margin;
  const double plot_h = height - 2 * margin;

  double xmin = table.rows.front()[0], xmax = xmin;
  double ymin = table.rows.front()[1], ymax = ymin;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      ymin = std::min(ymin, row[c]);
      ymax = std::max(ymax, row[c]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const auto sx = [&](double x) {
    return margin + plot_w * (x - xmin) / (xmax - xmin);
  };
  const auto sy = [&](double y) {
    return height - margin - plot_h * (y - ymin) / (ymax - ymin);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << " " << height << "\">\n";
  out << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  const std::size_t ncols = table.columns.size();
  for (std::size_t c = 1; c < ncols; ++c) {
    const char* color = kPalette[(c - 1) % (sizeof(kPalette) / sizeof(char*))];
    out << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (const auto& row : table.rows) {
      if (c >= row.size() || !std::isfinite(row[c])) continue;
      if (!first) out << " ";
      out << sx(row[0]) << "," << sy(row[c]);
      first = false;
    }
    out << "\"/>\n";
    // Legend swatch + label.
    const double ly = margin + 14.0 * static_cast<double>(c);
    out << "  <line x1=\"" << (margin + 6) << "\" y1=\"" << ly << "\" x2=\""
        << (margin + 26) << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << (margin + 30) << "\" y=\"" << (ly + 4)
        << "\" font-family=\"monospace\" font-size=\"11\">"
        << table.columns[c] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const CsvTable& table, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  file << render_svg(table);
  if (!file) {
    throw IoError("write failed for '" + path + "'");
  }
}

}  // namespace hdt
