#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gepc/matrix.hpp"

namespace gepc::svg {

struct ScatterData {
  std::vector<std::string> labels;
  std::vector<double> x;
  std::vector<double> y;
  std::string title;
};

/// Values are colored linearly from 0 (white) to the matrix maximum.
struct HeatmapData {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Matrix values;
  std::string title;
};

struct DispersionData {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> positions;  // each in [0, 1)
  std::string title;
};

using FigureData = std::variant<ScatterData, HeatmapData, DispersionData>;

/// Standalone SVG 1.1 document. Throws std::invalid_argument for empty or
/// inconsistent data. Markers, cells and ticks carry the classes "marker",
/// "cell" and "tick".
std::string render_figure(const FigureData& data);

std::string scatter(const ScatterData& data);
std::string heatmap(const HeatmapData& data);
std::string dispersion(const DispersionData& data);

std::string escape_xml(std::string_view text);

}  // namespace gepc::svg
