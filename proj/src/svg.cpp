#include "gepc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gepc::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string header(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\" font-family=\"sans-serif\">\n"
         "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) + "\" fill=\"white\"/>\n";
}

std::string text(double x, double y, std::string_view body, const char* extra = "") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"11\"" + extra + ">" + escape_xml(body) +
         "</text>\n";
}

std::string title_element(const std::string& title, double width) {
  if (title.empty()) return {};
  return "<text x=\"" + num(width / 2) + "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" + escape_xml(title) +
         "</text>\n";
}

// White to dark blue.
std::string color(double fraction) {
  const double f = std::clamp(fraction, 0.0, 1.0);
  auto channel = [f](int lo) { return static_cast<int>(std::lround(255.0 - f * (255.0 - lo))); };
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(8), channel(48), channel(107));
  return buf;
}

}  // namespace

std::string escape_xml(std::string_view in) {
  std::string out;
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string scatter(const ScatterData& d) {
  const std::size_t n = d.labels.size();
  if (n == 0) throw std::invalid_argument("scatter: no points");
  if (d.x.size() != n || d.y.size() != n) throw std::invalid_argument("scatter: label/coordinate count mismatch");
  const double width = 640, height = 520, margin = 60;
  auto [xmin, xmax] = std::minmax_element(d.x.begin(), d.x.end());
  auto [ymin, ymax] = std::minmax_element(d.y.begin(), d.y.end());
  const double xspan = *xmax - *xmin > 0 ? *xmax - *xmin : 1.0;
  const double yspan = *ymax - *ymin > 0 ? *ymax - *ymin : 1.0;
  auto px = [&](double x) { return margin + (x - *xmin) / xspan * (width - 2 * margin); };
  auto py = [&](double y) { return height - margin - (y - *ymin) / yspan * (height - 2 * margin); };

  std::string out = header(width, height) + title_element(d.title, width);
  out += "<g class=\"axes\" stroke=\"#888888\">\n<line x1=\"" + num(margin) + "\" y1=\"" + num(height - margin) +
         "\" x2=\"" + num(width - margin) + "\" y2=\"" + num(height - margin) + "\"/>\n<line x1=\"" + num(margin) +
         "\" y1=\"" + num(margin) + "\" x2=\"" + num(margin) + "\" y2=\"" + num(height - margin) + "\"/>\n</g>\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += "<circle class=\"marker\" cx=\"" + num(px(d.x[i])) + "\" cy=\"" + num(py(d.y[i])) +
           "\" r=\"4\" fill=\"#08306b\"><title>" + escape_xml(d.labels[i]) + "</title></circle>\n";
    out += "<text class=\"label\" x=\"" + num(px(d.x[i]) + 6) + "\" y=\"" + num(py(d.y[i]) - 6) +
           "\" font-size=\"10\">" + escape_xml(d.labels[i]) + "</text>\n";
  }
  return out + "</svg>\n";
}

std::string heatmap(const HeatmapData& d) {
  const std::size_t rows = d.values.rows(), cols = d.values.cols();
  if (rows == 0 || cols == 0) throw std::invalid_argument("heatmap: no cells");
  if (d.row_labels.size() != rows || d.col_labels.size() != cols)
    throw std::invalid_argument("heatmap: label count does not match the matrix");
  double vmax = 0.0;
  for (double v : d.values.values()) {
    if (v < 0.0) throw std::invalid_argument("heatmap: negative value");
    vmax = std::max(vmax, v);
  }
  const double cell = 18, left = 160, top = 90, legend_w = 200;
  const double width = left + cols * cell + 40;
  const double height = top + rows * cell + 80;
  std::string out = header(std::max(width, left + legend_w + 40), height) + title_element(d.title, width);
  for (std::size_t c = 0; c < cols; ++c) {
    const double x = left + c * cell + cell / 2;
    out += "<text x=\"" + num(x) + "\" y=\"" + num(top - 6) + "\" font-size=\"9\" transform=\"rotate(-60 " + num(x) +
           " " + num(top - 6) + ")\">" + escape_xml(d.col_labels[c]) + "</text>\n";
  }
  for (std::size_t r = 0; r < rows; ++r) {
    out += text(left - 6, top + r * cell + cell * 0.7, d.row_labels[r], " text-anchor=\"end\"");
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = d.values(r, c);
      out += "<rect class=\"cell\" x=\"" + num(left + c * cell) + "\" y=\"" + num(top + r * cell) + "\" width=\"" +
             num(cell) + "\" height=\"" + num(cell) + "\" fill=\"" + color(vmax > 0 ? v / vmax : 0.0) + "\"><title>" +
             escape_xml(d.row_labels[r]) + " / " + escape_xml(d.col_labels[c]) + ": " + num(v) + "</title></rect>\n";
    }
  }
  const double ly = top + rows * cell + 30;
  out += "<g class=\"legend\">\n<defs><linearGradient id=\"scale\" x1=\"0\" x2=\"1\" y1=\"0\" y2=\"0\">"
         "<stop offset=\"0\" stop-color=\"" + color(0) + "\"/><stop offset=\"1\" stop-color=\"" + color(1) +
         "\"/></linearGradient></defs>\n<rect x=\"" + num(left) + "\" y=\"" + num(ly) + "\" width=\"" + num(legend_w) +
         "\" height=\"12\" fill=\"url(#scale)\" stroke=\"#888888\"/>\n" + text(left, ly + 26, "0") +
         text(left + legend_w, ly + 26, num(vmax), " text-anchor=\"end\"") + "</g>\n";
  return out + "</svg>\n";
}

std::string dispersion(const DispersionData& d) {
  const std::size_t rows = d.labels.size();
  if (rows == 0) throw std::invalid_argument("dispersion: no target rows");
  if (d.positions.size() != rows) throw std::invalid_argument("dispersion: label/row count mismatch");
  const double left = 120, top = 40, row_h = 24, plot_w = 560;
  const double width = left + plot_w + 30, height = top + rows * row_h + 40;
  std::string out = header(width, height) + title_element(d.title, width);
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = top + r * row_h + row_h / 2;
    out += text(left - 8, y + 4, d.labels[r], " text-anchor=\"end\"");
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" + num(y) +
           "\" stroke=\"#dddddd\"/>\n";
    for (double p : d.positions[r]) {
      if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("dispersion: position outside [0, 1)");
      const double x = left + p * plot_w;
      out += "<line class=\"tick\" x1=\"" + num(x) + "\" y1=\"" + num(y - 8) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(y + 8) + "\" stroke=\"#08306b\"/>\n";
    }
  }
  out += text(left, height - 12, "0") + text(left + plot_w, height - 12, "1", " text-anchor=\"end\"");
  return out + "</svg>\n";
}

std::string render_figure(const FigureData& data) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ScatterData>) return scatter(d);
        else if constexpr (std::is_same_v<T, HeatmapData>) return heatmap(d);
        else return dispersion(d);
      },
      data);
}

}  // namespace gepc::svg
