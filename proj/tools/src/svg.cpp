#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genus1/format.hpp"

namespace genus1::cli {

namespace {

constexpr double kCanvas = 600.0;

std::string num(double v) { return format_number(v, 6); }

std::string header(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(w) + "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + ' ' + num(h) + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";
}

}  // namespace

std::string region_svg(const std::vector<RegionCell>& cells, double a_min, double a_max, double b_min, double b_max,
                       int grid) {
  const double cw = kCanvas / grid;
  std::string out = header(kCanvas, kCanvas);
  for (const auto& c : cells) {
    const double i = std::round((c.a - a_min) / (a_max - a_min) * (grid - 1));
    const double j = std::round((c.b - b_min) / (b_max - b_min) * (grid - 1));
    const char* fill = c.n < 0 ? "#999999" : (c.n <= 3 ? "#f5d742" : "#c0392b");
    // b grows upwards
    out += "<rect x=\"" + num(i * cw) + "\" y=\"" + num(kCanvas - (j + 1) * cw) + "\" width=\"" + num(cw) +
           "\" height=\"" + num(cw) + "\" fill=\"" + fill + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string hull_svg(const std::vector<std::pair<double, double>>& curve_points,
                     const std::vector<std::pair<double, double>>& hull_points) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto* set : {&curve_points, &hull_points}) {
    for (const auto& [x, y] : *set) {
      lo_x = std::min(lo_x, x);
      hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
  }
  if (!(hi_x > lo_x)) hi_x = lo_x + 1.0;
  if (!(hi_y > lo_y)) hi_y = lo_y + 1.0;
  const double pad = 20.0;
  const double scale = (kCanvas - 2 * pad) / std::max(hi_x - lo_x, hi_y - lo_y);
  auto px = [&](double x) { return pad + (x - lo_x) * scale; };
  auto py = [&](double y) { return kCanvas - pad - (y - lo_y) * scale; };

  std::string out = header(kCanvas, kCanvas);
  if (!hull_points.empty()) {
    out += "<polyline fill=\"#dde8f5\" stroke=\"#1f4e8c\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : hull_points) out += num(px(x)) + ',' + num(py(y)) + ' ';
    out += num(px(hull_points.front().first)) + ',' + num(py(hull_points.front().second)) + "\"/>\n";
  }
  for (const auto& [x, y] : curve_points) {
    out += "<rect x=\"" + num(px(x) - 1) + "\" y=\"" + num(py(y) - 1) + "\" width=\"2\" height=\"2\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace genus1::cli
