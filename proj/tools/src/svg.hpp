#pragma once

#include <string>
#include <utility>
#include <vector>

namespace genus1::cli {

struct RegionCell {
  double a = 0.0;
  double b = 0.0;
  int n = -1;  // -1: failed solve
};

// Two-colour picture of the scanned parameter window: N <= 3 light, N >= 4
// dark, failures grey. Cells outside P are left blank.
std::string region_svg(const std::vector<RegionCell>& cells, double a_min, double a_max, double b_min, double b_max,
                       int grid);

// Sampled curve points plus the polygon through the support optimizers.
std::string hull_svg(const std::vector<std::pair<double, double>>& curve_points,
                     const std::vector<std::pair<double, double>>& hull_points);

}  // namespace genus1::cli
