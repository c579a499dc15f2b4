#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fixopt {

/// One iteration of one run. Row n describes the iterate x_n; the step
/// fields describe the step that produced x_n from x_{n-1} and are empty in
/// row 0.
struct RunRow {
  std::size_t n = 0;
  std::vector<double> residuals;  // d(x_n^i, T^i(x_n^i)) per factor
  double f_value = 0.0;
  std::size_t clamps = 0;  // clamp events during the step into x_n

  std::vector<double> residuals_y;  // d(T^i(y), y) for y of step n-1
  std::vector<double> grad_norms;   // ||G^i|| used in step n-1
  std::vector<double> h;            // h^i of step n-1
};

struct RunRecord {
  std::string algorithm;
  std::size_t sampling = 0;
  std::uint64_t seed = 0;
  std::vector<RunRow> rows;
  std::uint64_t final_digest = 0;
  double wall_seconds = 0.0;
};

}  // namespace fixopt
