#include "lp.hpp"

#include <cmath>
#include <cstddef>

namespace credal::detail {

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, int max_pivots) {
  constexpr double kEps = 1e-12;
  const std::size_t rows = a.size(), cols = c.size();
  // tableau: [A | I | b], objective row holds reduced costs -c
  const std::size_t width = cols + rows + 1;
  std::vector<std::vector<double>> t(rows + 1, std::vector<double>(width, 0.0));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = a[i][j];
    t[i][cols + i] = 1.0;
    t[i][width - 1] = b[i];
    basis[i] = cols + i;
  }
  for (std::size_t j = 0; j < cols; ++j) t[rows][j] = -c[j];

  LpResult out;
  while (out.pivots < max_pivots) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t[rows][j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter == width) {
      out.optimal = true;
      break;
    }
    std::size_t leave = rows;
    double best = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= kEps) continue;
      const double ratio = t[i][width - 1] / t[i][enter];
      if (leave == rows || ratio < best - kEps || (std::abs(ratio - best) <= kEps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) {
      out.bounded = false;
      return out;
    }
    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++out.pivots;
  }
  out.x.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) out.x[basis[i]] = t[i][width - 1];
  }
  out.objective = t[rows][width - 1];
  return out;
}

}  // namespace credal::detail
