#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the solver paths it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "credal/core_model.hpp"

namespace oracle {

// Solves the square system m x = rhs by Gaussian elimination with partial
// pivoting. Returns false when singular.
inline bool solve(std::vector<std::vector<double>> m, std::vector<double> rhs, std::vector<double>& x) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-12) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return true;
}

// Vertices of {p : l <= p <= u, sum p = 1} by trying every choice of n - 1
// tight bound constraints out of 2n, together with the sum constraint.
inline std::vector<std::vector<double>> brute_force_vertices(const std::vector<double>& l,
                                                             const std::vector<double>& u) {
  const std::size_t n = l.size();
  std::vector<std::vector<double>> out;
  std::vector<int> pick(2 * n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n - 1), 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<std::vector<double>> m;
    std::vector<double> rhs;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (!pick[k]) continue;
      std::vector<double> row(n, 0.0);
      row[k % n] = 1.0;
      m.push_back(row);
      rhs.push_back(k < n ? l[k] : u[k - n]);
    }
    m.push_back(std::vector<double>(n, 1.0));
    rhs.push_back(1.0);
    std::vector<double> x;
    if (!solve(m, rhs, x)) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < n; ++i) feasible = feasible && x[i] >= l[i] - 1e-10 && x[i] <= u[i] + 1e-10;
    if (!feasible) continue;
    bool dup = false;
    for (const auto& v : out) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(v[i] - x[i]));
      dup = dup || d < 1e-9;
    }
    if (!dup) out.push_back(x);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

// Every vertex in `a` has a partner in `b` within `tol` and vice versa.
inline bool same_vertex_sets(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                             double tol) {
  auto covered = [&](const auto& from, const auto& to) {
    for (const auto& x : from) {
      bool hit = false;
      for (const auto& y : to) {
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
        hit = hit || d <= tol;
      }
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

// Minimizer of a convex function on [lo, hi] by bisection on the sign of a
// central difference. Generic: looks only at function values.
inline double minimize_1d(const std::function<double(double)>& f, double lo, double hi, double h = 1e-6) {
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid + h) - f(mid - h) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Minimizer of a convex function on [lo, hi] by golden-section search on
// function values. Suited to kinked functions.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double r = 0.6180339887498949;
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300 && hi - lo > 1e-14 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

inline double expected(const credal::Distribution& p, const std::function<double(double)>& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * g(p.space()[i]);
  return s;
}

// Random interval bounds on n outcomes whose polytope is non-empty.
inline void random_bounds(std::mt19937_64& rng, std::size_t n, std::vector<double>& l, std::vector<double>& u) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    l.assign(n, 0.0);
    u.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double a = unit(rng) * 0.6, b = unit(rng);
      if (a > b) std::swap(a, b);
      // sometimes pin a coordinate
      if (unit(rng) < 0.1) b = a;
      l[i] = a;
      u[i] = b;
    }
    const double sl = std::accumulate(l.begin(), l.end(), 0.0);
    const double su = std::accumulate(u.begin(), u.end(), 0.0);
    if (sl <= 1.0 && su >= 1.0) return;
  }
}

}  // namespace oracle
