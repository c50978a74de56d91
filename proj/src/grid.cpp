#include <cmath>
#include <string>

#include "kratzer/error.hpp"
#include "kratzer/solver.hpp"

namespace kratzer {

RadialGrid default_grid(double re) { return {1e-3 * re, 50.0 * re, 4000, re}; }

void validate(const RadialGrid& grid) {
  if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || !std::isfinite(grid.r_max)) {
    throw Error(ErrorKind::InvalidParameter, "grid needs 0 < r_min < r_max");
  }
  if (grid.n_points < 200) {
    throw Error(ErrorKind::InvalidParameter, "grid needs at least 200 points, got " + std::to_string(grid.n_points));
  }
  if (!(grid.switch_radius >= 0.0) || !std::isfinite(grid.switch_radius)) {
    throw Error(ErrorKind::InvalidParameter, "switch radius must be >= 0");
  }
}

std::vector<double> grid_points(const RadialGrid& grid) {
  validate(grid);
  const double s = grid.switch_radius;
  const int n = grid.n_points;
  std::vector<double> r(static_cast<std::size_t>(n));
  r.front() = grid.r_min;
  r.back() = grid.r_max;
  if (s == 0.0) {
    const double h = (grid.r_max - grid.r_min) / (n - 1);
    for (int i = 1; i < n - 1; ++i) r[i] = grid.r_min + i * h;
    return r;
  }
  // x = r + s ln r, solved in t = ln r where e^t + s t is convex and increasing.
  const auto map = [s](double t) { return std::exp(t) + s * t; };
  const double t_lo = std::log(grid.r_min);
  const double t_hi = std::log(grid.r_max);
  const double x_lo = map(t_lo);
  const double dx = (map(t_hi) - x_lo) / (n - 1);
  double t = t_lo;
  for (int i = 1; i < n - 1; ++i) {
    const double x = x_lo + i * dx;
    double a = t;
    double b = t_hi;
    for (int iter = 0; iter < 100; ++iter) {
      const double f = map(t) - x;
      if (f > 0.0) b = t; else a = t;
      double next = t - f / (std::exp(t) + s);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t))) {
        t = next;
        break;
      }
      t = next;
    }
    r[i] = std::exp(t);
  }
  return r;
}

}  // namespace kratzer
