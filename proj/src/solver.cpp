#include "kratzer/solver.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>

#include "discretization.hpp"
#include "kratzer/error.hpp"
#include "kratzer/kernels.hpp"

namespace kratzer {

namespace detail {

int Discretization::count_below(double E) const {
  const int n = last();
  int count = 0;
  double pivot = 1.0;
  for (int i = 1; i < n; ++i) {
    double d = diagonal(i, E);
    if (i > 1) {
      const double coupling = k * inv_h[i - 1];
      d -= coupling * coupling / pivot;
    }
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0.0) ++count;
    pivot = d;
  }
  return count;
}

Discretization discretize(const RadialProblem& problem, const RadialGrid& grid, bool parallel) {
  if (!(problem.kinetic_coefficient > 0.0) || !std::isfinite(problem.kinetic_coefficient)) {
    throw Error(ErrorKind::InvalidParameter, "kinetic coefficient must be > 0");
  }
  if (problem.l < 0) throw Error(ErrorKind::InvalidParameter, "l must be >= 0");
  Discretization d;
  d.k = problem.kinetic_coefficient;
  d.r = grid_points(grid);
  const int n = d.last();
  d.v_eff.resize(d.r.size());
  const double centrifugal = problem.l * (problem.l + 1.0) * d.k;
  if (parallel) {
    tabulate_effective(problem.potential, centrifugal, d.r, d.v_eff);
  } else {
    tabulate_effective_serial(problem.potential, centrifugal, d.r, d.v_eff);
  }
  d.inv_h.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d.inv_h[i] = 1.0 / (d.r[i + 1] - d.r[i]);
  d.weight.assign(d.r.size(), 0.0);
  d.kinetic.assign(d.r.size(), 0.0);
  d.well_bottom = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n; ++i) {
    d.weight[i] = 0.5 * (d.r[i + 1] - d.r[i - 1]);
    d.kinetic[i] = d.k * (d.inv_h[i - 1] + d.inv_h[i]);
    d.well_bottom = std::min(d.well_bottom, d.v_eff[i]);
  }
  const auto limit = asymptote(problem.potential);
  d.threshold = limit ? *limit : d.v_eff[n];
  return d;
}

}  // namespace detail

namespace {

using detail::Discretization;

constexpr double kRescale = 1e150;

// Solves rows 1..stop of (A - E W) u = 0 outward from u_0 = 0, u_1 = 1.
void shoot_out(const Discretization& d, double E, int stop, std::vector<double>& u) {
  u.assign(static_cast<std::size_t>(stop + 2), 0.0);
  u[1] = 1.0;
  for (int i = 1; i <= stop; ++i) {
    u[i + 1] = (d.diagonal(i, E) * u[i] - d.k * d.inv_h[i - 1] * u[i - 1]) / (d.k * d.inv_h[i]);
    if (std::abs(u[i + 1]) > kRescale) {
      for (int j = 0; j <= i + 1; ++j) u[j] /= kRescale;
    }
  }
}

// Solves rows stop..N-1 inward from u_N = 0, u_{N-1} = 1; entries below stop - 1 are unused.
void shoot_in(const Discretization& d, double E, int stop, std::vector<double>& u) {
  const int n = d.last();
  u.assign(d.r.size(), 0.0);
  u[n - 1] = 1.0;
  for (int i = n - 1; i >= stop; --i) {
    u[i - 1] = (d.diagonal(i, E) * u[i] - d.k * d.inv_h[i] * u[i + 1]) / (d.k * d.inv_h[i - 1]);
    if (std::abs(u[i - 1]) > kRescale) {
      for (int j = i - 1; j <= n; ++j) u[j] /= kRescale;
    }
  }
}

// Outermost node with V_eff < E, kept away from the boundaries.
int turning_point(const Discretization& d, double E) {
  const int n = d.last();
  int c = 1;
  for (int i = n - 1; i >= 1; --i) {
    if (d.v_eff[i] < E) {
      c = i;
      break;
    }
  }
  return std::clamp(c, 1, n - 2);
}

// Scale-free Wronskian between the outward solution (rows 1..c) and the inward
// solution (rows c+1..N-1); zero exactly at an eigenvalue.
double mismatch(const Discretization& d, double E, int c, std::vector<double>& out, std::vector<double>& in) {
  shoot_out(d, E, c, out);
  shoot_in(d, E, c + 1, in);
  const double w = out[c] * in[c + 1] - out[c + 1] * in[c];
  const double norm = (std::abs(out[c]) + std::abs(out[c + 1])) * (std::abs(in[c]) + std::abs(in[c + 1]));
  return w / norm;
}

BoundState solve_level(const Discretization& d, int n, int l) {
  std::vector<double> out;
  std::vector<double> in;
  double lo = d.well_bottom;
  double hi = d.threshold;
  const double span = hi - lo;
  const auto width_ok = [&](double tol) {
    return hi - lo <= tol * std::max(std::abs(lo), std::abs(hi)) + 1e-15 * span;
  };
  const auto bisect = [&](double tol) {
    for (int iter = 0; iter < 400 && !width_ok(tol); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (d.count_below(mid) > n) hi = mid; else lo = mid;
    }
  };

  // Node counting isolates level n in (lo, hi]; the Wronskian root refines it.
  bisect(1e-6);
  const int c = turning_point(d, 0.5 * (lo + hi));
  const double m_lo = mismatch(d, lo, c, out, in);
  const double m_hi = mismatch(d, hi, c, out, in);
  double energy = 0.0;
  if (m_lo * m_hi < 0.0) {
    std::uintmax_t max_iter = 200;
    const auto f = [&](double E) { return mismatch(d, E, c, out, in); };
    const auto tol = [span](double a, double b) {
      return std::abs(b - a) <= 1e-14 * std::max(std::abs(a), std::abs(b)) + 1e-16 * span;
    };
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, m_lo, m_hi, tol, max_iter);
    energy = 0.5 * (a + b);
  } else {
    bisect(1e-14);
    energy = 0.5 * (lo + hi);
  }

  shoot_out(d, energy, c, out);
  shoot_in(d, energy, c, in);
  const int pick = std::abs(in[c]) >= std::abs(in[c + 1]) ? c : c + 1;
  const double ratio = out[pick] / in[pick];
  BoundState state;
  state.n = n;
  state.l = l;
  state.energy = energy;
  auto& u = state.wavefunction;
  u.assign(d.r.size(), 0.0);
  for (int i = 1; i <= c; ++i) u[i] = out[i];
  for (int i = c + 1; i < d.last(); ++i) u[i] = in[i] * ratio;
  double norm = 0.0;
  for (int i = 1; i < d.last(); ++i) norm += u[i] * u[i] * d.weight[i];
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& x : u) x *= inv;
  return state;
}

Spectrum solve(const RadialProblem& problem, const RadialGrid& grid, int n_max, bool parallel) {
  if (n_max < 0) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 0");
  const auto d = detail::discretize(problem, grid, parallel);
  Spectrum spectrum;
  spectrum.threshold = d.threshold;
  spectrum.well_bottom = d.well_bottom;
  spectrum.capacity = d.well_bottom < d.threshold ? d.count_below(d.threshold) : 0;
  if (spectrum.capacity == 0) {
    throw Error(ErrorKind::NoBoundStates, "no level below the continuum threshold " + std::to_string(d.threshold));
  }
  const int levels = std::min(n_max + 1, spectrum.capacity);
  spectrum.truncated = levels < n_max + 1;
  spectrum.states.resize(static_cast<std::size_t>(levels));
  if (parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int n = 0; n < levels; ++n) {
      try {
        spectrum.states[n] = solve_level(d, n, problem.l);
      } catch (...) {
#pragma omp critical(kratzer_solve)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (int n = 0; n < levels; ++n) spectrum.states[n] = solve_level(d, n, problem.l);
  }
  spectrum.r = d.r;
  return spectrum;
}

}  // namespace

double effective_potential(const RadialProblem& problem, double r) {
  return evaluate(problem.potential, r) + problem.l * (problem.l + 1.0) * problem.kinetic_coefficient / (r * r);
}

Spectrum solve_bound_states(const RadialProblem& problem, const RadialGrid& grid, int n_max) {
  return solve(problem, grid, n_max, true);
}

Spectrum solve_bound_states_serial(const RadialProblem& problem, const RadialGrid& grid, int n_max) {
  return solve(problem, grid, n_max, false);
}

std::vector<double> diagonalize_oracle(const RadialProblem& problem, const RadialGrid& grid) {
  const auto d = detail::discretize(problem, grid, false);
  const int n = d.last() - 1;
  // W^{-1/2} A W^{-1/2}
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> off(static_cast<std::size_t>(std::max(n - 1, 1)));
  for (int i = 1; i <= n; ++i) diag[i - 1] = d.diagonal(i, 0.0) / d.weight[i];
  for (int i = 1; i < n; ++i) off[i - 1] = -d.k * d.inv_h[i] / std::sqrt(d.weight[i] * d.weight[i + 1]);
  const lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', n, diag.data(), off.data(), nullptr, 1);
  if (info != 0) {
    throw Error(ErrorKind::CrossCheckFailed, "dstev failed with info = " + std::to_string(info));
  }
  std::vector<double> bound;
  for (double e : diag) {
    if (e < d.threshold) bound.push_back(e);
  }
  return bound;
}

int count_nodes(const std::vector<double>& u) {
  int nodes = 0;
  double previous = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    if (previous != 0.0 && (u[i] > 0.0) != (previous > 0.0)) ++nodes;
    previous = u[i];
  }
  return nodes;
}

}  // namespace kratzer
