#pragma once

// Test-only oracles and parameter draws. Nothing here calls the code paths it
// is used to check.

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "kratzer/potential.hpp"

namespace kratzer::testing {

inline constexpr std::array<Family, 6> kFlawedFamilies{
    Family::ScreenedKratzer,       Family::ScreenedCosineKratzer,  Family::HulthenScreenedCosineKratzer,
    Family::ImprovedScreenedKratzer, Family::ShiftedScreenedKratzer, Family::HarmonicScreenedKratzer};

inline constexpr std::array<Family, 7> kNamedFamilies{
    Family::Kratzer,
    Family::ScreenedKratzer,
    Family::ScreenedCosineKratzer,
    Family::HulthenScreenedCosineKratzer,
    Family::ImprovedScreenedKratzer,
    Family::ShiftedScreenedKratzer,
    Family::HarmonicScreenedKratzer};

// Draws within each family's invariant bounds, screening strictly positive.
inline PotentialParams random_params(Family family, std::mt19937_64& rng) {
  const auto uniform = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  PotentialParams p;
  p.De = uniform(0.5, 10.0);
  p.re = uniform(0.5, 3.0);
  if (family == Family::Kratzer) return p;
  p.alpha = uniform(0.01, 1.0);
  switch (family) {
    case Family::ScreenedCosineKratzer:
      p.delta = uniform(-1.0, 1.0);
      break;
    case Family::HulthenScreenedCosineKratzer:
      p.delta = uniform(0.1, 1.5);
      p.lambda = uniform(-1.0, 1.0);
      p.V0 = uniform(0.0, 5.0);
      break;
    case Family::ImprovedScreenedKratzer:
      p.delta = uniform(0.0, 1.0);
      p.tau = static_cast<double>(std::uniform_int_distribution<int>(-1, 1)(rng));
      break;
    case Family::ShiftedScreenedKratzer:
      p.lambda = uniform(0.0, 0.5);
      p.gamma = uniform(0.5, 1.5);
      break;
    case Family::HarmonicScreenedKratzer:
      p.c = uniform(0.0, 0.5);
      break;
    default:
      break;
  }
  return p;
}

// Draws for which the corrected potential has a minimum at re: the Hulthen
// depth V0/2 stays below De (beyond about V0 = 2 De it alone is deeper than
// the target well), and the harmonic term is off since it has no asymptote.
inline PotentialParams correctable_params(Family family, std::mt19937_64& rng) {
  PotentialParams p = random_params(family, rng);
  if (family == Family::HulthenScreenedCosineKratzer) p.V0 = std::uniform_real_distribution<double>(0.0, p.De)(rng);
  if (family == Family::HarmonicScreenedKratzer) p.c = 0.0;
  return p;
}

inline double central_difference(const std::function<double(double)>& f, double r, double h) {
  return (f(r + h) - f(r - h)) / (2.0 * h);
}

// Direct Kratzer formula.
inline double kratzer(double De, double re, double r) { return -2.0 * De * (re / r - re * re / (2.0 * r * r)); }

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return r;
}

// Minimum of f by a geometric scan followed by golden-section search on f
// itself (no derivatives).
inline double scan_minimum(const std::function<double(double)>& f, double lo, double hi) {
  double best = lo;
  double best_value = f(lo);
  for (double r = lo; r <= hi; r *= 1.001) {
    const double v = f(r);
    if (v < best_value) {
      best_value = v;
      best = r;
    }
  }
  double a = best / 1.001;
  double b = best * 1.001;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < 200 && b - a > 1e-15 * b; ++i) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (f(c) < f(d)) b = d; else a = c;
  }
  return 0.5 * (a + b);
}

}  // namespace kratzer::testing
