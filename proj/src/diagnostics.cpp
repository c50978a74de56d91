#include "kratzer/diagnostics.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "kratzer/error.hpp"

namespace kratzer {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kCrossCheckTolerance = 1e-9;
// Equilibrium conditions are judged at the same level the correction validator uses.
constexpr double kEquilibriumTolerance = 1e-10;

bool agrees(double numeric, double closed, double absolute_floor) {
  return std::abs(numeric - closed) <= kCrossCheckTolerance * std::max(std::abs(numeric), std::abs(closed)) + absolute_floor;
}

}  // namespace

MinimumReport find_minimum(const PotentialSpec& spec, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw Error(ErrorKind::Domain, "bracket must satisfy 0 < lo < hi");
  }
  const auto slope = [&spec](double r) { return derivative1(spec, r); };
  const double f_lo = slope(lo);
  const double f_hi = slope(hi);
  double root = 0.0;
  if (f_lo == 0.0) {
    root = lo;
  } else if (f_hi == 0.0) {
    root = hi;
  } else if (f_lo < 0.0 && f_hi > 0.0) {
    std::uintmax_t max_iter = 200;
    const auto tol = [](double a, double b) { return std::abs(b - a) <= kRootTolerance * std::min(a, b); };
    const auto [a, b] = boost::math::tools::toms748_solve(slope, lo, hi, f_lo, f_hi, tol, max_iter);
    root = std::abs(slope(a)) <= std::abs(slope(b)) ? a : b;
  } else {
    throw Error(ErrorKind::NoMinimumInBracket,
                "V' has no negative-to-positive sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const double curvature = derivative2(spec, root);
  if (!(curvature > 0.0)) {
    throw Error(ErrorKind::NotAMinimum, "stationary point at r = " + std::to_string(root) + " has V'' <= 0");
  }
  return {root, evaluate(spec, root), curvature};
}

std::pair<double, double> auto_bracket(const PotentialSpec& spec) {
  const double end = 1e3 * spec.re();
  double r = 1e-2 * spec.re();
  double previous = derivative1(spec, r);
  while (r < end) {
    const double next_r = std::min(r * 1.1, end);
    const double next = derivative1(spec, next_r);
    if (previous < 0.0 && next >= 0.0) return {r, next_r};
    r = next_r;
    previous = next;
  }
  throw Error(ErrorKind::NoMinimumInBracket, "no well found in [1e-2 re, 1e3 re]");
}

std::optional<double> apparent_dissociation(const PotentialSpec& spec, const MinimumReport& minimum) {
  const auto limit = asymptote(spec);
  if (!limit) return std::nullopt;
  return *limit - minimum.V_min;
}

ClosedFormFlaw closed_form_flaw(const PotentialSpec& spec) {
  const auto& p = spec.params();
  const double De = p.De;
  const double re = p.re;
  const double a = p.alpha;
  switch (spec.family()) {
    case Family::ScreenedKratzer: {
      const double e = std::exp(-a * re);
      return {a * De * e, De * e};
    }
    case Family::ScreenedCosineKratzer: {
      const double e = std::exp(-a * re);
      const double x = a * p.delta * re;
      return {a * De * e * (std::cosh(x) - p.delta * std::sinh(x)), De * e * std::cosh(x)};
    }
    case Family::HulthenScreenedCosineKratzer: {
      const double e = std::exp(-a * p.delta * re);
      const double x = a * p.delta * p.lambda * re;
      const double h = std::exp(a * re);
      return {a * p.delta * De * e * (std::cosh(x) - p.lambda * std::sinh(x)) + a * p.V0 * h / ((1.0 + h) * (1.0 + h)),
              De * e * std::cosh(x) + p.V0 / (1.0 + h)};
    }
    case Family::ImprovedScreenedKratzer: {
      const double s = 0.5 * (a + p.delta);
      const double e = std::exp(-s * re);
      const double x = s * re;
      return {(a + p.delta) * De * e / 2.0 * (std::cosh(x) - std::sinh(x)), De * (e * std::cosh(x) + p.tau)};
    }
    case Family::ShiftedScreenedKratzer: {
      const double e = std::exp(-a * re);
      return {a * p.gamma * De * e, De * (p.gamma * e + 2.0 * p.lambda)};
    }
    case Family::HarmonicScreenedKratzer: {
      const double e = std::exp(-a * re);
      ClosedFormFlaw out{a * De * e + 2.0 * p.c * re, std::nullopt};
      if (p.c == 0.0) out.depth = De * e;
      return out;
    }
    case Family::Kratzer:
    case Family::CorrectedGeneral:
      break;
  }
  throw Error(ErrorKind::NotApplicable,
              std::string(to_string(spec.family())) + " satisfies the equilibrium conditions by construction");
}

FlawReport flaw_report(const PotentialSpec& spec) {
  FlawReport report;
  report.claimed_re = spec.re();
  report.claimed_De = spec.De();

  const auto [lo, hi] = auto_bracket(spec);
  const auto minimum = find_minimum(spec, lo, hi);
  report.actual_re = minimum.r_min;
  report.V_min = minimum.V_min;
  report.actual_De = apparent_dissociation(spec, minimum);

  const double re = spec.re();
  report.slope_at_claimed_re = derivative1(spec, re);
  if (const auto limit = asymptote(spec)) report.depth_at_claimed_re = *limit - evaluate(spec, re);

  if (spec.family() != Family::Kratzer && spec.family() != Family::CorrectedGeneral) {
    const auto closed = closed_form_flaw(spec);
    report.closed_form_slope = closed.slope;
    report.closed_form_depth = closed.depth;
    const double floor = 1e-14 * spec.De() / re;
    if (!agrees(report.slope_at_claimed_re, closed.slope, floor)) {
      throw Error(ErrorKind::CrossCheckFailed, "numeric slope at re disagrees with the closed form");
    }
    if (closed.depth.has_value() != report.depth_at_claimed_re.has_value() ||
        (closed.depth && !agrees(*report.depth_at_claimed_re, *closed.depth, 1e-14 * spec.De()))) {
      throw Error(ErrorKind::CrossCheckFailed, "numeric depth at re disagrees with the closed form");
    }
  }

  const double De = spec.De();
  const bool slope_ok = std::abs(report.slope_at_claimed_re) < kEquilibriumTolerance * De / re;
  const bool depth_ok = report.depth_at_claimed_re &&
                        std::abs(*report.depth_at_claimed_re - De) < kEquilibriumTolerance * De;
  report.flawed = !(slope_ok && depth_ok);
  return report;
}

}  // namespace kratzer
