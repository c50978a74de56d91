#pragma once

#include <optional>
#include <utility>

#include "kratzer/potential.hpp"

namespace kratzer {

struct MinimumReport {
  double r_min = 0.0;
  double V_min = 0.0;
  double curvature = 0.0;  // V''(r_min)
};

/// Bracketed root of V'(r) on [lo, hi]. Requires V'(lo) < 0 < V'(hi); throws
/// NoMinimumInBracket otherwise and NotAMinimum if V'' <= 0 at the root.
MinimumReport find_minimum(const PotentialSpec& spec, double lo, double hi);

/// First negative-to-positive crossing of V' on a geometric scan (ratio 1.1)
/// over [1e-2 re, 1e3 re].
std::pair<double, double> auto_bracket(const PotentialSpec& spec);

/// asymptote - V_min, empty when the potential has no finite asymptote.
std::optional<double> apparent_dissociation(const PotentialSpec& spec, const MinimumReport& minimum);

struct ClosedFormFlaw {
  double slope = 0.0;            // V'(re)
  std::optional<double> depth;   // V(inf) - V(re); empty when V diverges
};

/// Analytic slope and depth at the claimed re for the six flawed families.
/// Written out per family, independent of `evaluate`. Throws NotApplicable
/// for Kratzer and corrected potentials.
ClosedFormFlaw closed_form_flaw(const PotentialSpec& spec);

struct FlawReport {
  double claimed_re = 0.0;
  double claimed_De = 0.0;
  double actual_re = 0.0;
  double V_min = 0.0;
  std::optional<double> actual_De;
  double slope_at_claimed_re = 0.0;
  std::optional<double> depth_at_claimed_re;
  std::optional<double> closed_form_slope;
  std::optional<double> closed_form_depth;
  // re and De do not carry their textbook meaning.
  bool flawed = false;
};

/// Claimed vs actual (re, De). Cross-checks the numeric slope and depth at
/// re against `closed_form_flaw` to 1e-9 relative (CrossCheckFailed).
FlawReport flaw_report(const PotentialSpec& spec);

}  // namespace kratzer
