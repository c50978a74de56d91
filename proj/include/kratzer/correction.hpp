#pragma once

#include <optional>

#include "kratzer/potential.hpp"

namespace kratzer {

/// Coefficients (a, b) for which (a/r + b/r^2) f(r) + g(r) has its minimum at
/// re with depth De: V(re) = -De and V'(re) = 0, solved as a 2x2 linear system.
/// Throws DegenerateScreening when f(re) vanishes, SingularCorrection when the
/// system cannot be solved and NotApplicable when g does not vanish at infinity.
CorrectionCoefficients solve_correction(const Screening& f, const AdditiveTerm& g, double De, double re);

/// The corrected potential for screening f. Throws NotAMinimum when the
/// stationary point at re is not a minimum.
PotentialSpec correct_general(const Screening& f, double De, double re);
PotentialSpec correct_with_additive(const Screening& f, const AdditiveTerm& g, double De, double re);

/// Closed form De [(alpha re + 1) re^2 / r^2 - (alpha re + 2) re / r] exp(-alpha (r - re)).
PotentialSpec corrected_screened_kratzer(double De, double re, double alpha);

/// Corrected counterpart of any family, keeping its screening and additive terms.
/// The harmonic family with c > 0 has no finite asymptote and is NotApplicable.
PotentialSpec correct(const PotentialSpec& spec);

struct ValidationCheck {
  bool passed = false;
  double residual = 0.0;
};

struct ValidationReport {
  ValidationCheck slope;      // |V'(re)| < 1e-10 De / re
  ValidationCheck curvature;  // V''(re) > 0; residual is V''(re)
  ValidationCheck depth;      // |V(inf) - V(re) - De| < 1e-10 De; residual infinite if V diverges
  bool passed() const { return slope.passed && curvature.passed && depth.passed; }
};

ValidationReport validate_correction(const PotentialSpec& spec, double De, double re);

}  // namespace kratzer
