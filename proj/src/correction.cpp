#include "kratzer/correction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kratzer/error.hpp"

namespace kratzer {

namespace {

constexpr double kDegeneracy = 1e-14;
constexpr double kValidation = 1e-10;

double max_abs_screening(const Screening& f, double re) {
  double m = std::max(std::abs(f.value(re)), std::abs(f.asymptote()));
  for (double r = 1e-2 * re; r <= 1e3 * re; r *= 1.1) m = std::max(m, std::abs(f.value(r)));
  return m;
}

void check_targets(double De, double re) {
  if (!(De > 0.0) || !(re > 0.0) || !std::isfinite(De) || !std::isfinite(re)) {
    throw Error(ErrorKind::InvalidParameter, "De and re must be positive and finite");
  }
}

PotentialSpec assemble(const Screening& f, const AdditiveTerm& g, double De, double re,
                       CorrectionCoefficients coefficients) {
  PotentialParams target;
  target.De = De;
  target.re = re;
  auto spec = PotentialSpec::corrected(target, coefficients, f, g);
  const double curvature = derivative2(spec, re);
  if (!(curvature > 0.0)) {
    throw Error(ErrorKind::NotAMinimum, "corrected potential has V''(re) = " + std::to_string(curvature));
  }
  return spec;
}

}  // namespace

CorrectionCoefficients solve_correction(const Screening& f, const AdditiveTerm& g, double De, double re) {
  check_targets(De, re);
  const auto g_limit = g.asymptote();
  if (!g_limit || *g_limit != 0.0) {
    throw Error(ErrorKind::NotApplicable, "additive term must vanish at infinity");
  }
  const double f0 = f.value(re);
  const double f1 = f.derivative(re);
  if (!(std::abs(f0) >= kDegeneracy * max_abs_screening(f, re))) {
    throw Error(ErrorKind::DegenerateScreening, "f(re) vanishes");
  }
  // Unknowns (a, b):
  //   (a/re + b/re^2) f(re)                                   = -De - g(re)
  //   (-a/re^2 - 2b/re^3) f(re) + (a/re + b/re^2) f'(re)      = -g'(re)
  const double m11 = f0 / re;
  const double m12 = f0 / (re * re);
  const double m21 = -f0 / (re * re) + f1 / re;
  const double m22 = -2.0 * f0 / (re * re * re) + f1 / (re * re);
  const double rhs1 = -De - g.value(re);
  const double rhs2 = -g.derivative(re);
  const double det = m11 * m22 - m12 * m21;
  const double scale = std::max(std::abs(m11 * m22), std::abs(m12 * m21));
  if (!std::isfinite(det) || !(std::abs(det) > 1e-14 * scale)) {
    throw Error(ErrorKind::SingularCorrection, "correction system is singular");
  }
  return {(rhs1 * m22 - m12 * rhs2) / det, (m11 * rhs2 - m21 * rhs1) / det};
}

PotentialSpec correct_general(const Screening& f, double De, double re) {
  return correct_with_additive(f, AdditiveTerm::none(), De, re);
}

PotentialSpec correct_with_additive(const Screening& f, const AdditiveTerm& g, double De, double re) {
  return assemble(f, g, De, re, solve_correction(f, g, De, re));
}

PotentialSpec corrected_screened_kratzer(double De, double re, double alpha) {
  check_targets(De, re);
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidParameter, "alpha must be >= 0");
  }
  const double x = alpha * re;
  const CorrectionCoefficients coefficients{-De * (x + 2.0) * re, De * (x + 1.0) * re * re};
  // exp(alpha re) exp(-alpha r) = exp(-alpha (r - re))
  const auto f = Screening::exp_cosh({0.0, std::exp(x), alpha, 0.0});
  return assemble(f, AdditiveTerm::none(), De, re, coefficients);
}

PotentialSpec correct(const PotentialSpec& spec) {
  const double De = spec.De();
  const double re = spec.re();
  switch (spec.family()) {
    case Family::Kratzer:
      return correct_general(Screening::unit(), De, re);
    case Family::ScreenedKratzer:
      return corrected_screened_kratzer(De, re, spec.params().alpha);
    case Family::HarmonicScreenedKratzer:
      if (spec.params().c > 0.0) {
        throw Error(ErrorKind::NotApplicable, "harmonic confinement has no dissociation limit to correct");
      }
      return corrected_screened_kratzer(De, re, spec.params().alpha);
    case Family::ScreenedCosineKratzer:
    case Family::ImprovedScreenedKratzer:
    case Family::ShiftedScreenedKratzer:
      return correct_general(spec.screening(), De, re);
    case Family::HulthenScreenedCosineKratzer:
    case Family::CorrectedGeneral:
      return correct_with_additive(spec.screening(), spec.additive(), De, re);
  }
  throw Error(ErrorKind::NotApplicable, "unknown family");
}

ValidationReport validate_correction(const PotentialSpec& spec, double De, double re) {
  ValidationReport report;
  const double slope = derivative1(spec, re);
  report.slope = {std::abs(slope) < kValidation * De / re, slope};
  const double curvature = derivative2(spec, re);
  report.curvature = {curvature > 0.0, curvature};
  if (const auto limit = asymptote(spec)) {
    const double residual = *limit - evaluate(spec, re) - De;
    report.depth = {std::abs(residual) < kValidation * De, residual};
  } else {
    report.depth = {false, std::numeric_limits<double>::infinity()};
  }
  return report;
}

}  // namespace kratzer
