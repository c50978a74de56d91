#include "kratzer/potential.hpp"

#include <array>
#include <cmath>
#include <string>

#include "kratzer/error.hpp"

namespace kratzer {

namespace {

constexpr std::array<std::string_view, 9> kAllNames{"De", "re", "alpha", "delta", "lambda",
                                                    "tau", "gamma", "V0", "c"};

constexpr std::array<std::string_view, 2> kKratzerNames{"De", "re"};
constexpr std::array<std::string_view, 3> kScreenedNames{"De", "re", "alpha"};
constexpr std::array<std::string_view, 4> kCosineNames{"De", "re", "alpha", "delta"};
constexpr std::array<std::string_view, 6> kHulthenNames{"De", "re", "alpha", "delta", "lambda", "V0"};
constexpr std::array<std::string_view, 5> kImprovedNames{"De", "re", "alpha", "delta", "tau"};
constexpr std::array<std::string_view, 5> kShiftedNames{"De", "re", "alpha", "lambda", "gamma"};
constexpr std::array<std::string_view, 4> kHarmonicNames{"De", "re", "alpha", "c"};

template <typename Params>
auto* parameter_slot(Params& p, std::string_view name) {
  using Slot = decltype(&p.De);
  if (name == "De") return &p.De;
  if (name == "re") return &p.re;
  if (name == "alpha") return &p.alpha;
  if (name == "delta") return &p.delta;
  if (name == "lambda") return &p.lambda;
  if (name == "tau") return &p.tau;
  if (name == "gamma") return &p.gamma;
  if (name == "V0") return &p.V0;
  if (name == "c") return &p.c;
  return static_cast<Slot>(nullptr);
}

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::InvalidParameter, message);
}

void validate(Family family, const PotentialParams& p) {
  for (auto name : kAllNames) {
    const double v = get_parameter(p, name);
    require(std::isfinite(v), std::string(name) + " must be finite");
    if (!uses_parameter(family, name)) {
      require(v == 0.0, std::string(name) + " is not a parameter of " + std::string(to_string(family)));
    }
  }
  require(p.De > 0.0, "De must be > 0");
  require(p.re > 0.0, "re must be > 0");
  if (uses_parameter(family, "alpha")) require(p.alpha >= 0.0, "alpha must be >= 0");
  switch (family) {
    case Family::ScreenedCosineKratzer:
      require(p.delta >= -1.0 && p.delta <= 1.0, "delta must lie in [-1, 1]");
      break;
    case Family::HulthenScreenedCosineKratzer:
      require(p.delta >= 0.0, "delta must be >= 0");
      require(p.lambda >= -1.0 && p.lambda <= 1.0, "lambda must lie in [-1, 1]");
      require(p.V0 >= 0.0, "V0 must be >= 0");
      require(p.V0 == 0.0 || p.alpha > 0.0, "the Hulthen term needs alpha > 0 to vanish at infinity");
      break;
    case Family::ImprovedScreenedKratzer:
      require(p.tau == -1.0 || p.tau == 0.0 || p.tau == 1.0, "tau must be -1, 0 or 1");
      require(p.alpha + p.delta >= 0.0, "alpha + delta must be >= 0");
      break;
    case Family::HarmonicScreenedKratzer:
      require(p.c >= 0.0, "c must be >= 0 (no bound states otherwise)");
      break;
    default:
      break;
  }
}

Screening screening_for(Family family, const PotentialParams& p) {
  switch (family) {
    case Family::Kratzer:
      return Screening::unit();
    case Family::ScreenedKratzer:
    case Family::HarmonicScreenedKratzer:
      return Screening::exponential(p.alpha);
    case Family::ScreenedCosineKratzer:
      return Screening::exp_cosh({0.0, 1.0, p.alpha, p.delta * p.alpha});
    case Family::HulthenScreenedCosineKratzer:
      return Screening::exp_cosh({0.0, 1.0, p.delta * p.alpha, p.delta * p.lambda * p.alpha});
    case Family::ImprovedScreenedKratzer: {
      const double s = 0.5 * (p.alpha + p.delta);
      return Screening::exp_cosh({p.tau, 1.0, s, s});
    }
    case Family::ShiftedScreenedKratzer:
      return Screening::exp_cosh({2.0 * p.lambda, p.gamma, p.alpha, 0.0});
    case Family::CorrectedGeneral:
      break;
  }
  return Screening::unit();
}

AdditiveTerm additive_for(Family family, const PotentialParams& p) {
  switch (family) {
    case Family::HulthenScreenedCosineKratzer:
      return AdditiveTerm::hulthen(p.V0, p.alpha);
    case Family::HarmonicScreenedKratzer:
      return AdditiveTerm::harmonic(p.c);
    default:
      return AdditiveTerm::none();
  }
}

// Kratzer core and its derivatives. Named families use x = re / r, so the
// slope vanishes exactly at r = re; corrected potentials use (a, b) directly.
struct Core {
  double value;
  double d1;
  double d2;
};

Core core(const PotentialSpec& spec, double r) {
  if (spec.family() == Family::CorrectedGeneral) {
    const auto [a, b] = spec.coefficients();
    const double inv = 1.0 / r;
    return {(a + b * inv) * inv, -(a + 2.0 * b * inv) * inv * inv, (2.0 * a + 6.0 * b * inv) * inv * inv * inv};
  }
  const double De = spec.De();
  const double x = spec.re() / r;
  return {-De * x * (2.0 - x), 2.0 * De * x * (1.0 - x) / r, 2.0 * De * x * (3.0 * x - 2.0) / (r * r)};
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::Domain, "radius must be positive and finite, got " + std::to_string(r));
  }
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Kratzer: return "kratzer";
    case Family::ScreenedKratzer: return "screened_kratzer";
    case Family::ScreenedCosineKratzer: return "screened_cosine_kratzer";
    case Family::HulthenScreenedCosineKratzer: return "hulthen_screened_cosine_kratzer";
    case Family::ImprovedScreenedKratzer: return "improved_screened_kratzer";
    case Family::ShiftedScreenedKratzer: return "shifted_screened_kratzer";
    case Family::HarmonicScreenedKratzer: return "harmonic_screened_kratzer";
    case Family::CorrectedGeneral: return "corrected_general";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (auto f : {Family::Kratzer, Family::ScreenedKratzer, Family::ScreenedCosineKratzer,
                 Family::HulthenScreenedCosineKratzer, Family::ImprovedScreenedKratzer,
                 Family::ShiftedScreenedKratzer, Family::HarmonicScreenedKratzer, Family::CorrectedGeneral}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorKind::Load, "unknown potential family '" + std::string(name) + "'");
}

std::span<const std::string_view> all_parameter_names() noexcept { return kAllNames; }

std::span<const std::string_view> parameter_names(Family family) noexcept {
  switch (family) {
    case Family::Kratzer:
    case Family::CorrectedGeneral: return kKratzerNames;
    case Family::ScreenedKratzer: return kScreenedNames;
    case Family::ScreenedCosineKratzer: return kCosineNames;
    case Family::HulthenScreenedCosineKratzer: return kHulthenNames;
    case Family::ImprovedScreenedKratzer: return kImprovedNames;
    case Family::ShiftedScreenedKratzer: return kShiftedNames;
    case Family::HarmonicScreenedKratzer: return kHarmonicNames;
  }
  return {};
}

bool uses_parameter(Family family, std::string_view name) noexcept {
  for (auto n : parameter_names(family)) {
    if (n == name) return true;
  }
  return false;
}

double get_parameter(const PotentialParams& params, std::string_view name) {
  if (const double* slot = parameter_slot(params, name)) return *slot;
  throw Error(ErrorKind::Load, "unknown parameter '" + std::string(name) + "'");
}

void set_parameter(PotentialParams& params, std::string_view name, double value) {
  if (double* slot = parameter_slot(params, name)) {
    *slot = value;
    return;
  }
  throw Error(ErrorKind::Load, "unknown parameter '" + std::string(name) + "'");
}

PotentialSpec::PotentialSpec(Family family, const PotentialParams& params, CorrectionCoefficients coefficients,
                             Screening screening, AdditiveTerm additive)
    : family_(family),
      params_(params),
      coefficients_(coefficients),
      screening_(std::move(screening)),
      additive_(std::move(additive)) {}

PotentialSpec PotentialSpec::make(Family family, const PotentialParams& params) {
  if (family == Family::CorrectedGeneral) {
    throw Error(ErrorKind::InvalidParameter, "corrected potentials are built by the correction routines");
  }
  validate(family, params);
  const CorrectionCoefficients kratzer{-2.0 * params.De * params.re, params.De * params.re * params.re};
  return PotentialSpec(family, params, kratzer, screening_for(family, params), additive_for(family, params));
}

PotentialSpec PotentialSpec::corrected(const PotentialParams& target, CorrectionCoefficients coefficients,
                                       Screening screening, AdditiveTerm additive) {
  validate(Family::CorrectedGeneral, target);
  require(std::isfinite(coefficients.a) && std::isfinite(coefficients.b), "coefficients must be finite");
  return PotentialSpec(Family::CorrectedGeneral, target, coefficients, std::move(screening), std::move(additive));
}

double evaluate(const PotentialSpec& spec, double r) {
  check_radius(r);
  return core(spec, r).value * spec.screening().value(r) + spec.additive().value(r);
}

double derivative1(const PotentialSpec& spec, double r) {
  check_radius(r);
  const auto k = core(spec, r);
  const auto& f = spec.screening();
  return k.d1 * f.value(r) + k.value * f.derivative(r) + spec.additive().derivative(r);
}

double derivative2(const PotentialSpec& spec, double r) {
  check_radius(r);
  const auto k = core(spec, r);
  const auto& f = spec.screening();
  return k.d2 * f.value(r) + 2.0 * k.d1 * f.derivative(r) + k.value * f.second_derivative(r) +
         spec.additive().second_derivative(r);
}

std::optional<double> asymptote(const PotentialSpec& spec) {
  // (a/r + b/r^2) times a bounded factor always vanishes.
  return spec.additive().asymptote();
}

double improved_kratzer_hyperbolic(const PotentialParams& p, double r) {
  check_radius(r);
  const double s = 0.5 * (p.alpha + p.delta);
  const double x = p.re / r;
  return -p.De * x * (2.0 - x) * (std::exp(-s * r) * std::cosh(s * r) + p.tau);
}

}  // namespace kratzer
