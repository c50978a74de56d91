#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "kratzer/screening.hpp"

namespace kratzer {

enum class Family {
  Kratzer,
  ScreenedKratzer,
  ScreenedCosineKratzer,
  HulthenScreenedCosineKratzer,
  ImprovedScreenedKratzer,
  ShiftedScreenedKratzer,
  HarmonicScreenedKratzer,
  CorrectedGeneral,
};

std::string_view to_string(Family family) noexcept;
/// Accepts the snake_case names used in spec files; throws Load on unknown names.
Family family_from_string(std::string_view name);

// Parameter dimensions per family:
//   De energy, re length, alpha 1/length, V0 energy, c energy/length^2.
//   delta: dimensionless multiplier in the cosine families, 1/length in the
//   improved family where it adds to alpha.
//   lambda, gamma, tau: dimensionless.
struct PotentialParams {
  double De = 0.0;
  double re = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double tau = 0.0;
  double gamma = 0.0;
  double V0 = 0.0;
  double c = 0.0;

  bool operator==(const PotentialParams&) const = default;
};

std::span<const std::string_view> all_parameter_names() noexcept;
std::span<const std::string_view> parameter_names(Family family) noexcept;
bool uses_parameter(Family family, std::string_view name) noexcept;
double get_parameter(const PotentialParams& params, std::string_view name);
void set_parameter(PotentialParams& params, std::string_view name, double value);

// a / r + b / r^2
struct CorrectionCoefficients {
  double a = 0.0;
  double b = 0.0;
};

/// Any of the modeled potentials: the Kratzer core (a/r + b/r^2) times a
/// screening factor, plus an optional additive term. Parameters are validated
/// here, once, so evaluation never branches on validity.
class PotentialSpec {
 public:
  static PotentialSpec make(Family family, const PotentialParams& params);
  /// CorrectedGeneral potential; `target` holds the intended De and re only.
  static PotentialSpec corrected(const PotentialParams& target, CorrectionCoefficients coefficients,
                                 Screening screening, AdditiveTerm additive = {});

  Family family() const { return family_; }
  const PotentialParams& params() const { return params_; }
  double De() const { return params_.De; }
  double re() const { return params_.re; }
  CorrectionCoefficients coefficients() const { return coefficients_; }
  const Screening& screening() const { return screening_; }
  const AdditiveTerm& additive() const { return additive_; }

 private:
  PotentialSpec(Family family, const PotentialParams& params, CorrectionCoefficients coefficients,
                Screening screening, AdditiveTerm additive);

  Family family_;
  PotentialParams params_;
  CorrectionCoefficients coefficients_;
  Screening screening_;
  AdditiveTerm additive_;
};

// All of these throw Error(Domain) for r <= 0.
double evaluate(const PotentialSpec& spec, double r);
double derivative1(const PotentialSpec& spec, double r);
double derivative2(const PotentialSpec& spec, double r);

/// Limit of V at infinity; empty when the potential diverges (harmonic confinement).
std::optional<double> asymptote(const PotentialSpec& spec);

/// Improved screened Kratzer in its original hyperbolic form,
/// bracket exp(-s r) cosh(s r) + tau with s = (alpha + delta) / 2.
/// `evaluate` uses the algebraically equivalent exp(-2 s r)/2 + tau + 1/2.
double improved_kratzer_hyperbolic(const PotentialParams& params, double r);

}  // namespace kratzer
