#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kratzer/potential.hpp"
#include "kratzer/solver.hpp"

namespace kratzer {

struct SpectrumEntry {
  int n = 0;
  int l = 0;
  double energy = 0.0;
  double weight = 1.0;
};

struct SpectrumData {
  std::vector<SpectrumEntry> entries;
};

/// Unique (n, l), finite energies, positive weights; throws InvalidParameter.
void validate(const SpectrumData& data);

/// Parametrized potential family used by the fit. `corrected` applies the
/// equilibrium correction after every parameter update, so De and re keep
/// their meaning throughout. On a CorrectedGeneral template the screening and
/// additive terms stay fixed and (a, b) are re-solved from De and re.
class Model {
 public:
  static Model raw(Family family);
  static Model corrected(Family family);
  static Model from_spec(const PotentialSpec& spec, bool corrected);

  Family family() const { return family_; }
  bool is_corrected() const { return corrected_; }
  PotentialSpec build(const PotentialParams& params) const;

 private:
  Model(Family family, bool corrected, std::optional<PotentialSpec> templ)
      : family_(family), corrected_(corrected), template_(std::move(templ)) {}
  Family family_;
  bool corrected_;
  std::optional<PotentialSpec> template_;
};

/// Radial grid expressed in units of re, so the mesh follows re during a fit.
struct RelativeGrid {
  double r_min_factor = 1e-3;
  double r_max_factor = 50.0;
  int n_points = 4000;
  double switch_factor = 1.0;

  RadialGrid at(double re) const { return {r_min_factor * re, r_max_factor * re, n_points, switch_factor * re}; }
};

struct FitOptions {
  RelativeGrid grid;
  int max_iterations = 100;
  double jacobian_step = 1e-6;    // relative, per parameter
  double step_tolerance = 1e-10;  // relative parameter change
  double gradient_tolerance = 1e-10;
};

/// sqrt(w_i) (E_model(n_i, l_i) - E_obs,i). Throws MissingLevel if the model
/// does not bind a requested level.
std::vector<double> residuals(const Model& model, const PotentialParams& params, const SpectrumData& data,
                              double kinetic_coefficient, const FitOptions& options = {});

struct FitResult {
  PotentialParams params;
  std::vector<std::string> free;
  double square_deviation = 0.0;  // weighted sum of squared residuals
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residuals;
  std::vector<double> history;  // square deviation after each accepted step, starting point first
};

/// Levenberg-Marquardt over the free parameters with a forward-difference
/// Jacobian. Trial steps that leave the feasible region (invalid parameters or
/// a missing level) are rejected. Throws Underdetermined when there are fewer
/// data than free parameters.
FitResult fit(const Model& model, const SpectrumData& data, const PotentialParams& initial,
              const std::vector<std::string>& free, double kinetic_coefficient, const FitOptions& options = {});

/// Levels of `model` at `params` for the (n, l) pairs of `data`, as synthetic observations.
SpectrumData synthesize(const Model& model, const PotentialParams& params, const std::vector<std::pair<int, int>>& levels,
                        double kinetic_coefficient, const FitOptions& options = {});

}  // namespace kratzer
