#include "kratzer/fitting.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <string>

#include "kratzer/correction.hpp"
#include "kratzer/error.hpp"

namespace kratzer {

void validate(const SpectrumData& data) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : data.entries) {
    if (e.n < 0 || e.l < 0) throw Error(ErrorKind::InvalidParameter, "n and l must be >= 0");
    if (!std::isfinite(e.energy)) throw Error(ErrorKind::InvalidParameter, "energies must be finite");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::InvalidParameter, "weights must be positive");
    }
    if (!seen.emplace(e.n, e.l).second) {
      throw Error(ErrorKind::InvalidParameter,
                  "duplicate level (n=" + std::to_string(e.n) + ", l=" + std::to_string(e.l) + ")");
    }
  }
}

Model Model::raw(Family family) {
  if (family == Family::CorrectedGeneral) {
    throw Error(ErrorKind::InvalidParameter, "corrected_general models need a template spec");
  }
  return Model(family, false, std::nullopt);
}

Model Model::corrected(Family family) {
  if (family == Family::CorrectedGeneral) {
    throw Error(ErrorKind::InvalidParameter, "corrected_general models need a template spec");
  }
  return Model(family, true, std::nullopt);
}

Model Model::from_spec(const PotentialSpec& spec, bool corrected) {
  if (spec.family() == Family::CorrectedGeneral) return Model(spec.family(), true, spec);
  return Model(spec.family(), corrected, std::nullopt);
}

PotentialSpec Model::build(const PotentialParams& params) const {
  if (template_) {
    return correct_with_additive(template_->screening(), template_->additive(), params.De, params.re);
  }
  auto spec = PotentialSpec::make(family_, params);
  return corrected_ ? correct(spec) : spec;
}

namespace {

// Model energies for the requested levels, solved one l channel at a time.
std::vector<double> model_energies(const PotentialSpec& spec, const SpectrumData& data, double k,
                                   const FitOptions& options) {
  std::map<int, int> n_max_by_l;
  for (const auto& e : data.entries) {
    auto& slot = n_max_by_l[e.l];
    slot = std::max(slot, e.n);
  }
  const RadialGrid grid = options.grid.at(spec.re());
  std::map<int, Spectrum> spectra;
  for (const auto& [l, n_max] : n_max_by_l) {
    RadialProblem problem{spec, l, k};
    try {
      spectra.emplace(l, solve_bound_states(problem, grid, n_max));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NoBoundStates) throw;
      throw Error(ErrorKind::MissingLevel, "no bound levels for l = " + std::to_string(l));
    }
  }
  std::vector<double> energies;
  energies.reserve(data.entries.size());
  for (const auto& e : data.entries) {
    const auto& states = spectra.at(e.l).states;
    if (e.n >= static_cast<int>(states.size())) {
      throw Error(ErrorKind::MissingLevel,
                  "level (n=" + std::to_string(e.n) + ", l=" + std::to_string(e.l) + ") is not bound");
    }
    energies.push_back(states[e.n].energy);
  }
  return energies;
}

double sum_of_squares(const std::vector<double>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

struct Problem {
  const Model& model;
  const SpectrumData& data;
  const PotentialParams& base;
  const std::vector<std::string>& free;
  double k;
  const FitOptions& options;

  PotentialParams params_at(const Eigen::VectorXd& x) const {
    PotentialParams p = base;
    for (std::size_t j = 0; j < free.size(); ++j) set_parameter(p, free[j], x[static_cast<Eigen::Index>(j)]);
    return p;
  }

  // Empty when x leaves the feasible region.
  std::optional<std::vector<double>> evaluate(const Eigen::VectorXd& x) const {
    try {
      return residuals(model, params_at(x), data, k, options);
    } catch (const Error& err) {
      switch (err.kind()) {
        case ErrorKind::MissingLevel:
        case ErrorKind::InvalidParameter:
        case ErrorKind::NotAMinimum:
        case ErrorKind::DegenerateScreening:
        case ErrorKind::SingularCorrection:
          return std::nullopt;
        default:
          throw;
      }
    }
  }
};

}  // namespace

std::vector<double> residuals(const Model& model, const PotentialParams& params, const SpectrumData& data,
                              double kinetic_coefficient, const FitOptions& options) {
  const auto spec = model.build(params);
  const auto energies = model_energies(spec, data, kinetic_coefficient, options);
  std::vector<double> out(energies.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& e = data.entries[i];
    out[i] = std::sqrt(e.weight) * (energies[i] - e.energy);
  }
  return out;
}

SpectrumData synthesize(const Model& model, const PotentialParams& params, const std::vector<std::pair<int, int>>& levels,
                        double kinetic_coefficient, const FitOptions& options) {
  SpectrumData data;
  for (auto [n, l] : levels) data.entries.push_back({n, l, 0.0, 1.0});
  validate(data);
  const auto energies = model_energies(model.build(params), data, kinetic_coefficient, options);
  for (std::size_t i = 0; i < energies.size(); ++i) data.entries[i].energy = energies[i];
  return data;
}

FitResult fit(const Model& model, const SpectrumData& data, const PotentialParams& initial,
              const std::vector<std::string>& free, double kinetic_coefficient, const FitOptions& options) {
  validate(data);
  if (free.empty()) throw Error(ErrorKind::InvalidParameter, "no free parameters");
  if (data.entries.size() < free.size()) {
    throw Error(ErrorKind::Underdetermined, std::to_string(data.entries.size()) + " levels for " +
                                                std::to_string(free.size()) + " free parameters");
  }
  for (const auto& name : free) {
    if (!uses_parameter(model.family(), name)) {
      throw Error(ErrorKind::InvalidParameter, name + " is not a parameter of " + std::string(to_string(model.family())));
    }
  }

  const Problem problem{model, data, initial, free, kinetic_coefficient, options};
  const auto m = static_cast<Eigen::Index>(data.entries.size());
  const auto p = static_cast<Eigen::Index>(free.size());
  Eigen::VectorXd x(p);
  for (Eigen::Index j = 0; j < p; ++j) x[j] = get_parameter(initial, free[static_cast<std::size_t>(j)]);

  auto current = problem.evaluate(x);
  if (!current) {
    // Surface the underlying reason for an infeasible start.
    residuals(model, initial, data, kinetic_coefficient, options);
    throw Error(ErrorKind::MissingLevel, "initial parameters are infeasible");
  }
  FitResult result;
  result.free = free;
  double cost = sum_of_squares(*current);
  result.history.push_back(cost);

  double damping = 1e-3;
  Eigen::MatrixXd jacobian(m, p);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter + 1;
    const Eigen::Map<const Eigen::VectorXd> r(current->data(), m);

    std::exception_ptr failure;
    bool column_failed = false;
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < p; ++j) {
      try {
        const double h = options.jacobian_step * std::max(std::abs(x[j]), 1e-3);
        Eigen::VectorXd shifted = x;
        shifted[j] += h;
        auto forward = problem.evaluate(shifted);
        double step = h;
        if (!forward) {
          shifted[j] = x[j] - h;
          forward = problem.evaluate(shifted);
          step = -h;
        }
        if (forward) {
          for (Eigen::Index i = 0; i < m; ++i) jacobian(i, j) = ((*forward)[i] - r[i]) / step;
        } else {
#pragma omp atomic write
          column_failed = true;
        }
      } catch (...) {
#pragma omp critical(kratzer_fit)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    if (column_failed) break;

    const Eigen::VectorXd gradient = jacobian.transpose() * r;
    result.gradient_norm = gradient.norm();
    if (result.gradient_norm < options.gradient_tolerance) {
      result.converged = true;
      break;
    }

    const Eigen::MatrixXd normal = jacobian.transpose() * jacobian;
    bool accepted = false;
    bool small_step = false;
    while (damping < 1e16) {
      Eigen::MatrixXd lhs = normal;
      for (Eigen::Index j = 0; j < p; ++j) lhs(j, j) += damping * std::max(normal(j, j), 1e-300);
      const Eigen::VectorXd delta = lhs.ldlt().solve(-gradient);
      const Eigen::VectorXd trial = x + delta;
      small_step = delta.norm() <= options.step_tolerance * std::max(x.norm(), 1e-300);
      auto candidate = problem.evaluate(trial);
      if (candidate) {
        const double trial_cost = sum_of_squares(*candidate);
        if (trial_cost <= cost) {
          x = trial;
          current = std::move(candidate);
          cost = trial_cost;
          result.history.push_back(cost);
          damping = std::max(damping / 10.0, 1e-12);
          accepted = true;
          break;
        }
      }
      if (small_step) break;
      damping *= 10.0;
    }
    if (small_step) {
      result.converged = true;
      break;
    }
    if (!accepted) break;
  }

  result.params = problem.params_at(x);
  result.square_deviation = cost;
  result.residuals = *current;
  return result;
}

}  // namespace kratzer
