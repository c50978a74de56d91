#include "kratzer/screening.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "kratzer/error.hpp"

namespace kratzer {

namespace {

// exp(-p r) cosh(q r) = (exp(-(p - |q|) r) + exp(-(p + |q|) r)) / 2, which
// never overflows for |q| <= p.
struct Rates {
  double slow;
  double fast;
};

Rates rates(const ExpCoshForm& f) {
  const double q = std::abs(f.frequency);
  return {f.decay - q, f.decay + q};
}

double central_difference(const std::function<double(double)>& fn, double r) {
  const double h = 1e-5 * r;
  return (fn(r + h) - fn(r - h)) / (2.0 * h);
}

void check_derivative(const std::function<double(double)>& value,
                      const std::function<double(double)>& derivative, double reference_length,
                      const char* what) {
  if (!value || !derivative) {
    throw Error(ErrorKind::InvalidParameter, std::string(what) + " needs value and derivative");
  }
  if (!(reference_length > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "reference length must be positive");
  }
  constexpr std::array<double, 5> factors{0.1, 0.3, 1.0, 3.0, 10.0};
  for (double factor : factors) {
    const double r = factor * reference_length;
    const double v = value(r);
    const double d = derivative(r);
    if (!std::isfinite(v) || !std::isfinite(d)) {
      throw Error(ErrorKind::InvalidParameter, std::string(what) + " is not finite at r = " + std::to_string(r));
    }
    const double fd = central_difference(value, r);
    const double scale = std::max({std::abs(d), std::abs(v) / r, 1e-300});
    if (std::abs(fd - d) > 1e-6 * scale) {
      throw Error(ErrorKind::InvalidParameter,
                  std::string(what) + " derivative disagrees with finite difference at r = " + std::to_string(r));
    }
  }
}

}  // namespace

Screening Screening::unit() { return exp_cosh({1.0, 0.0, 0.0, 0.0}); }

Screening Screening::exponential(double alpha) { return exp_cosh({0.0, 1.0, alpha, 0.0}); }

Screening Screening::exp_cosh(const ExpCoshForm& form) {
  if (!std::isfinite(form.offset) || !std::isfinite(form.scale) || !std::isfinite(form.decay) ||
      !std::isfinite(form.frequency)) {
    throw Error(ErrorKind::InvalidParameter, "screening parameters must be finite");
  }
  if (std::abs(form.frequency) > form.decay) {
    throw Error(ErrorKind::InvalidParameter, "screening is unbounded: |frequency| > decay");
  }
  return Screening(form);
}

Screening Screening::custom(CustomScreening form, double reference_length) {
  check_derivative(form.value, form.derivative, reference_length, "screening");
  if (!std::isfinite(form.asymptote)) {
    throw Error(ErrorKind::InvalidParameter, "screening asymptote must be finite");
  }
  return Screening(std::move(form));
}

double Screening::value(double r) const {
  if (const auto* f = analytic()) {
    const auto [slow, fast] = rates(*f);
    return f->offset + 0.5 * f->scale * (std::exp(-slow * r) + std::exp(-fast * r));
  }
  return std::get<CustomScreening>(form_).value(r);
}

double Screening::derivative(double r) const {
  if (const auto* f = analytic()) {
    const auto [slow, fast] = rates(*f);
    return -0.5 * f->scale * (slow * std::exp(-slow * r) + fast * std::exp(-fast * r));
  }
  return std::get<CustomScreening>(form_).derivative(r);
}

double Screening::second_derivative(double r) const {
  if (const auto* f = analytic()) {
    const auto [slow, fast] = rates(*f);
    return 0.5 * f->scale * (slow * slow * std::exp(-slow * r) + fast * fast * std::exp(-fast * r));
  }
  const auto& c = std::get<CustomScreening>(form_);
  if (c.second_derivative) return c.second_derivative(r);
  return central_difference(c.derivative, r);
}

double Screening::asymptote() const {
  if (const auto* f = analytic()) {
    const auto [slow, fast] = rates(*f);
    return f->offset + 0.5 * f->scale * ((slow == 0.0 ? 1.0 : 0.0) + (fast == 0.0 ? 1.0 : 0.0));
  }
  return std::get<CustomScreening>(form_).asymptote;
}

AdditiveTerm AdditiveTerm::hulthen(double strength, double alpha) {
  if (!std::isfinite(strength) || !std::isfinite(alpha) || alpha < 0.0) {
    throw Error(ErrorKind::InvalidParameter, "Hulthen term needs finite strength and alpha >= 0");
  }
  return AdditiveTerm(HulthenTerm{strength, alpha});
}

AdditiveTerm AdditiveTerm::harmonic(double c) {
  if (!std::isfinite(c) || c < 0.0) {
    throw Error(ErrorKind::InvalidParameter, "harmonic coefficient must be >= 0");
  }
  return AdditiveTerm(HarmonicTerm{c});
}

AdditiveTerm AdditiveTerm::custom(CustomAdditive form, double reference_length) {
  check_derivative(form.value, form.derivative, reference_length, "additive term");
  return AdditiveTerm(std::move(form));
}

double AdditiveTerm::value(double r) const {
  return std::visit(
      [r](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, HulthenTerm>) {
          const double u = std::exp(-g.alpha * r);
          return -g.strength * u / (1.0 + u);
        } else if constexpr (std::is_same_v<T, HarmonicTerm>) {
          return g.c * r * r;
        } else {
          return g.value(r);
        }
      },
      form_);
}

double AdditiveTerm::derivative(double r) const {
  return std::visit(
      [r](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, HulthenTerm>) {
          const double u = std::exp(-g.alpha * r);
          return g.strength * g.alpha * u / ((1.0 + u) * (1.0 + u));
        } else if constexpr (std::is_same_v<T, HarmonicTerm>) {
          return 2.0 * g.c * r;
        } else {
          return g.derivative(r);
        }
      },
      form_);
}

double AdditiveTerm::second_derivative(double r) const {
  return std::visit(
      [r](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, HulthenTerm>) {
          const double u = std::exp(-g.alpha * r);
          const double p = 1.0 + u;
          return -g.strength * g.alpha * g.alpha * u * (1.0 - u) / (p * p * p);
        } else if constexpr (std::is_same_v<T, HarmonicTerm>) {
          return 2.0 * g.c;
        } else {
          if (g.second_derivative) return g.second_derivative(r);
          return central_difference(g.derivative, r);
        }
      },
      form_);
}

std::optional<double> AdditiveTerm::asymptote() const {
  if (const auto* h = harmonic_form()) {
    if (h->c > 0.0) return std::nullopt;
  }
  if (const auto* h = hulthen_form()) {
    // alpha = 0 leaves the constant -V0 / 2.
    if (h->alpha == 0.0) return -0.5 * h->strength;
  }
  return 0.0;
}

}  // namespace kratzer
