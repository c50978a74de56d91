#pragma once

#include <functional>
#include <optional>
#include <variant>

namespace kratzer {

// f(r) = offset + scale * exp(-decay r) cosh(frequency r), with |frequency| <= decay
// so f stays bounded. Every screening factor of the modified Kratzer families has
// this shape.
struct ExpCoshForm {
  double offset = 0.0;
  double scale = 1.0;
  double decay = 0.0;
  double frequency = 0.0;
};

// User-supplied screening. The second derivative is optional; when absent it is
// taken by central difference of the first derivative.
struct CustomScreening {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> second_derivative;
  double asymptote = 0.0;
};

/// Multiplicative factor f(r) applied to the Kratzer core.
class Screening {
 public:
  static Screening unit();
  static Screening exponential(double alpha);
  static Screening exp_cosh(const ExpCoshForm& form);
  /// Checks finiteness and the derivative against a central difference at a
  /// handful of radii around `reference_length`; throws InvalidParameter.
  static Screening custom(CustomScreening form, double reference_length = 1.0);

  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
  double asymptote() const;

  const ExpCoshForm* analytic() const { return std::get_if<ExpCoshForm>(&form_); }

 private:
  explicit Screening(std::variant<ExpCoshForm, CustomScreening> form) : form_(std::move(form)) {}
  std::variant<ExpCoshForm, CustomScreening> form_;
};

// -V0 exp(-alpha r) / (1 + exp(-alpha r))
struct HulthenTerm {
  double strength = 0.0;
  double alpha = 0.0;
};

// c r^2; divergent for c > 0.
struct HarmonicTerm {
  double c = 0.0;
};

struct CustomAdditive {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> second_derivative;
};

/// Additive term g(r) of the generalized form (a/r + b/r^2) f(r) + g(r).
class AdditiveTerm {
 public:
  AdditiveTerm() = default;
  static AdditiveTerm none() { return AdditiveTerm{}; }
  static AdditiveTerm hulthen(double strength, double alpha);
  static AdditiveTerm harmonic(double c);
  /// Custom terms must vanish at infinity.
  static AdditiveTerm custom(CustomAdditive form, double reference_length = 1.0);

  bool empty() const { return std::holds_alternative<std::monostate>(form_); }
  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
  // Empty optional: divergent.
  std::optional<double> asymptote() const;

  const HulthenTerm* hulthen_form() const { return std::get_if<HulthenTerm>(&form_); }
  const HarmonicTerm* harmonic_form() const { return std::get_if<HarmonicTerm>(&form_); }
  bool is_custom() const { return std::holds_alternative<CustomAdditive>(form_); }

 private:
  using Form = std::variant<std::monostate, HulthenTerm, HarmonicTerm, CustomAdditive>;
  explicit AdditiveTerm(Form form) : form_(std::move(form)) {}
  Form form_;
};

}  // namespace kratzer
