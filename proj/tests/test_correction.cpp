#include <doctest.h>

#include <cmath>

#include "kratzer/correction.hpp"
#include "kratzer/error.hpp"
#include "support.hpp"

using namespace kratzer;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// Closed-form solution of V(re) = -De, V'(re) = 0 for V = (a/r + b/r^2) f(r):
// with P = a/re, Q = b/re^2, P + Q = -De/f and P + 2Q = -De re f'/f^2.
CorrectionCoefficients closed_form(double f0, double f1, double De, double re) {
  const double Q = De / f0 - De * re * f1 / (f0 * f0);
  const double P = -De / f0 - Q;
  return {P * re, Q * re * re};
}

}  // namespace

TEST_CASE("unit screening reproduces Kratzer coefficients") {
  const auto c = solve_correction(Screening::unit(), AdditiveTerm::none(), 5.0, 1.5);
  CHECK(c.a == doctest::Approx(-2.0 * 5.0 * 1.5).epsilon(1e-14));
  CHECK(c.b == doctest::Approx(5.0 * 1.5 * 1.5).epsilon(1e-14));
}

TEST_CASE("closed-form corrected screened Kratzer") {
  const auto closed = corrected_screened_kratzer(5.0, 1.0, 0.25);
  // mpmath: 5 (1.25/4 - 2.25/2) exp(-0.25)
  CHECK(evaluate(closed, 2.0) == doctest::Approx(-3.16387818122758231).epsilon(1e-14));
  CHECK(evaluate(closed, 1.0) == doctest::Approx(-5.0).epsilon(1e-15));

  const auto general = correct_general(Screening::exponential(0.25), 5.0, 1.0);
  for (double r : kratzer::testing::log_grid(1e-2, 50.0, 500)) {
    const double v = evaluate(closed, r);
    CHECK(std::abs(v - evaluate(general, r)) <= 1e-12 * std::max(1.0, std::abs(v)));
  }
}

TEST_CASE("general correction matches the closed-form two-condition solution") {
  std::mt19937_64 rng(7);
  for (Family f : {Family::ScreenedKratzer, Family::ScreenedCosineKratzer, Family::ImprovedScreenedKratzer,
                   Family::ShiftedScreenedKratzer}) {
    CAPTURE(to_string(f));
    for (int draw = 0; draw < 50; ++draw) {
      const auto p = kratzer::testing::random_params(f, rng);
      const auto spec = PotentialSpec::make(f, p);
      const auto& s = spec.screening();
      const auto expected = closed_form(s.value(p.re), s.derivative(p.re), p.De, p.re);
      const auto got = solve_correction(s, AdditiveTerm::none(), p.De, p.re);
      CHECK(got.a == doctest::Approx(expected.a).epsilon(1e-11));
      CHECK(got.b == doctest::Approx(expected.b).epsilon(1e-11));
    }
  }
}

TEST_CASE("Hulthen screened cosine Kratzer correction") {
  PotentialParams p;
  p.De = 5.0;
  p.re = 1.0;
  p.alpha = 0.25;
  p.delta = 1.0;
  p.lambda = 0.5;
  p.V0 = 1.0;
  const auto corrected = correct(PotentialSpec::make(Family::HulthenScreenedCosineKratzer, p));
  // mpmath, 30 digits.
  CHECK(corrected.coefficients().a == doctest::Approx(-13.0661305680225177).epsilon(1e-13));
  CHECK(corrected.coefficients().b == doctest::Approx(7.25364915493214694).epsilon(1e-13));
  CHECK(validate_correction(corrected, 5.0, 1.0).passed());
  const double r_min =
      kratzer::testing::scan_minimum([&](double r) { return evaluate(corrected, r); }, 0.05, 20.0);
  CHECK(r_min == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("zero additive term gives the general correction") {
  const auto f = Screening::exp_cosh({0.0, 1.0, 0.3, 0.1});
  const auto a = correct_general(f, 3.0, 2.0).coefficients();
  const auto b = correct_with_additive(f, AdditiveTerm::hulthen(0.0, 0.4), 3.0, 2.0).coefficients();
  CHECK(a.a == doctest::Approx(b.a).epsilon(1e-15));
  CHECK(a.b == doctest::Approx(b.b).epsilon(1e-15));
}

TEST_CASE("correction failure modes") {
  // f(re) = 0 at re = 1.
  const auto vanishing = Screening::exp_cosh({-std::exp(-0.5), 1.0, 0.5, 0.0});
  CHECK(throws_kind(ErrorKind::DegenerateScreening, [&] { correct_general(vanishing, 5.0, 1.0); }));
  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { correct_general(Screening::unit(), -1.0, 1.0); }));
  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { corrected_screened_kratzer(5.0, 0.0, 0.25); }));
  CHECK(throws_kind(ErrorKind::NotApplicable,
                    [] { correct_with_additive(Screening::unit(), AdditiveTerm::harmonic(0.1), 5.0, 1.0); }));

  PotentialParams p;
  p.De = 5.0;
  p.re = 1.0;
  p.alpha = 0.25;
  p.c = 0.1;
  CHECK(throws_kind(ErrorKind::NotApplicable,
                    [&] { correct(PotentialSpec::make(Family::HarmonicScreenedKratzer, p)); }));
  p.c = 0.0;
  CHECK(validate_correction(correct(PotentialSpec::make(Family::HarmonicScreenedKratzer, p)), 5.0, 1.0).passed());
}

TEST_CASE("strong Hulthen attraction leaves no minimum to impose") {
  PotentialParams p;
  p.De = 1.05818;
  p.re = 0.665186;
  p.alpha = 0.327906;
  p.delta = 0.517202;
  p.lambda = -0.00898021;
  p.V0 = 3.30473;
  CHECK(throws_kind(ErrorKind::NotAMinimum,
                    [&] { correct(PotentialSpec::make(Family::HulthenScreenedCosineKratzer, p)); }));
}

TEST_CASE("validation detects the flaw") {
  PotentialParams p;
  p.De = 5.0;
  p.re = 1.0;
  p.alpha = 0.25;
  const auto flawed = validate_correction(PotentialSpec::make(Family::ScreenedKratzer, p), 5.0, 1.0);
  CHECK_FALSE(flawed.passed());
  CHECK(flawed.slope.residual == doctest::Approx(0.973500978839256).epsilon(1e-12));
  CHECK(flawed.curvature.passed);

  p.alpha = 0.0;
  CHECK(validate_correction(PotentialSpec::make(Family::Kratzer, p), 5.0, 1.0).passed());

  p.alpha = 0.25;
  p.c = 0.1;
  const auto confined = validate_correction(PotentialSpec::make(Family::HarmonicScreenedKratzer, p), 5.0, 1.0);
  CHECK_FALSE(confined.depth.passed);
  CHECK(std::isinf(confined.depth.residual));
}

TEST_CASE("every corrected family passes validation") {
  std::mt19937_64 rng(2024);
  for (Family f : kratzer::testing::kNamedFamilies) {
    CAPTURE(to_string(f));
    for (int draw = 0; draw < 100; ++draw) {
      const auto p = kratzer::testing::correctable_params(f, rng);
      const auto corrected = correct(PotentialSpec::make(f, p));
      const auto report = validate_correction(corrected, p.De, p.re);
      CAPTURE(report.slope.residual);
      CAPTURE(report.depth.residual);
      CHECK(report.passed());
      // Correcting again is a fixed point.
      const auto twice = correct(corrected);
      CHECK(twice.coefficients().a == doctest::Approx(corrected.coefficients().a).epsilon(1e-12));
    }
  }
}
