#include <doctest.h>

#include <cmath>

#include "kratzer/error.hpp"
#include "kratzer/potential.hpp"
#include "support.hpp"

using namespace kratzer;
using kratzer::testing::central_difference;

namespace {

PotentialParams base(double alpha = 0.0) {
  PotentialParams p;
  p.De = 5.0;
  p.re = 1.0;
  p.alpha = alpha;
  return p;
}

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("evaluate at the claimed minimum") {
  const auto k = PotentialSpec::make(Family::Kratzer, base());
  CHECK(evaluate(k, 1.0) == doctest::Approx(-5.0).epsilon(1e-15));
  const auto sk = PotentialSpec::make(Family::ScreenedKratzer, base(0.25));
  CHECK(evaluate(sk, 1.0) == doctest::Approx(-3.894003915357024).epsilon(1e-14));
}

TEST_CASE("improved screened Kratzer: simplified and hyperbolic forms agree") {
  for (double tau : {-1.0, 0.0, 1.0}) {
    auto p = base(0.25);
    p.delta = 0.25;
    p.tau = tau;
    const auto spec = PotentialSpec::make(Family::ImprovedScreenedKratzer, p);
    for (double r : {0.5, 1.0, 2.0, 7.3, 40.0}) {
      const double hyperbolic = improved_kratzer_hyperbolic(p, r);
      CHECK(std::abs(evaluate(spec, r) - hyperbolic) <= 1e-12 * std::abs(hyperbolic));
    }
  }
}

TEST_CASE("harmonic family with c = 0 is the screened Kratzer potential") {
  const auto sk = PotentialSpec::make(Family::ScreenedKratzer, base(0.25));
  const auto hsk = PotentialSpec::make(Family::HarmonicScreenedKratzer, base(0.25));
  for (double r : {0.1, 0.7, 1.0, 3.0, 20.0}) CHECK(evaluate(hsk, r) == evaluate(sk, r));
}

TEST_CASE("first derivative examples") {
  CHECK(derivative1(PotentialSpec::make(Family::Kratzer, base()), 1.0) == 0.0);
  CHECK(derivative1(PotentialSpec::make(Family::ScreenedKratzer, base(0.25)), 1.0) ==
        doctest::Approx(0.9735009788392561).epsilon(1e-14));
  auto p = base(0.25);
  p.c = 0.1;
  CHECK(derivative1(PotentialSpec::make(Family::HarmonicScreenedKratzer, p), 1.0) ==
        doctest::Approx(1.1735009788392561).epsilon(1e-14));
}

TEST_CASE("second derivative examples") {
  const auto k = PotentialSpec::make(Family::Kratzer, base());
  CHECK(derivative2(k, 1.0) == doctest::Approx(10.0).epsilon(1e-15));
  const auto sk0 = PotentialSpec::make(Family::ScreenedKratzer, base(0.0));
  for (double r : kratzer::testing::log_grid(0.1, 50.0, 101)) CHECK(derivative2(sk0, r) == derivative2(k, r));
}

TEST_CASE("asymptote") {
  CHECK(asymptote(PotentialSpec::make(Family::Kratzer, base())) == 0.0);
  auto p = base(0.25);
  p.c = 0.1;
  CHECK_FALSE(asymptote(PotentialSpec::make(Family::HarmonicScreenedKratzer, p)).has_value());
  auto s = base(0.25);
  s.lambda = 0.3;
  s.gamma = 1.0;
  CHECK(asymptote(PotentialSpec::make(Family::ShiftedScreenedKratzer, s)) == 0.0);
}

TEST_CASE("nonpositive radius is a domain error") {
  const auto k = PotentialSpec::make(Family::Kratzer, base());
  for (double r : {0.0, -1.0, std::nan("")}) {
    CHECK(throws_kind(ErrorKind::Domain, [&] { evaluate(k, r); }));
    CHECK(throws_kind(ErrorKind::Domain, [&] { derivative1(k, r); }));
    CHECK(throws_kind(ErrorKind::Domain, [&] { derivative2(k, r); }));
  }
}

TEST_CASE("parameter validation at construction") {
  const auto bad = [](Family f, PotentialParams p) {
    return throws_kind(ErrorKind::InvalidParameter, [&] { PotentialSpec::make(f, p); });
  };
  CHECK(bad(Family::Kratzer, {}));
  CHECK(bad(Family::Kratzer, base(0.25)));  // alpha is not a Kratzer parameter
  CHECK(bad(Family::ScreenedKratzer, base(-0.1)));
  auto p = base(0.25);
  p.delta = 1.5;
  CHECK(bad(Family::ScreenedCosineKratzer, p));
  p = base(0.25);
  p.lambda = 2.0;
  CHECK(bad(Family::HulthenScreenedCosineKratzer, p));
  p = base(0.0);
  p.V0 = 1.0;
  CHECK(bad(Family::HulthenScreenedCosineKratzer, p));
  p = base(0.25);
  p.tau = 0.5;
  CHECK(bad(Family::ImprovedScreenedKratzer, p));
  p = base(0.25);
  p.c = -1.0;
  CHECK(bad(Family::HarmonicScreenedKratzer, p));
  CHECK(throws_kind(ErrorKind::Load, [] { family_from_string("morse"); }));
  PotentialParams q;
  CHECK(throws_kind(ErrorKind::Load, [&] { set_parameter(q, "beta", 1.0); }));
}

TEST_CASE("every screened family reduces to Kratzer with zero screening") {
  const auto grid = kratzer::testing::log_grid(0.1, 50.0, 500);
  for (Family f : kratzer::testing::kFlawedFamilies) {
    auto p = base(0.0);
    if (f == Family::ScreenedCosineKratzer) p.delta = 0.7;
    if (f == Family::HulthenScreenedCosineKratzer) p.lambda = 0.5;
    if (f == Family::ShiftedScreenedKratzer) p.gamma = 1.0;
    const auto spec = PotentialSpec::make(f, p);
    for (double r : grid) {
      const double expected = kratzer::testing::kratzer(p.De, p.re, r);
      CHECK(std::abs(evaluate(spec, r) - expected) <= 1e-12 * std::abs(expected));
    }
  }
}

TEST_CASE("analytic derivatives match central differences over random draws") {
  std::mt19937_64 rng(20240611);
  for (Family f : kratzer::testing::kNamedFamilies) {
    for (int draw = 0; draw < 50; ++draw) {
      const auto p = kratzer::testing::random_params(f, rng);
      const auto spec = PotentialSpec::make(f, p);
      for (double scale : {0.5, 1.0, 3.0}) {
        const double r = scale * p.re;
        const double h = 1e-5 * r;
        const double v = evaluate(spec, r);
        if (std::abs(v) <= 1e-8) continue;
        const double d1 = derivative1(spec, r);
        const double d2 = derivative2(spec, r);
        const double fd1 = central_difference([&](double x) { return evaluate(spec, x); }, r, h);
        const double fd2 = central_difference([&](double x) { return derivative1(spec, x); }, r, h);
        // Relative to the natural scale |V|/r (|V|/r^2), since V' vanishes at a minimum.
        CHECK(std::abs(fd1 - d1) <= 1e-6 * std::max(std::abs(d1), std::abs(v) / r));
        CHECK(std::abs(fd2 - d2) <= 1e-6 * std::max(std::abs(d2), std::abs(v) / (r * r)));
      }
    }
  }
}

TEST_CASE("Kratzer satisfies both equilibrium conditions exactly") {
  std::mt19937_64 rng(7);
  for (int draw = 0; draw < 100; ++draw) {
    const auto p = kratzer::testing::random_params(Family::Kratzer, rng);
    const auto k = PotentialSpec::make(Family::Kratzer, p);
    CHECK(std::abs(derivative1(k, p.re)) <= 1e-12 * p.De / p.re);
    CHECK(std::abs(*asymptote(k) - evaluate(k, p.re) - p.De) <= 1e-12 * p.De);
  }
}

TEST_CASE("custom screening is checked against finite differences") {
  CustomScreening good{[](double r) { return 1.0 / (1.0 + r); }, [](double r) { return -1.0 / ((1.0 + r) * (1.0 + r)); },
                       nullptr, 0.0};
  const auto f = Screening::custom(good);
  CHECK(f.second_derivative(1.0) == doctest::Approx(0.25).epsilon(1e-6));
  CustomScreening wrong = good;
  wrong.derivative = [](double r) { return 1.0 / ((1.0 + r) * (1.0 + r)); };
  CHECK(throws_kind(ErrorKind::InvalidParameter, [&] { Screening::custom(wrong); }));
  CHECK(throws_kind(ErrorKind::InvalidParameter, [] { Screening::exp_cosh({0.0, 1.0, 0.1, 0.2}); }));
}
