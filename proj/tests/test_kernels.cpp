#include <doctest.h>

#include <vector>

#include "kratzer/error.hpp"
#include "kratzer/kernels.hpp"
#include "support.hpp"

using namespace kratzer;

TEST_CASE("parallel tabulation matches the serial reference bit for bit") {
  std::mt19937_64 rng(99);
  const auto r = kratzer::testing::log_grid(1e-3, 100.0, 5000);
  for (Family f : kratzer::testing::kNamedFamilies) {
    const auto spec = PotentialSpec::make(f, kratzer::testing::random_params(f, rng));
    std::vector<double> v(r.size()), d1(r.size()), d2(r.size());
    std::vector<double> sv(r.size()), sd1(r.size()), sd2(r.size());
    tabulate(spec, r, {v, d1, d2});
    tabulate_serial(spec, r, {sv, sd1, sd2});
    CHECK(v == sv);
    CHECK(d1 == sd1);
    CHECK(d2 == sd2);

    std::vector<double> e(r.size()), se(r.size());
    tabulate_effective(spec, 1.5, r, e);
    tabulate_effective_serial(spec, 1.5, r, se);
    CHECK(e == se);
    CHECK(e[10] == doctest::Approx(v[10] + 1.5 / (r[10] * r[10])));
  }
}

TEST_CASE("kernels reject mismatched spans and propagate domain errors") {
  PotentialParams p;
  p.De = 5.0;
  p.re = 1.0;
  const auto spec = PotentialSpec::make(Family::Kratzer, p);
  std::vector<double> r{1.0, 2.0, -1.0, 3.0};
  std::vector<double> v(r.size());
  std::vector<double> short_out(2);
  CHECK_THROWS_AS(tabulate(spec, r, {short_out, {}, {}}), Error);
  try {
    tabulate(spec, r, {v, {}, {}});
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}
