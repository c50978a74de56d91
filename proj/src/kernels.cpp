#include "kratzer/kernels.hpp"

#include <cstddef>
#include <exception>
#include <string>

#include "kratzer/error.hpp"

namespace kratzer {

namespace {

void check_sizes(std::span<const double> r, const PotentialTable& out) {
  const auto ok = [&](std::span<double> s, bool required) {
    return s.size() == r.size() || (!required && s.empty());
  };
  if (!ok(out.value, true) || !ok(out.d1, false) || !ok(out.d2, false)) {
    throw Error(ErrorKind::InvalidParameter, "output spans must match the radius count");
  }
}

void tabulate_one(const PotentialSpec& spec, std::span<const double> r, const PotentialTable& out,
                  std::size_t i) {
  out.value[i] = evaluate(spec, r[i]);
  if (!out.d1.empty()) out.d1[i] = derivative1(spec, r[i]);
  if (!out.d2.empty()) out.d2[i] = derivative2(spec, r[i]);
}

}  // namespace

void tabulate(const PotentialSpec& spec, std::span<const double> r, PotentialTable out) {
  check_sizes(r, out);
  const auto n = static_cast<std::ptrdiff_t>(r.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      tabulate_one(spec, r, out, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(kratzer_tabulate)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void tabulate_serial(const PotentialSpec& spec, std::span<const double> r, PotentialTable out) {
  check_sizes(r, out);
  for (std::size_t i = 0; i < r.size(); ++i) tabulate_one(spec, r, out, i);
}

void tabulate_effective(const PotentialSpec& spec, double centrifugal, std::span<const double> r,
                        std::span<double> out) {
  if (out.size() != r.size()) throw Error(ErrorKind::InvalidParameter, "output span must match radii");
  const auto n = static_cast<std::ptrdiff_t>(r.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const double x = r[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = evaluate(spec, x) + centrifugal / (x * x);
    } catch (...) {
#pragma omp critical(kratzer_tabulate)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void tabulate_effective_serial(const PotentialSpec& spec, double centrifugal, std::span<const double> r,
                               std::span<double> out) {
  if (out.size() != r.size()) throw Error(ErrorKind::InvalidParameter, "output span must match radii");
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = evaluate(spec, r[i]) + centrifugal / (r[i] * r[i]);
}

}  // namespace kratzer
