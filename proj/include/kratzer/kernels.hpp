#pragma once

#include <span>

#include "kratzer/potential.hpp"

namespace kratzer {

struct PotentialTable {
  std::span<double> value;
  std::span<double> d1;  // may be empty
  std::span<double> d2;  // may be empty
};

// Tabulates V, V', V'' at each radius. Output spans must match r in size
// (or be empty). The parallel version splits the radii over OpenMP threads;
// results are identical to the serial reference.
void tabulate(const PotentialSpec& spec, std::span<const double> r, PotentialTable out);
void tabulate_serial(const PotentialSpec& spec, std::span<const double> r, PotentialTable out);

// V(r) + centrifugal / r^2 on each radius.
void tabulate_effective(const PotentialSpec& spec, double centrifugal, std::span<const double> r,
                        std::span<double> out);
void tabulate_effective_serial(const PotentialSpec& spec, double centrifugal, std::span<const double> r,
                               std::span<double> out);

}  // namespace kratzer
