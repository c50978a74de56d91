#pragma once

#include <vector>

#include "kratzer/potential.hpp"

namespace kratzer {

struct RadialProblem {
  PotentialSpec potential;
  int l = 0;
  // hbar^2 / 2 mu in the caller's units; multiplies -d2/dr2 and l(l+1)/r^2.
  double kinetic_coefficient = 0.5;
};

/// Radial mesh from r_min to r_max with n_points nodes (Dirichlet at both ends),
/// uniform in x = r + s ln r where s = switch_radius: geometric spacing for
/// r << s, uniform for r >> s. switch_radius = 0 gives a uniform mesh.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int n_points = 0;
  double switch_radius = 0.0;
};

/// [1e-3 re, 50 re], 4000 points, switching at re.
RadialGrid default_grid(double re);
void validate(const RadialGrid& grid);
std::vector<double> grid_points(const RadialGrid& grid);

struct BoundState {
  int n = 0;  // interior node count
  int l = 0;
  double energy = 0.0;
  std::vector<double> wavefunction;  // on grid_points(grid), sum u^2 w = 1
};

struct Spectrum {
  std::vector<double> r;
  std::vector<BoundState> states;
  double threshold = 0.0;  // continuum edge (or V_eff(r_max) under confinement)
  double well_bottom = 0.0;
  int capacity = 0;        // discrete levels below threshold on this grid
  bool truncated = false;  // fewer than n_max + 1 levels
};

/// V(r) + l(l+1) k / r^2
double effective_potential(const RadialProblem& problem, double r);

/// Levels n = 0..n_max by node-count bracketing and shooting from both ends,
/// matched at the outermost classical turning point. Throws NoBoundStates.
/// Levels are solved concurrently (OpenMP); `solve_bound_states_serial` is the
/// single-threaded reference.
Spectrum solve_bound_states(const RadialProblem& problem, const RadialGrid& grid, int n_max);
Spectrum solve_bound_states_serial(const RadialProblem& problem, const RadialGrid& grid, int n_max);

/// Eigenvalues of the symmetric tridiagonal discretization below the
/// continuum threshold, ascending, by LAPACK's QL/QR (dstev).
std::vector<double> diagonalize_oracle(const RadialProblem& problem, const RadialGrid& grid);

/// Sign changes of u over interior points.
int count_nodes(const std::vector<double>& u);

}  // namespace kratzer
