#pragma once

#include <vector>

#include "kratzer/solver.hpp"

namespace kratzer::detail {

// Finite-volume discretization of -k u'' + V_eff u = E u on a nonuniform mesh
// with u(r_0) = u(r_N) = 0:
//   -k [(u_{i+1} - u_i)/h_i - (u_i - u_{i-1})/h_{i-1}] + w_i V_i u_i = E w_i u_i,
// h_i = r_{i+1} - r_i, w_i = (h_{i-1} + h_i)/2. As a matrix pencil A u = E W u
// it is symmetric tridiagonal with positive diagonal W.
struct Discretization {
  std::vector<double> r;
  std::vector<double> inv_h;    // 1 / h_i, size N
  std::vector<double> weight;   // w_i, zero at the boundary nodes
  std::vector<double> v_eff;    // V_eff(r_i)
  std::vector<double> kinetic;  // k (1/h_{i-1} + 1/h_i), zero at the boundary nodes
  double k = 0.0;
  double threshold = 0.0;
  double well_bottom = 0.0;

  int last() const { return static_cast<int>(r.size()) - 1; }

  // Row i of A - E W: -k/h_{i-1} u_{i-1} + diagonal(i, E) u_i - k/h_i u_{i+1}
  double diagonal(int i, double E) const { return kinetic[i] + weight[i] * (v_eff[i] - E); }

  // Number of eigenvalues strictly below E (Sturm count via LDL^T pivots).
  int count_below(double E) const;
};

Discretization discretize(const RadialProblem& problem, const RadialGrid& grid, bool parallel);

}  // namespace kratzer::detail
