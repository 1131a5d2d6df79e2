#pragma once

#include <cstddef>
#include <vector>

#include "covlp/core.hpp"

namespace covlp {

// Covering LP given by an explicit matrix: min c^T x, A x >= b, x >= 0 with
// A >= 0, b > 0, c > 0. Columns are indexed 0..cols-1.
struct ExplicitLp {
  std::vector<DenseVec> A;  // rows, each of length cols
  DenseVec b;
  DenseVec c;

  std::size_t rows() const { return A.size(); }
  std::size_t cols() const { return c.size(); }
  void validate() const;
};

// Oracle suite over the explicit columns. With oracle_eta = 1 index_find is
// the exact argmax of D_j = (1/c_j) y^T A e_j (ties to the lowest index).
// With oracle_eta < 1 it instead returns the worst column that still clears
// eta * max_j D_j, exercising the solver against a maximally unhelpful but
// conformant oracle.
CoveringOracleSuite explicit_oracles(const ExplicitLp& lp,
                                     double oracle_eta = 1.0);

struct ExplicitBounds {
  double q = 0.0;
  double rho = 0.0;
};

// q: cover each row with its cheapest single column and add up the costs.
// rho: width of { x >= 0 : c^T x <= q }, which is q * max_ij A[i][j]/(b_i c_j).
ExplicitBounds explicit_default_bounds(const ExplicitLp& lp);

// max_i b_i min_{j : A[i][j] > 0} c_j / A[i][j]; any cover pays at least this
// much for its most expensive row, so r* is at least this value.
double explicit_rstar_lower_bound(const ExplicitLp& lp);

}  // namespace covlp
