#pragma once

#include <cstdint>
#include <functional>

#include "covlp/core.hpp"
#include "covlp/frac_cover.hpp"

// Outer solver: reduce the covering LP min c^T x, Ax >= b, x >= 0 to a
// binary search over the objective level r, where each probe asks the
// feasibility solver whether P_r = {x >= 0 : c^T x = r} contains a point
// with Ax >= b. The probe's point-find and product oracles are synthesized
// from the covering suite's index_find / cost / column callbacks.

namespace covlp {

struct CovLpStats {
  std::uint64_t index_find_calls = 0;
  std::uint64_t cost_calls = 0;
  std::uint64_t column_calls = 0;
  std::uint64_t point_find_calls = 0;
  std::uint64_t product_calls = 0;
  std::uint64_t improve_cover_invocations = 0;
  std::uint64_t binary_search_iterations = 0;  // while-loop passes
  std::uint64_t probes = 0;                    // frac_cov_2 runs incl. the initial one at q
  // Per-probe maxima, for checking observed counts against per-solve bounds.
  std::uint64_t max_point_find_calls_per_probe = 0;
  std::uint64_t max_improve_cover_per_probe = 0;
  // Point-find calls of the probe whose solution was returned.
  std::uint64_t result_probe_point_find_calls = 0;
};

// Validates that the probe level r lies inside [0, q], the bracket rho was
// certified for (width(A,b,P_r) scales linearly in r, so the q-level bound
// covers every probe). Returns rho.
double width_bound_check(double q, double rho, double r);

// P_r's extreme points are the scaled basis columns (r/c_j) e_j, so an
// eta-weak index_find lifts to an eta-weak point_find with tau = 1:
// y -> SparseVec{k: r/c_k}, k = index_find(y). Throws oracle_contract_error
// if cost(k) <= 0. stats, when given, counts index_find and cost calls.
std::function<SparseVec(const DenseVec&)> make_point_find(const CoveringOracleSuite& covering,
                                                          double r, CovLpStats* stats = nullptr);

// Product oracle from the column oracle: product(x) = sum_j x_j column(j),
// one column call per support entry. m is the row dimension (also the
// expected column length).
std::function<DenseVec(const SparseVec&)> make_product(const CoveringOracleSuite& covering,
                                                       std::size_t m, CovLpStats* stats = nullptr);

// Feasibility probe at level r: runs frac_cover over P_r. A Solution has
// c^T x = r (within feas_tol * r) and Ax >= (eta/(1+eps)) b; Unsatisfiable
// certifies that no x in P_r reaches Ax >= b.
FcovResult frac_cov_2(const CoveringOracleSuite& covering, const DenseVec& b, double r,
                      double rho, double eps, double eta, const FracCoverOptions& opts = {},
                      CovLpStats* stats = nullptr);

struct CovLpResult {
  double alpha = 0.0;    // largest probed level with an unsatisfiable probe (0 if none)
  double beta = 0.0;     // smallest probed level with a satisfiable probe
  SparseVec x_raw;       // solution of the beta probe; c^T x_raw = beta
  SparseVec x_feasible;  // x_raw / mu with mu = eta/(1+eps); A x_feasible >= b
  double objective = 0.0;  // beta / mu = c^T x_feasible
  CovLpStats stats;
};

// Binary search per the bracketing loop "while beta > (1+delta) alpha" with
// delta = eps^2/(1+eps). Returns a feasible solution whose cost is within a
// factor (1+eps+eps^2)/eta of the optimum. Throws domain_error if the
// initial probe at q comes back unsatisfiable (params.q was not a valid
// upper bound on the optimum).
CovLpResult cov_lp_solve(const CoveringOracleSuite& covering, const DenseVec& b,
                         const SolveParams& params);

}  // namespace covlp
