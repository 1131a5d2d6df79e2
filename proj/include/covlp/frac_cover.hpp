#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "covlp/core.hpp"

// Fractional covering: find x in P with Ax >= b, or report that none
// exists, using only an eta-weak point-finding oracle and a product oracle.
// The driver is a potential-reduction loop over the coverage ratio
//
//   lambda(x) = min_i (Ax)_i / b_i
//
// with exponential dual weights y_i = (1/b_i) exp(-alpha (Ax)_i / b_i).

namespace covlp {

// min_i (Ax)_i / b_i. Requires b > 0.
double lambda_of(const DenseVec& ax, const DenseVec& b);

// Dual weights are kept factored: scaled[i] = (1/b_i) exp(-alpha ((Ax)_i/b_i
// - lambda)) with log_scale = -alpha * lambda, so true y = exp(log_scale) *
// scaled. The minimizing row carries exp(0), hence max_i b_i * scaled[i] = 1
// exactly and b^T scaled lies in [1, m] whatever alpha is. Every consumer of
// y (the two conditions below and point_find's argmax) is invariant under
// positive scaling, so the scaled vector can be used directly.
struct DualWeights {
  DenseVec scaled;
  double log_scale;
};

DualWeights dual_weights(const DenseVec& ax, const DenseVec& b, double alpha);

// Condition "the weights certify near-tightness of x":
//   (1 + eps1) * lambda * y^T b >= y^T A x.
bool check_c1(double lambda, double yTb, double yTAx, double eps1);

// Oracle-checkable surrogate of the condition
//   y^T A x >= (1 - eps2) C(y) - eps3 lambda y^T b,
// where C(y) = max_{x in P} y^T A x is unobservable. With x_tilde the
// point-find answer for y, eta-weakness gives C(y) <= (y^T A x_tilde)/eta,
// so the surrogate below implies the condition; conversely its failure gives
//   y^T A x_tilde > (eta/(1-eps2)) (y^T A x + eps3 lambda y^T b),
// which is exactly the inequality the step-progress argument consumes.
bool check_c2_surrogate(double yTAx, double yTAxt, double lambda, double yTb,
                        double eps2, double eps3, double eta);

// Solver iterate. The convex combinations x <- (1-sigma) x + sigma x_tilde
// are held in product form: x = x_gamma * x_base, where x_gamma collects the
// (1-sigma) factors and each step adds sigma/x_gamma * x_tilde to x_base.
// This keeps a step at O(tau) sparse work instead of touching the whole
// support. x_gamma is folded into x_base whenever it drops below 1e-150.
struct FcovState {
  double x_gamma = 1.0;
  SparseVec x_base;
  DenseVec ax;       // cached A x, updated incrementally
  double lambda = 0.0;
  double lambda0 = 0.0;  // lambda at entry of the current improve_cover
  double alpha = 0.0;
  double sigma = 0.0;
  double potential_log_offset = 0.0;  // log_scale of the current weights

  SparseVec materialize() const;  // x_gamma * x_base
};

struct FcovStats {
  std::uint64_t point_find_calls = 0;
  std::uint64_t product_calls = 0;
  std::uint64_t improve_cover_invocations = 0;
};

struct FcovSolution {
  SparseVec x;
  DenseVec ax;
  double lambda = 0.0;
};

// nullopt solution means: no x in P satisfies Ax >= b.
struct FcovResult {
  std::optional<FcovSolution> solution;
  FcovStats stats;
};

// Snapshot handed to the per-iteration instrumentation hook, taken at each
// guard evaluation of improve_cover. Potentials are in scaled form (b^T
// scaled-weights, in [1, m]); drops compare pre- and post-step sums under
// the shared pre-step offset, so they are exact relative quantities.
struct IterationInfo {
  double lambda = 0.0;       // pre-step
  double lambda0 = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  double scaled_potential = 0.0;   // b^T yhat at this iterate
  double yTb = 0.0;                // same as scaled_potential
  double yTAx = 0.0;
  double yTAxt = 0.0;
  bool c1 = false;
  bool c2_surrogate = false;
  bool stepped = false;            // false on the exiting evaluation
  double potential_drop = 0.0;     // 1 - Psi'/Psi, shared offset; valid if stepped
  double required_drop = 0.0;      // alpha sigma lambda eps3 (1-eps_sigma) eta/(1-eps2)
};

struct FracCoverOptions {
  double feas_tol = 1e-9;
  // 0 means the default cap of 10 * bound_U total point-find calls.
  std::uint64_t max_point_find_calls = 0;
  // Test instrumentation; both default to none and cost nothing when unset.
  std::function<void(const IterationInfo&)> on_iteration;
  std::function<void(const FcovState&)> on_improve_cover_exit;
};

// Seed iterate: averages the point-find answers for the m unit-weight
// vectors. Returns nullopt (problem unsatisfiable) if some answer x^(i) has
// (A x^(i))_i < oracles.eta * b_i, i.e. even the oracle's best row-i
// coverage falls short; otherwise lambda(seed) >= eta/m. The cached Ax of
// the seed is the average of the m product results, no extra product call.
std::optional<FcovState> get_seed(const FcovOracleSuite& oracles, const DenseVec& b,
                                  const FracCoverOptions& opts, FcovStats& stats);

struct ImproveCoverResult {
  bool success = false;     // surrogate condition held at exit
  std::uint64_t steps = 0;  // convex-combination steps taken
};

// One potential-reduction run: fixes alpha and sigma from lambda(x) at
// entry, then steps x toward point-find answers until either the surrogate
// condition holds (success) or lambda(x) more than doubles. params must come
// from derived_params(eps, eta) for the same eta; rho bounds the width of P.
// Throws oracle_contract_error if the run exceeds the step budget that holds
// for any conforming oracle.
ImproveCoverResult improve_cover(FcovState& state, const FcovOracleSuite& oracles,
                                 const DenseVec& b, double rho, const DerivedParams& params,
                                 double eta, const FracCoverOptions& opts, FcovStats& stats,
                                 std::uint64_t max_total_calls);

// Full feasibility solve. Returns a solution with Ax >= (eta/(1+eps)) b
// (within feas_tol), or nullopt only if no x in P has Ax >= b. eta is the
// weakness the solve is run at; it may not exceed the suite's declared eta.
FcovResult frac_cover(const FcovOracleSuite& oracles, const DenseVec& b, double rho,
                      double eps, double eta, const FracCoverOptions& opts = {});

}  // namespace covlp
