#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "covlp/core.hpp"
#include "covlp/cov_lp.hpp"

namespace covlp {

// Bin packing instance grouped by item type. Sizes are strictly ascending and
// lie in (0, 1]; multiplicities[i] is how many items of sizes[i] exist.
struct BinPackInstance {
  std::vector<double> sizes;
  std::vector<int> multiplicities;

  int type_count() const { return static_cast<int>(sizes.size()); }
  int item_count() const;

  // Multiplicities as the demand vector of the covering LP.
  DenseVec demand() const;

  // Builds an instance from parallel (size, multiplicity) arrays. The pairs
  // are sorted by size; duplicate sizes are rejected rather than merged so an
  // accidental double entry does not silently change the instance.
  static BinPackInstance from_types(std::vector<double> sizes,
                                    std::vector<int> multiplicities);

  // Builds an instance from a flat item list, grouping equal sizes.
  static BinPackInstance from_items(const std::vector<double>& items);
};

// A configuration is a multiset of items packed into one unit bin, stored as
// per-type counts. config_fits accepts cfg when the counts are within the
// multiplicities and sum(cfg[i] * sizes[i]) <= 1 + tol. The empty
// configuration fits; it is excluded where emptiness matters.
using Configuration = std::vector<int>;

inline constexpr double kConfigFitTol = 1e-9;

bool config_fits(const BinPackInstance& inst, const Configuration& cfg,
                 double tol = kConfigFitTol);

// sum(y[i] * cfg[i]).
double config_profit(const DenseVec& y, const Configuration& cfg);

// Knapsack oracles answer: given per-type profits y, find a configuration of
// (approximately) maximum profit. eta is the factor the solver is told.
enum class KnapsackKind {
  ExactBnB,       // eta = 1, branch and bound, small instances only
  GreedyDensity,  // eta = 1/2, density greedy vs. best single item
  Singleton,      // eta = 1/k where k smallest-size items fill a bin
};

using KnapsackFn =
    std::function<Configuration(const DenseVec&, const BinPackInstance&)>;

// How many copies of the smallest size fit in one bin. Every configuration
// has at most this many items, which is what makes the singleton oracle
// 1/max_items_per_config-weak.
int max_items_per_config(const BinPackInstance& inst);

double knapsack_eta(KnapsackKind kind, const BinPackInstance& inst);

// Exact maximizer by depth-first branch and bound over per-type counts.
// Requires item_count() <= 40. Deterministic: among maximizers it returns
// the lexicographically largest count vector.
Configuration exact_knapsack_bnb(const DenseVec& y, const BinPackInstance& inst);

// Density greedy with a best-single-item fallback; factor 1/2.
Configuration greedy_knapsack(const DenseVec& y, const BinPackInstance& inst);

// One copy of the most profitable type, or the empty configuration when no
// profit is positive; factor 1/max_items_per_config.
Configuration singleton_knapsack(const DenseVec& y, const BinPackInstance& inst);

KnapsackFn make_knapsack(KnapsackKind kind);

// Covering-LP oracle suite for the configuration LP: columns are
// configurations, every cost is 1, index_find runs the chosen knapsack on
// the dual weights. Every configuration an oracle returns is checked with
// config_fits before the solver sees it.
CoveringOracleSuite config_lp_oracles(const BinPackInstance& inst,
                                      KnapsackKind kind);

// Objective upper bound q and width bound rho for the configuration LP; both
// equal the item count. n singleton bins cover everything, and counts <= b
// keeps every extreme point's row ratio at most r <= n.
struct BinPackBounds {
  double q = 0.0;
  double rho = 0.0;
};
BinPackBounds default_bounds(const BinPackInstance& inst);

struct BinPackSolveOptions {
  double feas_tol = 1e-9;
  std::uint64_t max_oracle_calls = 0;  // 0 = automatic cap
  // Overrides the eta declared to the solver. Only useful in tests that
  // deliberately overstate oracle quality; 0 keeps the truthful value.
  double declared_eta = 0.0;
};

// Builds the configuration-LP oracles and solves at accuracy eps.
CovLpResult solve_binpack_lp(const BinPackInstance& inst, KnapsackKind kind,
                             double eps, const BinPackSolveOptions& opts = {});

}  // namespace covlp
