#include "covlp/binpack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace covlp {

namespace {

void validate_types(const std::vector<double>& sizes,
                    const std::vector<int>& multiplicities) {
  if (sizes.empty()) throw domain_error("bin packing instance has no types");
  if (sizes.size() != multiplicities.size())
    throw domain_error("sizes and multiplicities differ in length");
  for (double s : sizes) {
    if (!std::isfinite(s) || s <= 0.0 || s > 1.0)
      throw domain_error("item size " + std::to_string(s) +
                         " is outside (0, 1]");
  }
  for (int mult : multiplicities) {
    if (mult <= 0)
      throw domain_error("multiplicity " + std::to_string(mult) +
                         " is not positive");
  }
}

// Largest c in [0, cap] with used + c * size <= 1 + tol. floor() alone can be
// off by one for sizes like 0.3 that are not exactly representable, so the
// result is nudged by direct multiply-and-compare, the same predicate
// config_fits applies.
int max_copies_fitting(double used, double size, int cap, double tol) {
  double room = 1.0 + tol - used;
  if (room < 0.0 || cap <= 0) return 0;
  int c = static_cast<int>(std::min(static_cast<double>(cap),
                                    std::floor(room / size)));
  while (c < cap && used + (c + 1) * size <= 1.0 + tol) ++c;
  while (c > 0 && used + c * size > 1.0 + tol) --c;
  return c;
}

}  // namespace

int BinPackInstance::item_count() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

DenseVec BinPackInstance::demand() const {
  return DenseVec(multiplicities.begin(), multiplicities.end());
}

BinPackInstance BinPackInstance::from_types(std::vector<double> sizes,
                                            std::vector<int> multiplicities) {
  validate_types(sizes, multiplicities);
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });

  BinPackInstance inst;
  inst.sizes.reserve(sizes.size());
  inst.multiplicities.reserve(sizes.size());
  for (std::size_t idx : order) {
    if (!inst.sizes.empty() && inst.sizes.back() == sizes[idx])
      throw domain_error("duplicate item size " + std::to_string(sizes[idx]));
    inst.sizes.push_back(sizes[idx]);
    inst.multiplicities.push_back(multiplicities[idx]);
  }
  return inst;
}

BinPackInstance BinPackInstance::from_items(const std::vector<double>& items) {
  if (items.empty()) throw domain_error("bin packing instance has no items");
  std::vector<double> sorted = items;
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> sizes;
  std::vector<int> multiplicities;
  for (double s : sorted) {
    if (!sizes.empty() && sizes.back() == s) {
      ++multiplicities.back();
    } else {
      sizes.push_back(s);
      multiplicities.push_back(1);
    }
  }
  validate_types(sizes, multiplicities);
  BinPackInstance inst;
  inst.sizes = std::move(sizes);
  inst.multiplicities = std::move(multiplicities);
  return inst;
}

bool config_fits(const BinPackInstance& inst, const Configuration& cfg,
                 double tol) {
  if (cfg.size() != inst.sizes.size()) return false;
  double used = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (cfg[i] < 0 || cfg[i] > inst.multiplicities[i]) return false;
    used += cfg[i] * inst.sizes[i];
  }
  return used <= 1.0 + tol;
}

double config_profit(const DenseVec& y, const Configuration& cfg) {
  if (y.size() != cfg.size())
    throw domain_error("profit vector and configuration differ in length");
  double p = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) p += y[i] * cfg[i];
  return p;
}

int max_items_per_config(const BinPackInstance& inst) {
  double s = inst.sizes.front();  // smallest, sizes are ascending
  double approx = std::min(std::floor((1.0 + kConfigFitTol) / s), 1e9);
  int k = static_cast<int>(approx);
  while ((k + 1) * s <= 1.0 + kConfigFitTol) ++k;
  while (k > 1 && k * s > 1.0 + kConfigFitTol) --k;
  return k;
}

double knapsack_eta(KnapsackKind kind, const BinPackInstance& inst) {
  switch (kind) {
    case KnapsackKind::ExactBnB:
      return 1.0;
    case KnapsackKind::GreedyDensity:
      return 0.5;
    case KnapsackKind::Singleton:
      return 1.0 / max_items_per_config(inst);
  }
  throw domain_error("unknown knapsack kind");
}

Configuration exact_knapsack_bnb(const DenseVec& y,
                                 const BinPackInstance& inst) {
  std::size_t m = inst.sizes.size();
  validate_dense(y, m, "knapsack profits");
  if (inst.item_count() > 40)
    throw domain_error("exact knapsack is capped at 40 items, instance has " +
                       std::to_string(inst.item_count()));

  // Only profitable types can appear in a maximizer. Keeping ascending type
  // order in the search (with counts tried largest first) makes the first
  // maximum found the lexicographically largest one.
  std::vector<std::size_t> types;
  for (std::size_t i = 0; i < m; ++i)
    if (y[i] > 0.0) types.push_back(i);

  Configuration best(m, 0);
  if (types.empty()) return best;
  double best_profit = 0.0;

  // suffix_profit[t]: taking every remaining copy from position t on;
  // suffix_density[t]: best profit per unit of capacity from position t on.
  // Either one caps what the subtree can still add.
  std::size_t count = types.size();
  std::vector<double> suffix_profit(count + 1, 0.0);
  std::vector<double> suffix_density(count + 1, 0.0);
  for (std::size_t t = count; t-- > 0;) {
    std::size_t i = types[t];
    suffix_profit[t] = suffix_profit[t + 1] + y[i] * inst.multiplicities[i];
    suffix_density[t] = std::max(suffix_density[t + 1], y[i] / inst.sizes[i]);
  }

  Configuration current(m, 0);
  auto dfs = [&](auto&& self, std::size_t t, double used, double profit) -> void {
    if (profit > best_profit) {
      best_profit = profit;
      best = current;
    }
    if (t == count) return;
    double room = std::max(0.0, 1.0 + kConfigFitTol - used);
    double bound =
        profit + std::min(suffix_profit[t], room * suffix_density[t]);
    // Strict-with-margin prune so ties (and hairline misses) are explored;
    // exactness of the maximum beats a little extra search.
    if (bound < best_profit * (1.0 - 1e-12)) return;

    std::size_t i = types[t];
    int cap = max_copies_fitting(used, inst.sizes[i], inst.multiplicities[i],
                                 kConfigFitTol);
    for (int c = cap; c >= 0; --c) {
      current[i] = c;
      self(self, t + 1, used + c * inst.sizes[i], profit + c * y[i]);
    }
    current[i] = 0;
  };
  dfs(dfs, 0, 0.0, 0.0);
  return best;
}

Configuration greedy_knapsack(const DenseVec& y, const BinPackInstance& inst) {
  std::size_t m = inst.sizes.size();
  validate_dense(y, m, "knapsack profits");

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < m; ++i)
    if (y[i] > 0.0) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double da = y[a] / inst.sizes[a];
    double db = y[b] / inst.sizes[b];
    if (da != db) return da > db;
    return a < b;
  });

  Configuration greedy(m, 0);
  double used = 0.0;
  for (std::size_t i : order) {
    int c = max_copies_fitting(used, inst.sizes[i], inst.multiplicities[i],
                               kConfigFitTol);
    greedy[i] = c;
    used += c * inst.sizes[i];  // a type that does not fit is skipped, not final
  }
  double greedy_profit = config_profit(y, greedy);

  // The usual factor-1/2 argument: greedy value plus the first item that
  // overflowed bounds the fractional optimum, so the better of greedy and the
  // best single item is within half of the integral one.
  std::size_t arg = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (y[i] > y[arg]) arg = i;
  if (y[arg] > greedy_profit) {
    Configuration single(m, 0);
    single[arg] = 1;
    return single;
  }
  return greedy;
}

Configuration singleton_knapsack(const DenseVec& y,
                                 const BinPackInstance& inst) {
  std::size_t m = inst.sizes.size();
  validate_dense(y, m, "knapsack profits");
  std::size_t arg = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (y[i] > y[arg]) arg = i;
  Configuration cfg(m, 0);
  // With no profitable type the empty configuration is the maximizer; a
  // forced copy would undercut the declared factor.
  if (y[arg] > 0.0) cfg[arg] = 1;
  return cfg;
}

KnapsackFn make_knapsack(KnapsackKind kind) {
  switch (kind) {
    case KnapsackKind::ExactBnB:
      return [](const DenseVec& y, const BinPackInstance& inst) {
        return exact_knapsack_bnb(y, inst);
      };
    case KnapsackKind::GreedyDensity:
      return [](const DenseVec& y, const BinPackInstance& inst) {
        return greedy_knapsack(y, inst);
      };
    case KnapsackKind::Singleton:
      return [](const DenseVec& y, const BinPackInstance& inst) {
        return singleton_knapsack(y, inst);
      };
  }
  throw domain_error("unknown knapsack kind");
}

CoveringOracleSuite config_lp_oracles(const BinPackInstance& inst,
                                      KnapsackKind kind) {
  validate_types(inst.sizes, inst.multiplicities);
  if (kind == KnapsackKind::ExactBnB && inst.item_count() > 40)
    throw domain_error("exact knapsack is capped at 40 items, instance has " +
                       std::to_string(inst.item_count()));

  std::size_t m = inst.sizes.size();
  auto as_config = [inst](const ColumnId& id) -> const Configuration& {
    const auto* counts = std::get_if<std::vector<int>>(&id.key);
    if (counts == nullptr)
      throw domain_error("column id " + to_string(id) +
                         " is not a configuration");
    if (!config_fits(inst, *counts))
      throw domain_error("column id " + to_string(id) +
                         " is not a feasible configuration");
    return *counts;
  };

  CoveringOracleSuite suite;
  suite.eta = knapsack_eta(kind, inst);
  suite.column = [m, as_config](const ColumnId& id) {
    const Configuration& cfg = as_config(id);
    DenseVec col(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) col[i] = cfg[i];
    return col;
  };
  suite.cost = [as_config](const ColumnId& id) {
    as_config(id);
    return 1.0;
  };
  suite.index_find = [inst, m, fn = make_knapsack(kind)](const DenseVec& y) {
    validate_dense(y, m, "dual weights");
    Configuration cfg = fn(y, inst);
    if (!config_fits(inst, cfg))
      throw oracle_contract_error(
          "knapsack oracle returned an infeasible configuration");
    bool empty = std::all_of(cfg.begin(), cfg.end(),
                             [](int c) { return c == 0; });
    bool profitable = std::any_of(y.begin(), y.end(),
                                  [](double v) { return v > 0.0; });
    if (empty && profitable)
      throw oracle_contract_error(
          "knapsack oracle returned the empty configuration although a "
          "profitable type exists");
    return ColumnId::config(std::move(cfg));
  };
  return suite;
}

BinPackBounds default_bounds(const BinPackInstance& inst) {
  double n = inst.item_count();
  return BinPackBounds{n, n};
}

CovLpResult solve_binpack_lp(const BinPackInstance& inst, KnapsackKind kind,
                             double eps, const BinPackSolveOptions& opts) {
  CoveringOracleSuite suite = config_lp_oracles(inst, kind);
  if (opts.declared_eta > 0.0) suite.eta = opts.declared_eta;

  BinPackBounds bounds = default_bounds(inst);
  SolveParams params;
  params.eps = eps;
  params.eta = suite.eta;
  params.q = bounds.q;
  params.rho = bounds.rho;
  params.feas_tol = opts.feas_tol;
  if (opts.max_oracle_calls > 0) params.max_oracle_calls = opts.max_oracle_calls;
  return cov_lp_solve(suite, inst.demand(), params);
}

}  // namespace covlp
