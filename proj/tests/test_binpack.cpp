#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <vector>

#include "covlp/binpack.hpp"
#include "covlp/reference.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace covlp;
using covlp_test::Rng;

namespace {

// Brute-force knapsack oracle: scan every feasible configuration.
double enum_max_profit(const DenseVec& y, const BinPackInstance& inst) {
  double best = 0.0;
  for (const Configuration& cfg : enumerate_configurations(inst))
    best = std::max(best, config_profit(y, cfg));
  return best;
}

Configuration enum_lex_max_argmax(const DenseVec& y,
                                  const BinPackInstance& inst) {
  Configuration best(inst.sizes.size(), 0);
  double best_profit = 0.0;
  for (const Configuration& cfg : enumerate_configurations(inst)) {
    // Zero- and negative-profit types never improve the profit, so the
    // canonical maximizer leaves them out; only configurations built from
    // strictly profitable types compete on ties.
    bool usable = true;
    for (std::size_t i = 0; i < cfg.size(); ++i)
      if (cfg[i] > 0 && y[i] <= 0.0) usable = false;
    if (!usable) continue;
    double p = config_profit(y, cfg);
    if (p > best_profit || (p == best_profit && cfg > best)) {
      best_profit = p;
      best = cfg;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("instances sort their types and reject duplicates") {
  BinPackInstance inst = BinPackInstance::from_types({0.6, 0.25}, {1, 3});
  CHECK(inst.sizes == std::vector<double>{0.25, 0.6});
  CHECK(inst.multiplicities == std::vector<int>{3, 1});
  CHECK(inst.item_count() == 4);
  CHECK(inst.demand() == DenseVec{3.0, 1.0});

  CHECK_THROWS_AS(BinPackInstance::from_types({0.5, 0.5}, {1, 1}),
                  domain_error);
  CHECK_THROWS_AS(BinPackInstance::from_types({0.5}, {0}), domain_error);
  CHECK_THROWS_AS(BinPackInstance::from_types({1.5}, {1}), domain_error);
  CHECK_THROWS_AS(BinPackInstance::from_types({}, {}), domain_error);
}

TEST_CASE("item lists group into types") {
  BinPackInstance inst =
      BinPackInstance::from_items({0.5, 0.25, 0.5, 0.5, 0.25});
  CHECK(inst.sizes == std::vector<double>{0.25, 0.5});
  CHECK(inst.multiplicities == std::vector<int>{2, 3});
}

TEST_CASE("configuration feasibility") {
  BinPackInstance inst = BinPackInstance::from_types({0.25, 0.5}, {3, 2});
  CHECK(config_fits(inst, {2, 1}));        // 0.5 + 0.5 = 1
  CHECK(config_fits(inst, {0, 2}));        // exactly full
  CHECK(config_fits(inst, {0, 0}));        // empty fits; callers exclude it
  CHECK_FALSE(config_fits(inst, {1, 2}));  // over capacity
  CHECK_FALSE(config_fits(inst, {4, 0}));  // over multiplicity
  CHECK_FALSE(config_fits(inst, {-1, 1}));
  CHECK_FALSE(config_fits(inst, {1}));  // wrong arity
}

TEST_CASE("max items per configuration") {
  CHECK(max_items_per_config(BinPackInstance::from_types({0.5}, {9})) == 2);
  CHECK(max_items_per_config(BinPackInstance::from_types({0.25, 0.9}, {1, 1})) == 4);
  CHECK(max_items_per_config(BinPackInstance::from_types({0.3}, {5})) == 3);
  CHECK(max_items_per_config(BinPackInstance::from_types({1.0}, {2})) == 1);
  // 1/3 is not exactly representable; the fit check must still see 3.
  CHECK(max_items_per_config(BinPackInstance::from_types({1.0 / 3.0}, {4})) == 3);
}

TEST_CASE("knapsack eta per oracle") {
  BinPackInstance inst = BinPackInstance::from_types({0.25, 0.8}, {2, 1});
  CHECK(knapsack_eta(KnapsackKind::ExactBnB, inst) == 1.0);
  CHECK(knapsack_eta(KnapsackKind::GreedyDensity, inst) == 0.5);
  CHECK(knapsack_eta(KnapsackKind::Singleton, inst) == 0.25);
}

TEST_CASE("exact knapsack ties break toward the lexicographically largest") {
  // Both singletons have profit 1 and the two items cannot share a bin; the
  // larger count at the first type wins.
  BinPackInstance inst = BinPackInstance::from_types({0.6, 0.5}, {1, 1});
  Configuration cfg = exact_knapsack_bnb({1.0, 1.0}, inst);
  CHECK(cfg == Configuration{1, 0});
}

TEST_CASE("exact knapsack ignores unprofitable types") {
  BinPackInstance inst = BinPackInstance::from_types({0.2, 0.3}, {4, 2});
  CHECK(exact_knapsack_bnb({-1.0, -2.0}, inst) == Configuration{0, 0});
  CHECK(exact_knapsack_bnb({0.0, 0.0}, inst) == Configuration{0, 0});
  CHECK(exact_knapsack_bnb({-1.0, 1.0}, inst) == Configuration{0, 2});
}

TEST_CASE("exact knapsack respects the item cap") {
  BinPackInstance big = BinPackInstance::from_types({0.5}, {41});
  CHECK_THROWS_AS(exact_knapsack_bnb({1.0}, big), domain_error);
  CHECK_THROWS_AS(config_lp_oracles(big, KnapsackKind::ExactBnB),
                  domain_error);
  // The other oracles have no such cap.
  CHECK_NOTHROW(config_lp_oracles(big, KnapsackKind::GreedyDensity));
}

TEST_CASE("exact knapsack equals brute force, including tie order") {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    BinPackInstance inst = covlp_test::random_binpack_loose(rng, 4, 3);
    // Integer profits make every comparison exact, so tie-breaking order is
    // well-defined and must match.
    DenseVec y =
        covlp_test::random_integer_profits(rng, inst.sizes.size(), -1, 5);
    Configuration got = exact_knapsack_bnb(y, inst);
    REQUIRE(config_fits(inst, got));
    CHECK(got == enum_lex_max_argmax(y, inst));
  }
}

TEST_CASE("exact knapsack maximizes real-valued profits") {
  Rng rng(271828);
  for (int trial = 0; trial < 100; ++trial) {
    BinPackInstance inst = covlp_test::random_binpack_loose(rng, 4, 3);
    DenseVec y = covlp_test::random_profits(rng, inst.sizes.size(), -0.2, 1.0);
    Configuration got = exact_knapsack_bnb(y, inst);
    REQUIRE(config_fits(inst, got));
    double best = enum_max_profit(y, inst);
    CHECK(config_profit(y, got) >= best * (1.0 - 1e-12) - 1e-15);
  }
}

TEST_CASE("greedy knapsack example with a density trap") {
  // Types sort to sizes (0.5, 0.6) with multiplicities (2, 1). Profits
  // (0.5, 0.61) put the 0.6 item first by density; after taking it nothing
  // else fits, so greedy scores 0.61 while two halves score 1.0.
  BinPackInstance inst = BinPackInstance::from_types({0.6, 0.5}, {1, 2});
  Configuration cfg = greedy_knapsack({0.5, 0.61}, inst);
  CHECK(cfg == Configuration{0, 1});
  CHECK(config_profit({0.5, 0.61}, cfg) == 0.61);
  // Exact picks the two halves.
  CHECK(exact_knapsack_bnb({0.5, 0.61}, inst) == Configuration{2, 0});
}

TEST_CASE("greedy knapsack prefers the single item when it wins") {
  // Density favors the small item, but the big one is worth more than
  // everything the greedy fill collects.
  BinPackInstance inst = BinPackInstance::from_types({0.15, 0.9}, {2, 1});
  Configuration cfg = greedy_knapsack({0.1, 0.5}, inst);
  CHECK(cfg == Configuration{0, 1});
}

TEST_CASE("weak knapsacks meet their declared factor") {
  Rng rng(161803);
  for (int trial = 0; trial < 200; ++trial) {
    BinPackInstance inst = covlp_test::random_binpack_loose(rng, 5, 4);
    DenseVec y = covlp_test::random_profits(rng, inst.sizes.size(), 0.0, 1.0);
    double best = enum_max_profit(y, inst);

    Configuration greedy = greedy_knapsack(y, inst);
    REQUIRE(config_fits(inst, greedy));
    CHECK(config_profit(y, greedy) >= 0.5 * best * (1.0 - 1e-9));

    Configuration single = singleton_knapsack(y, inst);
    REQUIRE(config_fits(inst, single));
    double eta = knapsack_eta(KnapsackKind::Singleton, inst);
    CHECK(config_profit(y, single) >= eta * best * (1.0 - 1e-9));
  }
}

TEST_CASE("singleton knapsack picks the largest profit, lowest index first") {
  BinPackInstance inst = BinPackInstance::from_types({0.2, 0.4, 0.6}, {1, 1, 1});
  CHECK(singleton_knapsack({1.0, 3.0, 2.0}, inst) == Configuration{0, 1, 0});
  CHECK(singleton_knapsack({2.0, 2.0, 1.0}, inst) == Configuration{1, 0, 0});
  // All profits nonpositive: the empty configuration is the true maximizer.
  CHECK(singleton_knapsack({-1.0, -1.0, -2.0}, inst) == Configuration{0, 0, 0});
  CHECK(singleton_knapsack({0.0, -1.0, 0.0}, inst) == Configuration{0, 0, 0});
}

TEST_CASE("configuration LP oracles validate and count consistently") {
  BinPackInstance inst = BinPackInstance::from_types({0.25, 0.5}, {3, 2});
  CoveringOracleSuite suite = config_lp_oracles(inst, KnapsackKind::ExactBnB);
  CHECK(suite.eta == 1.0);

  DenseVec y{0.3, 1.0};
  ColumnId id = suite.index_find(y);
  DenseVec col = suite.column(id);
  REQUIRE(col.size() == 2);
  CHECK(suite.cost(id) == 1.0);

  // D_id recomputed from column and cost agrees with the profit of the
  // returned configuration.
  const auto& cfg = std::get<std::vector<int>>(id.key);
  CHECK(dot(y, col) / suite.cost(id) ==
        doctest::Approx(config_profit(y, cfg)).epsilon(1e-14));

  CHECK_THROWS_AS(suite.column(ColumnId::index(0)), domain_error);
  CHECK_THROWS_AS(suite.column(ColumnId::config({9, 9})), domain_error);
  CHECK_THROWS_AS(suite.index_find(DenseVec{1.0}), domain_error);
}

TEST_CASE("default bounds are the item count") {
  BinPackInstance inst = BinPackInstance::from_types({0.25, 0.5}, {3, 2});
  BinPackBounds bounds = default_bounds(inst);
  CHECK(bounds.q == 5.0);
  CHECK(bounds.rho == 5.0);
}

TEST_CASE("end-to-end solve on a tiny instance") {
  BinPackInstance inst = BinPackInstance::from_types({0.5}, {2});
  CovLpResult res = solve_binpack_lp(inst, KnapsackKind::ExactBnB, 0.5);
  // r* = 1; the guarantee at eps = 0.5, eta = 1 is a factor 1.75.
  CHECK(res.objective >= 1.0 - 1e-9);
  CHECK(res.objective <= 1.75 * (1.0 + 1e-9));
  CHECK(res.beta <= res.objective);
  CHECK(res.stats.probes >= 1);
}

TEST_CASE("solver obeys every weak oracle's guarantee on random instances") {
  Rng rng(5551212);
  for (int trial = 0; trial < 8; ++trial) {
    BinPackInstance inst = covlp_test::random_binpack(rng);
    double rstar = to_double(binpack_reference_optimum(inst).lp.objective);
    for (KnapsackKind kind : {KnapsackKind::ExactBnB,
                              KnapsackKind::GreedyDensity,
                              KnapsackKind::Singleton}) {
      double eps = 0.5;
      CovLpResult res = solve_binpack_lp(inst, kind, eps);
      double eta = knapsack_eta(kind, inst);
      double factor = (1.0 + eps + eps * eps) / eta;
      CAPTURE(trial);
      CAPTURE(static_cast<int>(kind));
      CHECK(res.objective >= rstar * (1.0 - 1e-8));
      CHECK(res.objective <= factor * rstar * (1.0 + 1e-8));
    }
  }
}
