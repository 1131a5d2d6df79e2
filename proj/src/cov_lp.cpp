#include "covlp/cov_lp.hpp"

#include <cmath>
#include <utility>

namespace covlp {

double width_bound_check(double q, double rho, double r) {
  if (!(q > 0.0) || !std::isfinite(q)) throw domain_error("width_bound_check: q must be positive and finite");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw domain_error("width_bound_check: rho must be nonnegative and finite");
  if (!(r >= 0.0) || r > q) throw domain_error("width_bound_check: r must lie in [0, q]");
  return rho;
}

std::function<SparseVec(const DenseVec&)> make_point_find(const CoveringOracleSuite& covering,
                                                          double r, CovLpStats* stats) {
  if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("make_point_find: r must be positive and finite");
  if (!covering.index_find || !covering.cost) throw domain_error("make_point_find: covering suite is incomplete");
  auto index_find = covering.index_find;
  auto cost = covering.cost;
  return [index_find, cost, r, stats](const DenseVec& y) {
    ColumnId k = index_find(y);
    if (stats) ++stats->index_find_calls;
    const double ck = cost(k);
    if (stats) ++stats->cost_calls;
    if (!(ck > 0.0) || !std::isfinite(ck))
      throw oracle_contract_error("cost oracle returned a nonpositive or non-finite value");
    SparseVec x;
    x.add(k, r / ck);
    return x;
  };
}

std::function<DenseVec(const SparseVec&)> make_product(const CoveringOracleSuite& covering,
                                                       std::size_t m, CovLpStats* stats) {
  if (!covering.column) throw domain_error("make_product: covering suite has no column oracle");
  auto column = covering.column;
  return [column, m, stats](const SparseVec& x) {
    DenseVec ax(m, 0.0);
    for (const auto& [id, w] : x.entries()) {
      DenseVec col = column(id);
      if (stats) ++stats->column_calls;
      if (col.size() != m) throw oracle_contract_error("column oracle returned wrong dimension");
      for (std::size_t i = 0; i < m; ++i) ax[i] += w * col[i];
    }
    return ax;
  };
}

FcovResult frac_cov_2(const CoveringOracleSuite& covering, const DenseVec& b, double r,
                      double rho, double eps, double eta, const FracCoverOptions& opts,
                      CovLpStats* stats) {
  if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("frac_cov_2: r must be positive and finite");
  FcovOracleSuite fs;
  fs.eta = covering.eta;
  fs.tau = 1;
  fs.point_find = make_point_find(covering, r, stats);
  fs.product = make_product(covering, b.size(), stats);
  FcovResult res = frac_cover(fs, b, rho, eps, eta, opts);
  if (stats) {
    stats->point_find_calls += res.stats.point_find_calls;
    stats->product_calls += res.stats.product_calls;
    stats->improve_cover_invocations += res.stats.improve_cover_invocations;
    ++stats->probes;
    stats->max_point_find_calls_per_probe =
        std::max(stats->max_point_find_calls_per_probe, res.stats.point_find_calls);
    stats->max_improve_cover_per_probe =
        std::max(stats->max_improve_cover_per_probe, res.stats.improve_cover_invocations);
  }
  return res;
}

CovLpResult cov_lp_solve(const CoveringOracleSuite& covering, const DenseVec& b,
                         const SolveParams& params) {
  params.validate();
  if (!covering.column || !covering.cost || !covering.index_find)
    throw domain_error("cov_lp_solve: covering suite is incomplete");
  const DerivedParams dp = derived_params(params.eps, params.eta);
  const double mu = params.eta / (1.0 + params.eps);

  FracCoverOptions fopts;
  fopts.feas_tol = params.feas_tol;
  fopts.max_point_find_calls = params.max_oracle_calls.value_or(0);

  CovLpResult out;

  width_bound_check(params.q, params.rho, params.q);
  FcovResult probe =
      frac_cov_2(covering, b, params.q, params.rho, params.eps, params.eta, fopts, &out.stats);
  if (!probe.solution)
    throw domain_error(
        "cov_lp_solve: the probe at q was unsatisfiable, so q is not a valid upper bound on the "
        "optimum (or an oracle is nonconforming)");
  FcovSolution best = std::move(*probe.solution);
  out.stats.result_probe_point_find_calls = probe.stats.point_find_calls;

  double alpha = 0.0;
  double beta = params.q;
  while (beta > (1.0 + dp.delta) * alpha) {
    ++out.stats.binary_search_iterations;
    const double r = 0.5 * (alpha + beta);
    width_bound_check(params.q, params.rho, r);
    probe = frac_cov_2(covering, b, r, params.rho, params.eps, params.eta, fopts, &out.stats);
    if (probe.solution) {
      beta = r;
      best = std::move(*probe.solution);
      out.stats.result_probe_point_find_calls = probe.stats.point_find_calls;
    } else {
      alpha = r;
    }
  }

  out.alpha = alpha;
  out.beta = beta;
  out.x_raw = best.x;
  out.x_feasible = std::move(best.x);
  out.x_feasible.scale(1.0 / mu);
  out.objective = beta / mu;
  return out;
}

}  // namespace covlp
