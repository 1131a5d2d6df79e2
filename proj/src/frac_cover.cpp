#include "covlp/frac_cover.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace covlp {

namespace {

constexpr double kGammaRenormFloor = 1e-150;

void validate_b(const DenseVec& b) {
  if (b.empty()) throw domain_error("frac_cover: b must be nonempty");
  for (double v : b)
    if (!(v > 0.0) || !std::isfinite(v)) throw domain_error("frac_cover: b must be strictly positive and finite");
}

void validate_product_return(const DenseVec& ax, std::size_t m) {
  if (ax.size() != m) throw oracle_contract_error("product oracle returned wrong dimension");
  for (double v : ax)
    if (!std::isfinite(v) || v < 0.0)
      throw oracle_contract_error("product oracle returned a negative or non-finite entry");
}

// bound_U evaluated in floating point without the exact-integer range check,
// for sizing the runtime call cap on instances whose bound overflows it.
double bound_u_approx(std::size_t m, double rho, double eps, double eta) {
  const double md = static_cast<double>(m);
  const double per_call =
      std::ceil(312.0 * md * rho * (1.0 + eps) / (eta * eps * eps * eps) * std::log(12.0 * md / eps));
  return md + static_cast<double>(ceil_lg_ratio(m, eta)) * per_call;
}

std::uint64_t default_call_cap(std::size_t m, double rho, double eps, double eta) {
  const double cap = 10.0 * bound_u_approx(m, rho, eps, eta);
  if (cap >= 9.2e18) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(cap);
}

}  // namespace

double lambda_of(const DenseVec& ax, const DenseVec& b) {
  if (ax.size() != b.size() || b.empty()) throw domain_error("lambda_of: dimension mismatch");
  double lam = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(b[i] > 0.0)) throw domain_error("lambda_of: b must be strictly positive");
    lam = std::min(lam, ax[i] / b[i]);
  }
  return lam;
}

DualWeights dual_weights(const DenseVec& ax, const DenseVec& b, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw domain_error("dual_weights: alpha must be nonnegative and finite");
  const double lam = lambda_of(ax, b);
  DualWeights w;
  w.log_scale = -alpha * lam;
  w.scaled.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    w.scaled[i] = std::exp(-alpha * (ax[i] / b[i] - lam)) / b[i];
  return w;
}

bool check_c1(double lambda, double yTb, double yTAx, double eps1) {
  return (1.0 + eps1) * lambda * yTb >= yTAx;
}

bool check_c2_surrogate(double yTAx, double yTAxt, double lambda, double yTb,
                        double eps2, double eps3, double eta) {
  return yTAx >= (1.0 - eps2) * yTAxt / eta - eps3 * lambda * yTb;
}

SparseVec FcovState::materialize() const {
  SparseVec out = x_base;
  out.scale(x_gamma);
  return out;
}

std::optional<FcovState> get_seed(const FcovOracleSuite& oracles, const DenseVec& b,
                                  const FracCoverOptions& opts, FcovStats& stats) {
  validate_b(b);
  const std::size_t m = b.size();
  FcovState st;
  st.ax.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    DenseVec e(m, 0.0);
    e[i] = 1.0;
    SparseVec xi = oracles.point_find(e);
    ++stats.point_find_calls;
    DenseVec axi = oracles.product(xi);
    ++stats.product_calls;
    validate_product_return(axi, m);
    // Even the oracle's best coverage of row i falls short of eta * b_i:
    // no point in P covers row i, so Ax >= b is unsatisfiable.
    if (axi[i] < oracles.eta * b[i] * (1.0 - opts.feas_tol)) return std::nullopt;
    for (const auto& [id, w] : xi.entries()) st.x_base.add(id, w / static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k) st.ax[k] += axi[k];
  }
  for (std::size_t k = 0; k < m; ++k) st.ax[k] /= static_cast<double>(m);
  st.x_gamma = 1.0;
  st.lambda = lambda_of(st.ax, b);
  st.lambda0 = st.lambda;
  return st;
}

ImproveCoverResult improve_cover(FcovState& state, const FcovOracleSuite& oracles,
                                 const DenseVec& b, double rho, const DerivedParams& params,
                                 double eta, const FracCoverOptions& opts, FcovStats& stats,
                                 std::uint64_t max_total_calls) {
  validate_b(b);
  const std::size_t m = b.size();
  if (state.ax.size() != m) throw domain_error("improve_cover: state/b dimension mismatch");
  if (!(state.lambda > 0.0)) throw domain_error("improve_cover: entry iterate must have positive coverage");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw domain_error("improve_cover: rho must be positive and finite");

  ++stats.improve_cover_invocations;
  const double md = static_cast<double>(m);
  const double lambda0 = state.lambda;
  const double alpha = 4.0 / (lambda0 * params.eps1) * std::log(4.0 * md / params.eps1);
  const double sigma = params.eps_sigma / (alpha * rho);
  state.lambda0 = lambda0;
  state.alpha = alpha;
  state.sigma = sigma;

  // No conforming oracle can keep the loop stepping past this budget: each
  // step shrinks the potential by a known factor while the potential is
  // sandwiched between exp(-alpha lambda) and m exp(-alpha lambda0).
  const double budget_d = std::ceil(4.0 * rho / (3.0 * params.eps_sigma * params.eps3 * lambda0) *
                                    (std::log(md) + 4.0 / params.eps1 * std::log(4.0 * md / params.eps1)));
  const std::uint64_t step_budget = budget_d < 9.2e18
                                        ? static_cast<std::uint64_t>(budget_d)
                                        : std::numeric_limits<std::uint64_t>::max();

  DenseVec y(m), row_exp(m);
  ImproveCoverResult res;
  const bool trace = static_cast<bool>(opts.on_iteration);
  for (;;) {
    const double lambda = state.lambda;
    state.potential_log_offset = -alpha * lambda;
    double yTb = 0.0, yTAx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = state.ax[i] / b[i] - lambda;  // >= 0, zero on the min row
      const double e = std::exp(-alpha * d);
      row_exp[i] = e;
      y[i] = e / b[i];
      yTb += e;
      yTAx += e * (d + lambda);
    }

    if (stats.point_find_calls >= max_total_calls)
      throw oracle_contract_error(
          "point-find call cap exceeded; the supplied oracle appears weaker than its declared eta");
    SparseVec xt = oracles.point_find(y);
    ++stats.point_find_calls;
    if (oracles.tau != 0 && xt.support_size() > oracles.tau)
      throw oracle_contract_error("point_find returned support larger than its declared tau");
    DenseVec axt = oracles.product(xt);
    ++stats.product_calls;
    validate_product_return(axt, m);
    const double yTAxt = dot(y, axt);

    const bool sat = check_c2_surrogate(yTAx, yTAxt, lambda, yTb, params.eps2, params.eps3, eta);

    IterationInfo info;
    if (trace) {
      info.lambda = lambda;
      info.lambda0 = lambda0;
      info.alpha = alpha;
      info.sigma = sigma;
      info.scaled_potential = yTb;
      info.yTb = yTb;
      info.yTAx = yTAx;
      info.yTAxt = yTAxt;
      info.c1 = check_c1(lambda, yTb, yTAx, params.eps1);
      info.c2_surrogate = sat;
    }

    if (sat || lambda > 2.0 * lambda0) {
      res.success = sat;
      if (trace) opts.on_iteration(info);
      if (opts.on_improve_cover_exit) opts.on_improve_cover_exit(state);
      return res;
    }

    if (res.steps >= step_budget)
      throw oracle_contract_error(
          "improve_cover exceeded its step budget; a point-find oracle is weaker than its declared eta");

    state.x_gamma *= (1.0 - sigma);
    const double coef = sigma / state.x_gamma;
    for (const auto& [id, w] : xt.entries()) state.x_base.add(id, coef * w);
    for (std::size_t i = 0; i < m; ++i) state.ax[i] = (1.0 - sigma) * state.ax[i] + sigma * axt[i];
    state.lambda = lambda_of(state.ax, b);
    if (state.x_gamma < kGammaRenormFloor) {
      state.x_base.scale(state.x_gamma);
      state.x_gamma = 1.0;
    }
    ++res.steps;

    if (trace) {
      // Post-step potential under the pre-step offset, so the drop is a pure
      // ratio unaffected by the factored-out exp(-alpha lambda).
      double post = 0.0;
      for (std::size_t i = 0; i < m; ++i) post += std::exp(-alpha * (state.ax[i] / b[i] - lambda));
      info.stepped = true;
      info.potential_drop = 1.0 - post / yTb;
      info.required_drop =
          alpha * sigma * lambda * params.eps3 * (1.0 - params.eps_sigma) * eta / (1.0 - params.eps2);
      opts.on_iteration(info);
    }
  }
}

FcovResult frac_cover(const FcovOracleSuite& oracles, const DenseVec& b, double rho,
                      double eps, double eta, const FracCoverOptions& opts) {
  validate_b(b);
  if (!(eps > 0.0) || eps > 1.0) throw domain_error("frac_cover: eps must lie in (0, 1]");
  if (!(eta > 0.0) || eta > 1.0) throw domain_error("frac_cover: eta must lie in (0, 1]");
  if (eta > oracles.eta) throw domain_error("frac_cover: eta exceeds the oracle suite's declared weakness");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw domain_error("frac_cover: rho must be nonnegative and finite");
  if (!oracles.point_find || !oracles.product) throw domain_error("frac_cover: oracle suite is incomplete");

  FcovResult result;
  // Width zero means Ax = 0 for every x in P; b > 0 is unreachable.
  if (rho == 0.0) return result;

  const DerivedParams params = derived_params(eps, eta);
  const std::size_t m = b.size();
  const std::uint64_t cap = opts.max_point_find_calls != 0
                                ? opts.max_point_find_calls
                                : default_call_cap(m, rho, eps, eta);

  auto seed = get_seed(oracles, b, opts, result.stats);
  if (!seed) return result;
  FcovState state = std::move(*seed);

  // Internal thresholds use half of feas_tol; the other half absorbs the
  // drift of the incrementally maintained Ax cache, so the returned solution
  // meets its contract within the full feas_tol even against a fresh
  // product-oracle evaluation.
  const double accept = 1.0 - 0.5 * opts.feas_tol;
  for (;;) {
    if (state.lambda >= accept) break;
    ImproveCoverResult run =
        improve_cover(state, oracles, b, rho, params, eta, opts, result.stats, cap);
    if (run.success) {
      if (state.lambda >= (1.0 - params.eps_prime) * accept) break;
      return result;  // certified: lambda* <= lambda/(1-eps_prime) < 1
    }
  }
  result.solution = FcovSolution{state.materialize(), state.ax, state.lambda};
  return result;
}

}  // namespace covlp
