#include "covlp/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace covlp {

Rational rational_from_double(double v) {
  if (!std::isfinite(v))
    throw domain_error("cannot convert a non-finite value to a rational");
  return Rational(v);
}

RationalVec rational_vec(const DenseVec& v) {
  RationalVec out;
  out.reserve(v.size());
  for (double x : v) out.push_back(rational_from_double(x));
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

void ExplicitRationalLp::validate() const {
  if (b.empty()) throw domain_error("LP has no rows");
  if (c.empty()) throw domain_error("LP has no columns");
  if (A.size() != b.size()) throw domain_error("A and b differ in row count");
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != c.size())
      throw domain_error("row " + std::to_string(i) +
                         " of A has the wrong length");
    bool all_zero = true;
    for (const Rational& a : A[i]) {
      if (a < 0)
        throw domain_error("A has a negative entry in row " +
                           std::to_string(i));
      if (a != 0) all_zero = false;
    }
    if (all_zero)
      throw domain_error("row " + std::to_string(i) +
                         " of A is identically zero, so its covering "
                         "constraint cannot be met");
    if (b[i] <= 0) throw domain_error("b must be strictly positive");
  }
  for (const Rational& v : c)
    if (v <= 0) throw domain_error("c must be strictly positive");
}

ExplicitRationalLp ExplicitRationalLp::from_double(
    const std::vector<DenseVec>& A, const DenseVec& b, const DenseVec& c) {
  ExplicitRationalLp lp;
  lp.A.reserve(A.size());
  for (const DenseVec& row : A) lp.A.push_back(rational_vec(row));
  lp.b = rational_vec(b);
  lp.c = rational_vec(c);
  lp.validate();
  return lp;
}

namespace {

constexpr std::size_t kNoCol = static_cast<std::size_t>(-1);
constexpr std::uint64_t kPivotCap = 10000000;

// min cost^T z subject to E z = f, z >= 0, with f >= 0 componentwise.
struct StandardForm {
  RationalMatrix E;
  RationalVec f;
  RationalVec cost;
};

struct Tableau {
  RationalMatrix T;                // B^{-1} E
  RationalVec rhs;                 // B^{-1} f, stays >= 0
  std::vector<std::size_t> basis;  // basis[i] = column basic in row i
};

void pivot(Tableau& tab, std::size_t row, std::size_t col) {
  RationalVec& pr = tab.T[row];
  Rational p = pr[col];
  for (Rational& v : pr) v /= p;
  tab.rhs[row] /= p;
  for (std::size_t i = 0; i < tab.T.size(); ++i) {
    if (i == row) continue;
    Rational factor = tab.T[i][col];
    if (factor == 0) continue;
    RationalVec& ri = tab.T[i];
    for (std::size_t j = 0; j < ri.size(); ++j)
      if (pr[j] != 0) ri[j] -= factor * pr[j];
    tab.rhs[i] -= factor * tab.rhs[row];
  }
  tab.basis[row] = col;
}

// Primal simplex with Bland's rule over columns [0, limit): entering column
// is the lowest index with negative reduced cost, leaving row breaks ratio
// ties toward the lowest basic index. Exact arithmetic, so termination is
// guaranteed and "optimal" means optimal.
void run_simplex(Tableau& tab, const RationalVec& cost, std::size_t limit,
                 std::uint64_t& pivots) {
  std::size_t m = tab.T.size();
  RationalVec u(m);
  for (;;) {
    for (std::size_t i = 0; i < m; ++i) u[i] = cost[tab.basis[i]];

    std::size_t enter = kNoCol;
    for (std::size_t j = 0; j < limit && enter == kNoCol; ++j) {
      Rational r = cost[j];
      for (std::size_t i = 0; i < m; ++i)
        if (u[i] != 0 && tab.T[i][j] != 0) r -= u[i] * tab.T[i][j];
      if (r < 0) enter = j;
    }
    if (enter == kNoCol) return;

    std::size_t leave = kNoCol;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& t = tab.T[i][enter];
      if (t <= 0) continue;
      Rational ratio = tab.rhs[i] / t;
      if (leave == kNoCol || ratio < best_ratio ||
          (ratio == best_ratio && tab.basis[i] < tab.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == kNoCol)
      throw std::logic_error(
          "simplex: unbounded objective on a program that is bounded by "
          "construction");
    pivot(tab, leave, enter);
    if (++pivots > kPivotCap)
      throw std::logic_error("simplex: pivot cap exceeded");
  }
}

struct StandardSolution {
  RationalVec z;
  Rational objective;
  std::vector<std::size_t> basis;
};

// Two-phase simplex. Both programs assembled in this file are feasible and
// have full row rank by construction, so an infeasible phase 1 or an
// undrivable artificial signals a bug, not bad input.
StandardSolution solve_standard(const StandardForm& sf) {
  std::size_t m = sf.f.size();
  std::size_t n = sf.cost.size();

  Tableau tab;
  tab.T.assign(m, RationalVec(n + m, Rational(0)));
  tab.rhs = sf.f;
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.T[i][j] = sf.E[i][j];
    tab.T[i][n + i] = 1;
    tab.basis[i] = n + i;
  }
  RationalVec cost1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) cost1[n + i] = 1;

  std::uint64_t pivots = 0;
  run_simplex(tab, cost1, n + m, pivots);

  Rational art = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= n) art += tab.rhs[i];
  if (art != 0)
    throw std::logic_error(
        "simplex: phase 1 ended infeasible on a program that is feasible by "
        "construction");

  // Any artificial still basic sits at level zero; pivot it out on some
  // original column of its row. Pivoting on a zero-level row keeps rhs >= 0
  // whatever the pivot's sign.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    std::size_t col = kNoCol;
    for (std::size_t j = 0; j < n && col == kNoCol; ++j)
      if (tab.T[i][j] != 0) col = j;
    if (col == kNoCol)
      throw std::logic_error(
          "simplex: redundant row, the adapters should give full row rank");
    pivot(tab, i, col);
  }

  for (std::size_t i = 0; i < m; ++i) tab.T[i].resize(n);
  run_simplex(tab, sf.cost, n, pivots);

  StandardSolution out;
  out.z.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) out.z[tab.basis[i]] = tab.rhs[i];
  out.objective = 0;
  for (std::size_t i = 0; i < m; ++i)
    out.objective += sf.cost[tab.basis[i]] * tab.rhs[i];
  out.basis = tab.basis;
  return out;
}

// Solves B^T y = cost_B for the basis columns B of E by exact Gaussian
// elimination. At a phase-2 optimum these y are the optimal duals.
RationalVec basis_duals(const StandardForm& sf,
                        const std::vector<std::size_t>& basis) {
  std::size_t m = basis.size();
  RationalMatrix M(m, RationalVec(m + 1, Rational(0)));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) M[k][i] = sf.E[i][basis[k]];
    M[k][m] = sf.cost[basis[k]];
  }

  std::vector<std::size_t> pivot_row(m, kNoCol);
  std::size_t row = 0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t p = kNoCol;
    for (std::size_t r = row; r < m && p == kNoCol; ++r)
      if (M[r][col] != 0) p = r;
    if (p == kNoCol)
      throw std::logic_error("simplex: singular basis while extracting duals");
    std::swap(M[p], M[row]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || M[r][col] == 0) continue;
      Rational factor = M[r][col] / M[row][col];
      for (std::size_t j = col; j <= m; ++j) M[r][j] -= factor * M[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }

  RationalVec y(m);
  for (std::size_t col = 0; col < m; ++col)
    y[col] = M[pivot_row[col]][m] / M[pivot_row[col]][col];
  return y;
}

void check_reference_caps(std::size_t rows, std::size_t cols) {
  if (rows > kReferenceMaxRows)
    throw domain_error("reference solver is capped at " +
                       std::to_string(kReferenceMaxRows) + " rows, got " +
                       std::to_string(rows));
  if (cols > kReferenceMaxCols)
    throw domain_error("reference solver is capped at " +
                       std::to_string(kReferenceMaxCols) + " columns, got " +
                       std::to_string(cols));
}

ExplicitRationalLp configuration_lp_from(
    const BinPackInstance& inst, const std::vector<Configuration>& configs) {
  std::size_t m = inst.sizes.size();
  std::size_t n = configs.size();
  ExplicitRationalLp lp;
  lp.A.assign(m, RationalVec(n, Rational(0)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < m; ++i) lp.A[i][k] = configs[k][i];
  lp.b.reserve(m);
  for (int mult : inst.multiplicities) lp.b.push_back(mult);
  lp.c.assign(n, Rational(1));
  lp.validate();
  return lp;
}

}  // namespace

ExactLpSolution exact_lp_solve(const ExplicitRationalLp& lp) {
  lp.validate();
  std::size_t m = lp.rows();
  std::size_t n = lp.cols();
  check_reference_caps(m, n);

  // min c^T x subject to A x - s = b, (x, s) >= 0.
  StandardForm sf;
  sf.E.assign(m, RationalVec(n + m, Rational(0)));
  sf.f = lp.b;
  sf.cost.assign(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) sf.E[i][j] = lp.A[i][j];
    sf.E[i][n + i] = -1;
  }
  for (std::size_t j = 0; j < n; ++j) sf.cost[j] = lp.c[j];

  StandardSolution sol = solve_standard(sf);

  ExactLpSolution out;
  out.x.assign(sol.z.begin(), sol.z.begin() + n);
  out.objective = sol.objective;
  // The duals of the equality form satisfy A^T y <= c (x columns) and y >= 0
  // (slack columns) at the optimum; these are the covering LP duals.
  out.y = basis_duals(sf, sol.basis);

  // Verify the certificate exactly before handing it out.
  Rational primal = 0;
  for (std::size_t j = 0; j < n; ++j) primal += lp.c[j] * out.x[j];
  Rational dual = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Rational ax = 0;
    for (std::size_t j = 0; j < n; ++j) ax += lp.A[i][j] * out.x[j];
    if (ax < lp.b[i])
      throw std::logic_error("reference optimum violates A x >= b");
    if (out.y[i] < 0)
      throw std::logic_error("reference duals are not nonnegative");
    dual += lp.b[i] * out.y[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational aty = 0;
    for (std::size_t i = 0; i < m; ++i) aty += lp.A[i][j] * out.y[i];
    if (aty > lp.c[j])
      throw std::logic_error("reference duals violate A^T y <= c");
  }
  if (primal != out.objective || dual != out.objective)
    throw std::logic_error("reference primal and dual objectives disagree");
  return out;
}

Rational exact_lambda_star(const ExplicitRationalLp& lp, const Rational& r) {
  lp.validate();
  if (r <= 0) throw domain_error("exact_lambda_star requires r > 0");
  std::size_t m = lp.rows();
  std::size_t n = lp.cols();
  check_reference_caps(m, n);

  // max lambda subject to A x - lambda b - t = 0, c^T x = r,
  // (x, lambda, t) >= 0. Feasible for every r > 0 (x on the cost-r simplex,
  // lambda = 0) and bounded because c^T x = r pins x.
  std::size_t cols = n + 1 + m;
  StandardForm sf;
  sf.E.assign(m + 1, RationalVec(cols, Rational(0)));
  sf.f.assign(m + 1, Rational(0));
  sf.cost.assign(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) sf.E[i][j] = lp.A[i][j];
    sf.E[i][n] = -lp.b[i];
    sf.E[i][n + 1 + i] = -1;
  }
  for (std::size_t j = 0; j < n; ++j) sf.E[m][j] = lp.c[j];
  sf.f[m] = r;
  sf.cost[n] = -1;

  StandardSolution sol = solve_standard(sf);
  return sol.z[n];
}

std::vector<Configuration> enumerate_configurations(
    const BinPackInstance& inst) {
  std::size_t m = inst.sizes.size();
  std::vector<Configuration> out;
  Configuration current(m, 0);
  // Ascending counts at each level gives ascending lexicographic output.
  // Capacity accumulates exactly like config_fits, so membership agrees.
  auto dfs = [&](auto&& self, std::size_t t, double used) -> void {
    if (t == m) {
      if (std::any_of(current.begin(), current.end(),
                      [](int c) { return c > 0; })) {
        if (out.size() >= kMaxEnumeratedConfigs)
          throw domain_error("configuration enumeration exceeded " +
                             std::to_string(kMaxEnumeratedConfigs) +
                             " configurations");
        out.push_back(current);
      }
      return;
    }
    for (int c = 0; c <= inst.multiplicities[t]; ++c) {
      double next = used + c * inst.sizes[t];
      if (c > 0 && next > 1.0 + kConfigFitTol) break;
      current[t] = c;
      self(self, t + 1, next);
    }
    current[t] = 0;
  };
  dfs(dfs, 0, 0.0);
  return out;
}

ExplicitRationalLp configuration_lp(const BinPackInstance& inst) {
  return configuration_lp_from(inst, enumerate_configurations(inst));
}

BinPackReference binpack_reference_optimum(const BinPackInstance& inst) {
  BinPackReference ref;
  ref.configs = enumerate_configurations(inst);
  ref.lp = exact_lp_solve(configuration_lp_from(inst, ref.configs));
  return ref;
}

}  // namespace covlp
