#include "covlp/explicit_lp.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace covlp {

void ExplicitLp::validate() const {
  if (b.empty()) throw domain_error("LP has no rows");
  if (c.empty()) throw domain_error("LP has no columns");
  if (A.size() != b.size()) throw domain_error("A and b differ in row count");
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != c.size())
      throw domain_error("row " + std::to_string(i) +
                         " of A has the wrong length");
    bool all_zero = true;
    for (double a : A[i]) {
      if (!std::isfinite(a) || a < 0.0)
        throw domain_error("A entries must be finite and nonnegative");
      if (a != 0.0) all_zero = false;
    }
    if (all_zero)
      throw domain_error("row " + std::to_string(i) +
                         " of A is identically zero, so its covering "
                         "constraint cannot be met");
    if (!std::isfinite(b[i]) || b[i] <= 0.0)
      throw domain_error("b must be finite and strictly positive");
  }
  for (double v : c)
    if (!std::isfinite(v) || v <= 0.0)
      throw domain_error("c must be finite and strictly positive");
}

namespace {

std::size_t as_index(const ColumnId& id, std::size_t cols) {
  const auto* j = std::get_if<std::int64_t>(&id.key);
  if (j == nullptr)
    throw domain_error("column id " + to_string(id) + " is not an index");
  if (*j < 0 || static_cast<std::size_t>(*j) >= cols)
    throw domain_error("column index " + std::to_string(*j) +
                       " is out of range");
  return static_cast<std::size_t>(*j);
}

}  // namespace

CoveringOracleSuite explicit_oracles(const ExplicitLp& lp, double oracle_eta) {
  lp.validate();
  if (!std::isfinite(oracle_eta) || oracle_eta <= 0.0 || oracle_eta > 1.0)
    throw domain_error("oracle eta must lie in (0, 1]");

  std::size_t m = lp.rows();
  std::size_t n = lp.cols();

  CoveringOracleSuite suite;
  suite.eta = oracle_eta;
  suite.column = [lp, n](const ColumnId& id) {
    std::size_t j = as_index(id, n);
    DenseVec col(lp.rows());
    for (std::size_t i = 0; i < lp.rows(); ++i) col[i] = lp.A[i][j];
    return col;
  };
  suite.cost = [lp, n](const ColumnId& id) { return lp.c[as_index(id, n)]; };
  suite.index_find = [lp, m, n, oracle_eta](const DenseVec& y) {
    validate_dense(y, m, "dual weights");
    DenseVec density(n, 0.0);
    std::size_t best = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < m; ++i) d += y[i] * lp.A[i][j];
      density[j] = d / lp.c[j];
      if (density[j] > density[best]) best = j;
    }
    if (oracle_eta < 1.0) {
      // Adversarial mode: the least helpful column that still conforms.
      // The argmax itself clears the threshold, so a pick always exists.
      double threshold = oracle_eta * density[best];
      std::size_t pick = best;
      for (std::size_t j = 0; j < n; ++j)
        if (density[j] >= threshold && density[j] < density[pick]) pick = j;
      best = pick;
    }
    return ColumnId::index(static_cast<std::int64_t>(best));
  };
  return suite;
}

ExplicitBounds explicit_default_bounds(const ExplicitLp& lp) {
  lp.validate();
  double q = 0.0;
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    double cheapest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lp.cols(); ++j)
      if (lp.A[i][j] > 0.0)
        cheapest = std::min(cheapest, lp.c[j] * lp.b[i] / lp.A[i][j]);
    q += cheapest;  // finite: validation rejects all-zero rows
  }
  double ratio = 0.0;
  for (std::size_t i = 0; i < lp.rows(); ++i)
    for (std::size_t j = 0; j < lp.cols(); ++j)
      ratio = std::max(ratio, lp.A[i][j] / (lp.b[i] * lp.c[j]));
  return ExplicitBounds{q, q * ratio};
}

double explicit_rstar_lower_bound(const ExplicitLp& lp) {
  lp.validate();
  double bound = 0.0;
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    double cheapest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lp.cols(); ++j)
      if (lp.A[i][j] > 0.0)
        cheapest = std::min(cheapest, lp.c[j] / lp.A[i][j]);
    bound = std::max(bound, lp.b[i] * cheapest);
  }
  return bound;
}

}  // namespace covlp
