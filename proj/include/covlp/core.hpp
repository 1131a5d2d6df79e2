#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Core vocabulary for covering LPs given through oracles:
//
//   minimize c^T x   subject to  A x >= b,  x >= 0,
//
// where A >= 0, b > 0, c > 0 and the column set may be far too large to
// write down. The solver layers only ever touch A through the callback
// suites below.

namespace covlp {

using DenseVec = std::vector<double>;

// Bad input (dimensions, signs, caps). Maps to a usage error at the CLI.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A supplied oracle broke its contract at run time: malformed return value,
// or the solver exceeded an iteration budget that a conforming oracle could
// not have exhausted.
class oracle_contract_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Identifies one column of the implicit constraint matrix. Explicit
// instances use plain indices; bin packing uses the per-type count vector of
// a configuration. Comparison and hashing are structural, so the same column
// reached through different solver paths merges into one SparseVec entry.
struct ColumnId {
  std::variant<std::int64_t, std::vector<int>> key;

  static ColumnId index(std::int64_t j) { return ColumnId{j}; }
  static ColumnId config(std::vector<int> counts) { return ColumnId{std::move(counts)}; }
};

inline bool operator==(const ColumnId& a, const ColumnId& b) { return a.key == b.key; }
inline bool operator!=(const ColumnId& a, const ColumnId& b) { return !(a == b); }
inline bool operator<(const ColumnId& a, const ColumnId& b) { return a.key < b.key; }

std::uint64_t hash_value(const ColumnId& id);
std::string to_string(const ColumnId& id);

// Nonnegative sparse point over columns. Never stores a zero weight.
class SparseVec {
 public:
  using Map = std::map<ColumnId, double>;

  SparseVec() = default;

  // Accumulates w onto the entry (inserting if absent). An accumulation that
  // lands exactly on zero erases the entry; a negative result is rejected.
  void add(const ColumnId& id, double w);
  void erase(const ColumnId& id) { entries_.erase(id); }

  double at(const ColumnId& id) const;
  bool contains(const ColumnId& id) const { return entries_.count(id) != 0; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Multiplies every weight by s > 0.
  void scale(double s);

  const Map& entries() const { return entries_; }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Map entries_;
};

// Oracle access to a covering LP. All callbacks must be pure: same input,
// same answer, no observable side effects. index_find is eta-weak: for
// weights y >= 0 it returns k with
//
//   (1/cost(k)) y^T column(k)  >=  eta * max_j (1/cost(j)) y^T column(j).
struct CoveringOracleSuite {
  std::function<DenseVec(const ColumnId&)> column;
  std::function<double(const ColumnId&)> cost;
  std::function<ColumnId(const DenseVec&)> index_find;
  double eta = 1.0;
};

// Oracle access to a feasibility problem "find x in P with Ax >= b".
// point_find is eta-weak: y^T A point_find(y) >= eta * max_{x in P} y^T A x.
// tau bounds the support size of every point_find return.
struct FcovOracleSuite {
  std::function<DenseVec(const SparseVec&)> product;    // x -> Ax
  std::function<SparseVec(const DenseVec&)> point_find; // y -> x in P
  double eta = 1.0;
  std::size_t tau = 1;
};

struct SolveParams {
  double eps = 0.5;  // approximation parameter, in (0, 1]
  double eta = 1.0;  // declared oracle weakness, in (0, 1]
  double q = 0.0;    // upper bound on the optimum, q >= r*
  double rho = 0.0;  // width bound for P_q
  std::optional<std::uint64_t> max_oracle_calls;  // default 10 * bound_U
  double feas_tol = 1e-9;  // relative slack applied to >= comparisons

  void validate() const;
};

// Constants derived from (eps, eta); every solver layer uses this one
// mapping so the guarantee algebra below stays consistent:
//
//   eps_sigma = eps / (6 + 5 eps)           step-size safety margin
//   eps1 = eps3 = eps / 3                   condition slacks
//   eps2 = 1 - eta (1-eps_sigma)/(1+eps_sigma)
//   eps_prime = (eps1+eps2+eps3) / (1+eps1+eps3),  1-eps_prime = eta/(1+eps)
//   delta = eps^2 / (1+eps)                 binary-search gap target
struct DerivedParams {
  double eps_sigma;
  double eps1;
  double eps2;
  double eps3;
  double eps_prime;
  double delta;
};

DerivedParams derived_params(double eps, double eta);

// Smallest integer t >= 0 with 2^t * eta >= m. Exact: doubling a double is
// exact, so no log rounding is involved.
std::uint64_t ceil_lg_ratio(std::uint64_t m, double eta);

// Worst-case point-find calls of one feasibility solve:
//   U = m + ceil(lg(m/eta)) * ceil(312 m rho (1+eps) / (eta eps^3) * ln(12m/eps))
std::uint64_t bound_U(std::uint64_t m, double rho, double eps, double eta);

// Worst-case feasibility solves of the binary search (probes incl. the
// initial one at q):
//   M = 3 + 2 lg(1/eps + 1) + lg(1/eta) + lg(q/r_star)
double bound_M(double eps, double eta, double q, double r_star);

// Dense helpers used across the solver layers.
double dot(const DenseVec& a, const DenseVec& b);
void validate_dense(const DenseVec& v, std::size_t dim, const char* what);

}  // namespace covlp
