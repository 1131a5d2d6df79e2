#include "covlp/core.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

namespace covlp {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t hash_value(const ColumnId& id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  if (const auto* j = std::get_if<std::int64_t>(&id.key)) {
    unsigned char tag = 0;
    h = fnv1a(&tag, 1, h);
    h = fnv1a(j, sizeof(*j), h);
  } else {
    const auto& counts = std::get<std::vector<int>>(id.key);
    unsigned char tag = 1;
    h = fnv1a(&tag, 1, h);
    h = fnv1a(counts.data(), counts.size() * sizeof(int), h);
  }
  return h;
}

std::string to_string(const ColumnId& id) {
  if (const auto* j = std::get_if<std::int64_t>(&id.key)) return std::to_string(*j);
  const auto& counts = std::get<std::vector<int>>(id.key);
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) os << ',';
    os << counts[i];
  }
  os << ']';
  return os.str();
}

void SparseVec::add(const ColumnId& id, double w) {
  if (!std::isfinite(w)) throw domain_error("SparseVec::add: non-finite weight");
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    if (w == 0.0) return;
    if (w < 0.0) throw domain_error("SparseVec::add: negative weight");
    entries_.emplace(id, w);
    return;
  }
  double merged = it->second + w;
  if (merged == 0.0) {
    entries_.erase(it);
    return;
  }
  if (merged < 0.0) throw domain_error("SparseVec::add: weight went negative");
  it->second = merged;
}

double SparseVec::at(const ColumnId& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? 0.0 : it->second;
}

void SparseVec::scale(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw domain_error("SparseVec::scale: factor must be positive and finite");
  for (auto& [id, w] : entries_) w *= s;
}

void SolveParams::validate() const {
  if (!(eps > 0.0) || eps > 1.0) throw domain_error("SolveParams: eps must lie in (0, 1]");
  if (!(eta > 0.0) || eta > 1.0) throw domain_error("SolveParams: eta must lie in (0, 1]");
  if (!(q > 0.0) || !std::isfinite(q)) throw domain_error("SolveParams: q must be positive and finite");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw domain_error("SolveParams: rho must be nonnegative and finite");
  if (!(feas_tol >= 0.0) || feas_tol >= 1.0) throw domain_error("SolveParams: feas_tol must lie in [0, 1)");
}

DerivedParams derived_params(double eps, double eta) {
  if (!(eps > 0.0) || eps > 1.0) throw domain_error("derived_params: eps must lie in (0, 1]");
  if (!(eta > 0.0) || eta > 1.0) throw domain_error("derived_params: eta must lie in (0, 1]");
  DerivedParams d{};
  d.eps_sigma = eps / (6.0 + 5.0 * eps);
  d.eps1 = eps / 3.0;
  d.eps3 = eps / 3.0;
  d.eps2 = 1.0 - eta * (1.0 - d.eps_sigma) / (1.0 + d.eps_sigma);
  d.eps_prime = (d.eps1 + d.eps2 + d.eps3) / (1.0 + d.eps1 + d.eps3);
  d.delta = eps * eps / (1.0 + eps);
  return d;
}

std::uint64_t ceil_lg_ratio(std::uint64_t m, double eta) {
  if (m == 0) throw domain_error("ceil_lg_ratio: m must be positive");
  if (!(eta > 0.0) || eta > 1.0) throw domain_error("ceil_lg_ratio: eta must lie in (0, 1]");
  double v = eta;  // 2^t * eta, exact while v stays normal
  std::uint64_t t = 0;
  while (v < static_cast<double>(m)) {
    v *= 2.0;
    ++t;
  }
  return t;
}

std::uint64_t bound_U(std::uint64_t m, double rho, double eps, double eta) {
  if (m == 0) throw domain_error("bound_U: m must be positive");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw domain_error("bound_U: rho must be nonnegative and finite");
  if (!(eps > 0.0) || eps > 1.0) throw domain_error("bound_U: eps must lie in (0, 1]");
  if (!(eta > 0.0) || eta > 1.0) throw domain_error("bound_U: eta must lie in (0, 1]");
  const double md = static_cast<double>(m);
  const double per_call =
      std::ceil(312.0 * md * rho * (1.0 + eps) / (eta * eps * eps * eps) * std::log(12.0 * md / eps));
  const double calls = md + static_cast<double>(ceil_lg_ratio(m, eta)) * per_call;
  if (!(calls < 9.007199254740992e15)) /* 2^53 */
    throw domain_error("bound_U: value exceeds exact integer range of double");
  return static_cast<std::uint64_t>(calls);
}

double bound_M(double eps, double eta, double q, double r_star) {
  if (!(eps > 0.0) || eps > 1.0) throw domain_error("bound_M: eps must lie in (0, 1]");
  if (!(eta > 0.0) || eta > 1.0) throw domain_error("bound_M: eta must lie in (0, 1]");
  if (!(r_star > 0.0)) throw domain_error("bound_M: r_star must be positive");
  if (q < r_star) throw domain_error("bound_M: q must be at least r_star");
  return 3.0 + 2.0 * std::log2(1.0 / eps + 1.0) + std::log2(1.0 / eta) + std::log2(q / r_star);
}

double dot(const DenseVec& a, const DenseVec& b) {
  if (a.size() != b.size()) throw domain_error("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void validate_dense(const DenseVec& v, std::size_t dim, const char* what) {
  if (v.size() != dim) throw domain_error(std::string(what) + ": dimension mismatch");
  for (double x : v)
    if (!std::isfinite(x)) throw domain_error(std::string(what) + ": non-finite entry");
}

}  // namespace covlp
