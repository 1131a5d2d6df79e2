#include "covlp/report.hpp"

#include <cstdio>

namespace covlp {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

ordered_json RunReport::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["instance_path"] = instance_path;
  j["instance_digest"] = instance_digest;
  j["oracle"] = oracle;
  j["eps"] = eps;
  j["eta"] = eta;
  j["feas_tol"] = feas_tol;
  j["q"] = q;
  j["rho"] = rho;
  j["objective"] = objective;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["support_size"] = support_size;
  j["point_find_calls"] = point_find_calls;
  j["product_calls"] = product_calls;
  j["index_find_calls"] = index_find_calls;
  j["cost_calls"] = cost_calls;
  j["column_calls"] = column_calls;
  j["improve_cover_invocations"] = improve_cover_invocations;
  j["binary_search_iterations"] = binary_search_iterations;
  j["probes"] = probes;
  j["max_point_find_calls_per_probe"] = max_point_find_calls_per_probe;
  j["call_bound_u"] = call_bound_u;
  j["iteration_bound_m"] = iteration_bound_m;
  j["bound_m_r_source"] = bound_m_r_source;
  j["within_call_bound"] = within_call_bound;
  j["within_iteration_bound"] = within_iteration_bound;
  j["wall_time_sec"] = wall_time_sec;
  return j;
}

}  // namespace covlp
