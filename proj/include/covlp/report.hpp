#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

namespace covlp {

using ordered_json = nlohmann::ordered_json;

// FNV-1a over raw bytes, as 16 lowercase hex digits. Used to fingerprint
// instance files in reports.
std::string fnv1a64_hex(std::string_view bytes);

// Everything one solve run reports. Serialization keeps insertion order so
// byte-identical reruns produce byte-identical reports; wall_time_sec is the
// one field comparisons must ignore.
struct RunReport {
  std::string command;
  std::string instance_path;
  std::string instance_digest;
  std::string oracle;

  double eps = 0.0;
  double eta = 0.0;
  double feas_tol = 0.0;
  double q = 0.0;
  double rho = 0.0;

  double objective = 0.0;  // feasible-cover cost, beta divided by mu
  double alpha = 0.0;      // final bracket: alpha unsatisfiable (or 0),
  double beta = 0.0;       // beta satisfiable
  std::size_t support_size = 0;

  std::uint64_t point_find_calls = 0;
  std::uint64_t product_calls = 0;
  std::uint64_t index_find_calls = 0;
  std::uint64_t cost_calls = 0;
  std::uint64_t column_calls = 0;
  std::uint64_t improve_cover_invocations = 0;
  std::uint64_t binary_search_iterations = 0;
  std::uint64_t probes = 0;
  std::uint64_t max_point_find_calls_per_probe = 0;

  double call_bound_u = 0.0;       // per-probe point_find bound
  double iteration_bound_m = 0.0;  // binary-search iteration bound
  std::string bound_m_r_source;    // "exact" or "lower-bound"
  bool within_call_bound = false;
  bool within_iteration_bound = false;

  double wall_time_sec = 0.0;

  ordered_json to_json() const;
};

}  // namespace covlp
