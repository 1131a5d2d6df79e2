#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "covlp/binpack.hpp"
#include "covlp/cov_lp.hpp"
#include "covlp/explicit_lp.hpp"
#include "covlp/reference.hpp"
#include "covlp/report.hpp"
#include "json.hpp"

namespace {

using covlp::BinPackInstance;
using covlp::BinPackSolveOptions;
using covlp::CovLpResult;
using covlp::DenseVec;
using covlp::ExplicitLp;
using covlp::KnapsackKind;
using covlp::RunReport;
using covlp::domain_error;

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerifyFail = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// Numeric JSON fields accept either a number or a decimal string like "0.3",
// so instances can spell values without a detour through JSON float parsing.
double json_number(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(s, &used);
    } catch (const std::exception&) {
      throw domain_error(what + ": cannot parse \"" + s + "\" as a number");
    }
    if (used != s.size())
      throw domain_error(what + ": cannot parse \"" + s + "\" as a number");
    return parsed;
  }
  throw domain_error(what + " must be a number or a numeric string");
}

DenseVec json_vector(const json& v, const std::string& what) {
  if (!v.is_array()) throw domain_error(what + " must be an array");
  DenseVec out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(json_number(e, what + " entry"));
  return out;
}

int json_count(const json& v, const std::string& what) {
  double d = json_number(v, what);
  if (!(std::floor(d) == d) || d < 1.0 || d > 2147483647.0)
    throw domain_error(what + " must be a positive integer");
  return static_cast<int>(d);
}

enum class InstanceKind { Explicit, BinPack };

InstanceKind detect_kind(const json& j) {
  if (!j.is_object()) throw domain_error("input JSON must be an object");
  if (j.contains("A")) return InstanceKind::Explicit;
  if (j.contains("sizes") || j.contains("items")) return InstanceKind::BinPack;
  throw domain_error(
      "input JSON is neither an explicit LP (key \"A\") nor a bin packing "
      "instance (key \"sizes\" or \"items\")");
}

ExplicitLp parse_explicit(const json& j) {
  for (const char* key : {"A", "b", "c"})
    if (!j.contains(key))
      throw domain_error(std::string("explicit LP is missing key \"") + key +
                         "\"");
  if (!j["A"].is_array()) throw domain_error("\"A\" must be an array of rows");
  ExplicitLp lp;
  for (const json& row : j["A"]) lp.A.push_back(json_vector(row, "row of A"));
  lp.b = json_vector(j["b"], "b");
  lp.c = json_vector(j["c"], "c");
  lp.validate();
  return lp;
}

BinPackInstance parse_binpack(const json& j) {
  if (j.contains("sizes")) {
    if (!j.contains("multiplicities"))
      throw domain_error(
          "bin packing instance with \"sizes\" needs \"multiplicities\"");
    std::vector<double> sizes = json_vector(j["sizes"], "sizes");
    if (!j["multiplicities"].is_array())
      throw domain_error("\"multiplicities\" must be an array");
    std::vector<int> mults;
    for (const json& e : j["multiplicities"])
      mults.push_back(json_count(e, "multiplicity"));
    return BinPackInstance::from_types(std::move(sizes), std::move(mults));
  }
  return BinPackInstance::from_items(json_vector(j["items"], "items"));
}

double parse_eta_mode(const std::string& mode) {
  if (mode == "exact") return 1.0;
  if (mode.rfind("degrade:", 0) == 0) {
    double eta = 0.0;
    try {
      eta = std::stod(mode.substr(8));
    } catch (const std::exception&) {
      throw domain_error("--eta-mode: cannot parse the eta in \"" + mode +
                         "\"");
    }
    if (!std::isfinite(eta) || eta <= 0.0 || eta > 1.0)
      throw domain_error("--eta-mode: eta must lie in (0, 1]");
    return eta;
  }
  throw domain_error("--eta-mode must be \"exact\" or \"degrade:<eta>\"");
}

KnapsackKind parse_oracle(const std::string& oracle) {
  if (oracle == "exact") return KnapsackKind::ExactBnB;
  if (oracle == "greedy") return KnapsackKind::GreedyDensity;
  if (oracle == "singleton") return KnapsackKind::Singleton;
  throw domain_error(
      "--oracle must be \"exact\", \"greedy\" or \"singleton\"");
}

struct SolveArgs {
  std::string input;
  double eps = 0.5;
  std::string eta_mode = "exact";  // explicit LPs
  std::string oracle = "exact";    // bin packing
  double declared_eta = 0.0;       // overrides the truthful eta when > 0
  double feas_tol = 1e-9;
  std::uint64_t max_calls = 0;  // 0 = automatic cap
  std::string out;
};

void add_common_options(CLI::App* cmd, SolveArgs* args) {
  cmd->add_option("--input", args->input, "instance JSON file")->required();
  cmd->add_option("--eps", args->eps, "approximation parameter in (0, 1]");
  cmd->add_option("--feas-tol", args->feas_tol,
                  "relative feasibility tolerance");
  cmd->add_option("--max-calls", args->max_calls,
                  "hard cap on point-find calls per probe (0 = automatic)");
  cmd->add_option("--declared-eta", args->declared_eta,
                  "override the eta declared to the solver (testing aid)");
}

// One solved instance, enough to fill a report, a verify verdict or a bench
// row regardless of instance kind.
struct SolvedInstance {
  CovLpResult result;
  double eta = 0.0;  // eta the solver was told
  double q = 0.0;
  double rho = 0.0;
  std::size_t rows = 0;
  double rstar_lower = 0.0;  // instance-derived lower bound on the optimum
  std::string oracle_label;
};

SolvedInstance solve_explicit(const ExplicitLp& lp, const SolveArgs& args) {
  SolvedInstance run;
  double oracle_eta = parse_eta_mode(args.eta_mode);
  covlp::CoveringOracleSuite suite = covlp::explicit_oracles(lp, oracle_eta);
  if (args.declared_eta > 0.0) suite.eta = args.declared_eta;

  covlp::ExplicitBounds bounds = covlp::explicit_default_bounds(lp);
  covlp::SolveParams params;
  params.eps = args.eps;
  params.eta = suite.eta;
  params.q = bounds.q;
  params.rho = bounds.rho;
  params.feas_tol = args.feas_tol;
  if (args.max_calls > 0) params.max_oracle_calls = args.max_calls;

  run.result = covlp::cov_lp_solve(suite, lp.b, params);
  run.eta = suite.eta;
  run.q = bounds.q;
  run.rho = bounds.rho;
  run.rows = lp.rows();
  run.rstar_lower = covlp::explicit_rstar_lower_bound(lp);
  run.oracle_label = args.eta_mode;
  return run;
}

SolvedInstance solve_binpack(const BinPackInstance& inst,
                             const SolveArgs& args) {
  SolvedInstance run;
  KnapsackKind kind = parse_oracle(args.oracle);
  BinPackSolveOptions opts;
  opts.feas_tol = args.feas_tol;
  opts.max_oracle_calls = args.max_calls;
  opts.declared_eta = args.declared_eta;

  run.result = covlp::solve_binpack_lp(inst, kind, args.eps, opts);
  run.eta = opts.declared_eta > 0.0 ? opts.declared_eta
                                    : covlp::knapsack_eta(kind, inst);
  covlp::BinPackBounds bounds = covlp::default_bounds(inst);
  run.q = bounds.q;
  run.rho = bounds.rho;
  run.rows = inst.sizes.size();
  // Covering any type takes at least one bin because a configuration cannot
  // hold more than multiplicities[i] copies.
  run.rstar_lower = 1.0;
  run.oracle_label = args.oracle;
  return run;
}

double call_bound_or_inf(std::size_t rows, double rho, double eps,
                         double eta) {
  try {
    return static_cast<double>(covlp::bound_U(rows, rho, eps, eta));
  } catch (const domain_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

RunReport build_report(const std::string& command, const std::string& path,
                       const std::string& bytes, const SolveArgs& args,
                       const SolvedInstance& run, double wall_time_sec) {
  RunReport rep;
  rep.command = command;
  rep.instance_path = path;
  rep.instance_digest = covlp::fnv1a64_hex(bytes);
  rep.oracle = run.oracle_label;
  rep.eps = args.eps;
  rep.eta = run.eta;
  rep.feas_tol = args.feas_tol;
  rep.q = run.q;
  rep.rho = run.rho;
  rep.objective = run.result.objective;
  rep.alpha = run.result.alpha;
  rep.beta = run.result.beta;
  rep.support_size = run.result.x_raw.support_size();

  const covlp::CovLpStats& st = run.result.stats;
  rep.point_find_calls = st.point_find_calls;
  rep.product_calls = st.product_calls;
  rep.index_find_calls = st.index_find_calls;
  rep.cost_calls = st.cost_calls;
  rep.column_calls = st.column_calls;
  rep.improve_cover_invocations = st.improve_cover_invocations;
  rep.binary_search_iterations = st.binary_search_iterations;
  rep.probes = st.probes;
  rep.max_point_find_calls_per_probe = st.max_point_find_calls_per_probe;

  rep.call_bound_u = call_bound_or_inf(run.rows, run.rho, args.eps, run.eta);
  rep.within_call_bound = st.max_point_find_calls_per_probe <= rep.call_bound_u;
  // Without the reference optimum only a lower bound on r* is available; it
  // makes the probe bound larger, never smaller.
  rep.iteration_bound_m =
      covlp::bound_M(args.eps, run.eta, run.q, run.rstar_lower);
  rep.bound_m_r_source = "lower-bound";
  rep.within_iteration_bound = st.probes <= rep.iteration_bound_m;
  rep.wall_time_sec = wall_time_sec;
  return rep;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw domain_error("cannot open output file: " + out_path);
  out << text;
}

int run_solve(const std::string& command, const SolveArgs& args,
              InstanceKind expect) {
  std::string bytes = read_file(args.input);
  json parsed;
  try {
    parsed = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw domain_error("cannot parse " + args.input + ": " + e.what());
  }
  InstanceKind kind = detect_kind(parsed);
  if (kind != expect) {
    throw domain_error(
        kind == InstanceKind::BinPack
            ? "input is a bin packing instance; use binpack-solve"
            : "input is an explicit LP; use covlp-solve");
  }

  auto t0 = std::chrono::steady_clock::now();
  SolvedInstance run = kind == InstanceKind::Explicit
                           ? solve_explicit(parse_explicit(parsed), args)
                           : solve_binpack(parse_binpack(parsed), args);
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

  RunReport rep =
      build_report(command, args.input, bytes, args, run, elapsed.count());
  emit(rep.to_json().dump(2) + "\n", args.out);
  return kExitOk;
}

// The guarantee the run claims, judged against the exact optimum computed by
// the rational reference solver.
int run_verify(const SolveArgs& args) {
  std::string bytes = read_file(args.input);
  json parsed;
  try {
    parsed = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw domain_error("cannot parse " + args.input + ": " + e.what());
  }
  InstanceKind kind = detect_kind(parsed);

  SolvedInstance run;
  covlp::Rational rstar_exact;
  try {
    if (kind == InstanceKind::Explicit) {
      ExplicitLp lp = parse_explicit(parsed);
      run = solve_explicit(lp, args);
      rstar_exact =
          covlp::exact_lp_solve(
              covlp::ExplicitRationalLp::from_double(lp.A, lp.b, lp.c))
              .objective;
    } else {
      BinPackInstance inst = parse_binpack(parsed);
      run = solve_binpack(inst, args);
      rstar_exact = covlp::binpack_reference_optimum(inst).lp.objective;
    }
  } catch (const covlp::oracle_contract_error& e) {
    // A tripped contract check is a detected violation, which is this
    // command's FAIL verdict, not an input error.
    std::cout << "oracle contract violation: " << e.what() << "\n";
    std::cout << "FAIL\n";
    return kExitVerifyFail;
  }

  double rstar = covlp::to_double(rstar_exact);
  double factor = (1.0 + args.eps + args.eps * args.eps) / run.eta;
  // Hairline slack so exact-boundary cases do not flip on the last ulp.
  bool above = run.result.objective >= rstar * (1.0 - 1e-8);
  bool below = run.result.objective <= factor * rstar * (1.0 + 1e-8);

  std::cout << std::setprecision(12);
  std::cout << "objective " << run.result.objective << "\n";
  std::cout << "r_star    " << rstar << "\n";
  std::cout << "ratio     " << run.result.objective / rstar << "\n";
  std::cout << "bound     " << factor << "  (eps " << args.eps << ", eta "
            << run.eta << ")\n";
  if (above && below) {
    std::cout << "PASS\n";
    return kExitOk;
  }
  std::cout << "FAIL\n";
  return kExitVerifyFail;
}

int run_bench(const std::vector<std::string>& inputs, const SolveArgs& base) {
  std::ostringstream csv;
  csv << std::setprecision(15);
  csv << "instance,eps,eta,objective,r_star,ratio,pointfind_calls,U,M\n";
  for (const std::string& path : inputs) {
    SolveArgs args = base;
    args.input = path;
    std::string bytes = read_file(path);
    json parsed = json::parse(bytes);
    InstanceKind kind = detect_kind(parsed);

    SolvedInstance run;
    covlp::Rational rstar_exact;
    if (kind == InstanceKind::Explicit) {
      ExplicitLp lp = parse_explicit(parsed);
      run = solve_explicit(lp, args);
      rstar_exact =
          covlp::exact_lp_solve(
              covlp::ExplicitRationalLp::from_double(lp.A, lp.b, lp.c))
              .objective;
    } else {
      BinPackInstance inst = parse_binpack(parsed);
      run = solve_binpack(inst, args);
      rstar_exact = covlp::binpack_reference_optimum(inst).lp.objective;
    }
    double rstar = covlp::to_double(rstar_exact);
    csv << path << ',' << args.eps << ',' << run.eta << ','
        << run.result.objective << ',' << rstar << ','
        << run.result.objective / rstar << ','
        << run.result.stats.point_find_calls << ','
        << call_bound_or_inf(run.rows, run.rho, args.eps, run.eta) << ','
        << covlp::bound_M(args.eps, run.eta, run.q, rstar) << "\n";
  }
  emit(csv.str(), base.out);
  return kExitOk;
}

std::uint64_t max_calls_from_env() {
  const char* env = std::getenv("COVLP_MAX_CALLS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0')
    throw domain_error("COVLP_MAX_CALLS must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate solver for implicitly given covering LPs"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  SolveArgs binpack_args;
  SolveArgs verify_args;
  SolveArgs bench_args;
  std::vector<std::string> bench_inputs;

  CLI::App* solve_cmd = app.add_subcommand(
      "covlp-solve", "solve an explicit covering LP approximately");
  add_common_options(solve_cmd, &solve_args);
  solve_cmd->add_option("--eta-mode", solve_args.eta_mode,
                        "exact | degrade:<eta>");
  solve_cmd->add_option("--out", solve_args.out, "report file (default stdout)");

  CLI::App* binpack_cmd = app.add_subcommand(
      "binpack-solve", "solve the fractional bin packing LP approximately");
  add_common_options(binpack_cmd, &binpack_args);
  binpack_cmd->add_option("--oracle", binpack_args.oracle,
                          "exact | greedy | singleton");
  binpack_cmd->add_option("--out", binpack_args.out,
                          "report file (default stdout)");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "solve, then check the guarantee against the exact optimum");
  add_common_options(verify_cmd, &verify_args);
  verify_cmd->add_option("--eta-mode", verify_args.eta_mode,
                         "exact | degrade:<eta> (explicit LPs)");
  verify_cmd->add_option("--oracle", verify_args.oracle,
                         "exact | greedy | singleton (bin packing)");

  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "solve instances and print one CSV row per instance");
  bench_cmd->add_option("--input", bench_inputs, "instance JSON files")
      ->required();
  bench_cmd->add_option("--eps", bench_args.eps,
                        "approximation parameter in (0, 1]");
  bench_cmd->add_option("--feas-tol", bench_args.feas_tol,
                        "relative feasibility tolerance");
  bench_cmd->add_option("--max-calls", bench_args.max_calls,
                        "hard cap on point-find calls per probe");
  bench_cmd->add_option("--eta-mode", bench_args.eta_mode,
                        "exact | degrade:<eta> (explicit LPs)");
  bench_cmd->add_option("--oracle", bench_args.oracle,
                        "exact | greedy | singleton (bin packing)");
  bench_cmd->add_option("--out", bench_args.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    std::uint64_t env_cap = max_calls_from_env();
    for (SolveArgs* a : {&solve_args, &binpack_args, &verify_args, &bench_args})
      if (a->max_calls == 0) a->max_calls = env_cap;

    if (solve_cmd->parsed())
      return run_solve("covlp-solve", solve_args, InstanceKind::Explicit);
    if (binpack_cmd->parsed())
      return run_solve("binpack-solve", binpack_args, InstanceKind::BinPack);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (bench_cmd->parsed()) return run_bench(bench_inputs, bench_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
