// Command-line front end: instance generation, solving, algorithm
// comparison, and mechanical equivalence checking. See the README for the
// file formats and the exit-code contract.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccqp/admm.hpp"
#include "ccqp/equivalence.hpp"
#include "ccqp/errors.hpp"
#include "ccqp/io.hpp"
#include "ccqp/problem.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoConvergence = 2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string kind;
  int n = 8;
  int m = 4;
  std::uint64_t seed = 1;
  int phi_rank = 0;
  std::string out;
  std::string g;  // inline JSON matrix or a path to one
  bool g_random = false;
};

ccqp::SymMatrix parse_g(const GenArgs& args) {
  if (args.g_random) {
    std::mt19937_64 rng(args.seed);
    std::normal_distribution<double> gauss(0.0, 0.7);
    Eigen::MatrixXd m(args.n, args.n);
    for (int i = 0; i < args.n; ++i)
      for (int j = 0; j < args.n; ++j) m(i, j) = gauss(rng);
    ccqp::SymMatrix g(m);
    Eigen::MatrixXd full = g.mat();
    full.diagonal().setOnes();
    return ccqp::SymMatrix(full);
  }
  if (args.g.empty()) throw ccqp::InputError("ncm needs --g or --g-random");
  // Inline JSON array-of-rows first, then a file path.
  json parsed = json::parse(args.g, nullptr, false);
  if (parsed.is_discarded()) {
    parsed = json::parse(ccqp::read_file(args.g), nullptr, false);
    if (parsed.is_discarded()) throw ccqp::InputError("--g: cannot parse '" + args.g + "'");
  }
  if (!parsed.is_array() || parsed.empty()) throw ccqp::InputError("--g: expected rows");
  const int n = static_cast<int>(parsed.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = parsed[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ccqp::InputError("--g: row " + std::to_string(i) + " must have " + std::to_string(n) +
                             " entries");
    }
    for (int j = 0; j < n; ++j) m(i, j) = row[static_cast<size_t>(j)].get<double>();
  }
  return ccqp::SymMatrix(m);
}

int cmd_gen(const GenArgs& args) {
  std::optional<ccqp::CqsdpProblem> problem;
  if (args.kind == "random-cqsdp") {
    problem = ccqp::gen_random_cqsdp(args.n, args.m, args.seed, args.phi_rank);
  } else if (args.kind == "linear-sdp") {
    problem = ccqp::gen_random_cqsdp(args.n, args.m, args.seed, 0);
  } else if (args.kind == "ncm") {
    problem = ccqp::gen_nearest_correlation(parse_g(args));
  } else {
    throw ccqp::InputError("--kind: expected random-cqsdp, ncm or linear-sdp");
  }
  ccqp::write_file(args.out, ccqp::problem_json(*problem));
  std::cout << "wrote " << args.out << " (kind " << args.kind << ", n=" << problem->n
            << ", m=" << problem->m << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string input;
  std::string algo = "modified";
  std::string sigma = "auto";
  double rho = std::numeric_limits<double>::quiet_NaN();
  double tau = 1.0;
  double tol_kkt = 1e-7;
  double tol_fp = 1e-9;
  long max_iter = 50000;
  long log_every = 10;
  std::string log_path;
  std::string out = "run_report.json";
  bool unsafe_override = false;
};

ccqp::SolverConfig build_config(const ccqp::CcqpProblem& p, const std::string& sigma_flag,
                                double rho_flag, double tau, double tol_kkt, double tol_fp,
                                long max_iter, long log_every, bool unsafe) {
  ccqp::SolverConfig cfg = ccqp::default_parameters(p);
  if (sigma_flag != "auto") {
    try {
      cfg.sigma = std::stod(sigma_flag);
    } catch (const std::exception&) {
      throw ccqp::InputError("--sigma: expected 'auto' or a number, got '" + sigma_flag + "'");
    }
    // rho's admissible interval depends on sigma; refresh the default.
    cfg.rho = std::min(1.5, (4.0 - cfg.sigma * p.lambda_hat) / 2.0 - 0.05);
  }
  if (!std::isnan(rho_flag)) cfg.rho = rho_flag;
  cfg.tau = tau;
  cfg.tol_kkt = tol_kkt;
  cfg.tol_fp = tol_fp;
  cfg.max_iter = max_iter;
  cfg.log_every = log_every;
  cfg.unsafe_override = unsafe;
  return cfg;
}

int cmd_solve(const SolveArgs& args) {
  const ccqp::LoadedProblem loaded = ccqp::load_problem(args.input);
  const ccqp::CcqpProblem& p = loaded.ccqp;
  const auto algo = ccqp::algo_from_name(args.algo);
  if (!algo) throw ccqp::InputError("--algo: unknown algorithm '" + args.algo + "'");
  const ccqp::SolverConfig cfg =
      build_config(p, args.sigma, args.rho, args.tau, args.tol_kkt, args.tol_fp, args.max_iter,
                   args.log_every, args.unsafe_override);
  ccqp::validate_config(p, cfg, *algo);

  const ccqp::SolveReport report = ccqp::solve(p, *algo, cfg);
  if (!args.log_path.empty()) ccqp::write_file(args.log_path, ccqp::history_csv(report.history));
  ccqp::write_file(args.out, ccqp::run_report_json(report, args.input, args.log_path));

  std::cout << args.algo << " on " << args.input << ": " << term_reason_name(report.reason)
            << " after " << report.iterations << " iterations"
            << " (max kkt " << fmt(report.final_kkt.max()) << ", fp " << fmt(report.final_fp)
            << ", sigma " << fmt(cfg.sigma) << ", rho " << fmt(cfg.rho) << ")\n"
            << "objectives: primal " << fmt(report.objectives.primal) << ", dual(min form) "
            << fmt(report.objectives.dual) << "; report " << args.out << "\n";
  return report.reason == ccqp::TermReason::converged ? kExitOk : kExitNoConvergence;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string input;
  std::string mode;
  long steps = 200;
  double rho = 1.0;
  std::string sigma = "auto";
  std::string out = "check_report.json";
  double mismatch_sigma = 0.0;  // test hook; scales the fixed-point side
  bool unsafe_override = false;
};

int cmd_check(const CheckArgs& args) {
  const ccqp::LoadedProblem loaded = ccqp::load_problem(args.input);
  const ccqp::CcqpProblem& p = loaded.ccqp;
  ccqp::SolverConfig cfg =
      build_config(p, args.sigma, args.rho, 1.0, 1e-7, 1e-9, 50000, 10, args.unsafe_override);

  if (args.mode == "thm1" || args.mode == "prop2") {
    const auto mode = args.mode == "thm1" ? ccqp::CheckMode::thm1 : ccqp::CheckMode::prop2;
    ccqp::EquivalenceHooks hooks;
    if (args.mismatch_sigma > 0) hooks.sigma_mismatch_factor = args.mismatch_sigma;
    const ccqp::EquivalenceReport report = ccqp::equivalence_check(p, cfg, args.steps, mode, hooks);
    const double bound = 1e-9;
    const bool pass = report.max_u_deviation <= bound && report.max_x_deviation <= bound;
    ccqp::write_file(args.out, ccqp::equivalence_report_json(report, bound, pass));
    std::cout << args.mode << ": max u deviation " << fmt(report.max_u_deviation)
              << ", max x deviation " << fmt(report.max_x_deviation) << " over " << report.steps
              << " steps (bound " << fmt(bound) << ") -> " << (pass ? "pass" : "FAIL") << "\n";
    return pass ? kExitOk : kExitNoConvergence;
  }

  if (args.mode == "moreau") {
    const double bound = 1e-10;
    const double worst = ccqp::moreau_max_residual(*p.theta, 7, 100);
    const bool pass = worst <= bound;
    json j;
    j["schema"] = "ccqp-check-report/1";
    j["mode"] = "moreau";
    j["samples"] = 100;
    j["max_residual"] = worst;
    j["bound"] = bound;
    j["pass"] = pass;
    ccqp::write_file(args.out, j.dump(2) + "\n");
    std::cout << "moreau: max residual " << fmt(worst) << " over 100 samples (bound " << fmt(bound)
              << ") -> " << (pass ? "pass" : "FAIL") << "\n";
    return pass ? kExitOk : kExitNoConvergence;
  }

  if (args.mode == "kkt-perturb") {
    const ccqp::KktPerturbReport report = ccqp::kkt_perturb_check(p, cfg);
    json probes = json::array();
    for (const auto& probe : report.probes) {
      probes.push_back({{"target", probe.target},
                        {"target_delta", probe.target_delta},
                        {"max_other_delta", probe.max_other_delta},
                        {"others_checked", probe.others_checked},
                        {"skipped", probe.skipped},
                        {"pass", probe.pass}});
      std::cout << "  " << probe.target << ": "
                << (probe.skipped ? "skipped (component unraisable)"
                                  : "raised " + fmt(probe.target_delta) + ", others moved " +
                                        fmt(probe.max_other_delta))
                << " -> " << (probe.pass ? "pass" : "FAIL") << "\n";
    }
    json j;
    j["schema"] = "ccqp-check-report/1";
    j["mode"] = "kkt-perturb";
    j["reference_max_kkt"] = report.reference_max;
    j["probes"] = probes;
    j["pass"] = report.pass;
    ccqp::write_file(args.out, j.dump(2) + "\n");
    std::cout << "kkt-perturb -> " << (report.pass ? "pass" : "FAIL") << "\n";
    return report.pass ? kExitOk : kExitNoConvergence;
  }

  throw ccqp::InputError("--mode: expected thm1, prop2, moreau or kkt-perturb");
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string input;
  std::vector<std::string> algos;
  std::vector<double> sigmas;
  std::vector<double> rhos;
  std::string out = "compare.csv";
  double tol_kkt = 1e-7;
  double tol_fp = 1e-9;
  long max_iter = 50000;
  bool timings = false;
};

struct CompareCell {
  std::string algo;
  double sigma = 0.0;
  double rho = 0.0;
  std::string row;
};

int cmd_compare(const CompareArgs& args) {
  const ccqp::LoadedProblem loaded = ccqp::load_problem(args.input);
  const ccqp::CcqpProblem& p = loaded.ccqp;
  const ccqp::SolverConfig defaults = ccqp::default_parameters(p);
  const std::vector<double> sigmas =
      args.sigmas.empty() ? std::vector<double>{defaults.sigma} : args.sigmas;
  const std::vector<double> rhos =
      args.rhos.empty() ? std::vector<double>{defaults.rho} : args.rhos;

  std::vector<CompareCell> cells;
  for (const auto& algo : args.algos)
    for (double s : sigmas)
      for (double r : rhos) cells.push_back(CompareCell{algo, s, r, ""});
  if (cells.empty()) throw ccqp::InputError("--algos: empty sweep");

  auto run_cell = [&](CompareCell& cell) {
    std::ostringstream row;
    row << cell.algo << ',' << fmt(cell.sigma) << ',' << fmt(cell.rho) << ',';
    try {
      const auto algo = ccqp::algo_from_name(cell.algo);
      if (!algo) throw ccqp::InputError("unknown algorithm '" + cell.algo + "'");
      ccqp::SolverConfig cfg = defaults;
      cfg.sigma = cell.sigma;
      cfg.rho = cell.rho;
      cfg.tol_kkt = args.tol_kkt;
      cfg.tol_fp = args.tol_fp;
      cfg.max_iter = args.max_iter;
      const ccqp::SolveReport rep = ccqp::solve(p, *algo, cfg);
      const bool ok = rep.reason == ccqp::TermReason::converged;
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%s,%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,",
                    ok ? "converged" : "DNF", rep.iterations, rep.final_kkt.eta_primal,
                    rep.final_kkt.eta_dual, rep.final_kkt.eta_w, rep.final_kkt.eta_theta,
                    rep.final_kkt.has_comp ? rep.final_kkt.eta_comp : 0.0, rep.final_fp);
      row << buf;
      if (args.timings) row << static_cast<long>(rep.wall_seconds * 1000.0);
    } catch (const std::exception& e) {
      // A failed cell is recorded in its row; the sweep continues.
      std::string what = e.what();
      std::replace(what.begin(), what.end(), ',', ';');
      std::replace(what.begin(), what.end(), '\n', ' ');
      row << "error: " << what << ",,,,,,,,";
    }
    cell.row = row.str();
  };

  // Optional worker pool; assembly order stays fixed regardless of completion.
  long workers = 1;
  if (const char* env = std::getenv("CCQP_WORKERS")) workers = std::max(1L, std::atol(env));
  workers = std::min<long>(workers, static_cast<long>(cells.size()));
  if (workers <= 1) {
    for (auto& cell : cells) run_cell(cell);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
        run_cell(cells[i]);
      }
    };
    std::vector<std::thread> pool;
    for (long w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::string csv =
      "algo,sigma,rho,status,iterations,eta_primal,eta_dual,eta_w,eta_theta,eta_comp,"
      "fp_residual,wall_ms\n";
  for (const auto& cell : cells) csv += cell.row + "\n";
  ccqp::write_file(args.out, csv);
  std::cout << "wrote " << args.out << " (" << cells.size() << " cells)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "First-order solvers for composite quadratic and quadratic semidefinite "
      "programming via their duals, with fixed-point equivalence checking"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a problem file");
  gen_cmd->add_option("--kind", gen.kind, "random-cqsdp | ncm | linear-sdp")->required();
  gen_cmd->add_option("--n", gen.n, "matrix order");
  gen_cmd->add_option("--m", gen.m, "number of constraints");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--phi-rank", gen.phi_rank, "rank of the quadratic operator");
  gen_cmd->add_option("--out", gen.out, "output path")->required();
  gen_cmd->add_option("--g", gen.g, "ncm target matrix: inline JSON rows or a path");
  gen_cmd->add_flag("--g-random", gen.g_random, "ncm: draw a random unit-diagonal target");

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
  solve_cmd->add_option("--input", solve_args.input, "problem file")->required();
  solve_cmd->add_option("--algo", solve_args.algo, "modified | generalized | direct3 | dys");
  solve_cmd->add_option("--sigma", solve_args.sigma, "penalty parameter or 'auto'");
  solve_cmd->add_option("--rho", solve_args.rho, "relaxation factor (generalized/dys)");
  solve_cmd->add_option("--tau", solve_args.tau, "dual step length (direct3)");
  solve_cmd->add_option("--tol-kkt", solve_args.tol_kkt, "KKT stopping tolerance");
  solve_cmd->add_option("--tol-fp", solve_args.tol_fp, "fixed-point stopping tolerance");
  solve_cmd->add_option("--max-iter", solve_args.max_iter, "iteration cap");
  solve_cmd->add_option("--log-every", solve_args.log_every, "KKT checkpoint stride");
  solve_cmd->add_option("--log", solve_args.log_path, "per-checkpoint CSV path");
  solve_cmd->add_option("--out", solve_args.out, "run report path");
  solve_cmd->add_flag("--unsafe-override", solve_args.unsafe_override,
                      "accept step sizes outside the admissible region");

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand("check", "Mechanical equivalence and property checks");
  check_cmd->add_option("--input", check.input, "problem file")->required();
  check_cmd->add_option("--mode", check.mode, "thm1 | prop2 | moreau | kkt-perturb")->required();
  check_cmd->add_option("--steps", check.steps, "steps to compare");
  check_cmd->add_option("--rho", check.rho, "relaxation factor (prop2)");
  check_cmd->add_option("--sigma", check.sigma, "penalty parameter or 'auto'");
  check_cmd->add_option("--out", check.out, "report path");
  check_cmd->add_option("--mismatch-sigma", check.mismatch_sigma,
                        "test hook: scale the fixed-point side's sigma by this factor");
  check_cmd->add_flag("--unsafe-override", check.unsafe_override,
                      "accept step sizes outside the admissible region");

  CompareArgs compare;
  CLI::App* compare_cmd = app.add_subcommand("compare", "Sweep algorithms and step sizes");
  compare_cmd->add_option("--input", compare.input, "problem file")->required();
  compare_cmd->add_option("--algos", compare.algos, "comma-separated algorithm list")
      ->required()
      ->delimiter(',');
  compare_cmd->add_option("--sigmas", compare.sigmas, "comma-separated sigma values")
      ->delimiter(',');
  compare_cmd->add_option("--rhos", compare.rhos, "comma-separated rho values")->delimiter(',');
  compare_cmd->add_option("--out", compare.out, "CSV path");
  compare_cmd->add_option("--tol-kkt", compare.tol_kkt, "KKT stopping tolerance");
  compare_cmd->add_option("--tol-fp", compare.tol_fp, "fixed-point stopping tolerance");
  compare_cmd->add_option("--max-iter", compare.max_iter, "iteration cap");
  compare_cmd->add_flag("--timings", compare.timings,
                        "fill the wall_ms column (off by default, keeping output deterministic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (solve_cmd->parsed()) return cmd_solve(solve_args);
    if (check_cmd->parsed()) return cmd_check(check);
    if (compare_cmd->parsed()) return cmd_compare(compare);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
