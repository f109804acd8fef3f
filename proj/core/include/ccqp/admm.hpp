#ifndef CCQP_ADMM_HPP_
#define CCQP_ADMM_HPP_

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccqp/diagnostics.hpp"
#include "ccqp/problem.hpp"

namespace ccqp {

enum class Algo { modified, generalized, direct3, dys };

std::string algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& s);

struct SolverConfig {
  double sigma = 1.0;       // penalty parameter
  double rho = 1.0;         // relaxation factor (generalized / dys)
  double tau = 1.0;         // dual step length (direct3 only)
  double tol_kkt = 1e-7;
  double tol_fp = 1e-9;
  long max_iter = 50000;
  long log_every = 10;      // KKT checkpoint stride
  bool unsafe_override = false;
};

/// One solver iterate. The shadow point u = x - sigma z of the step that
/// produced the state is populated once the state has been stepped.
struct IterateState {
  Eigen::VectorXd w, y, z, x, u;
  long k = 0;
  bool stepped = false;

  static IterateState initial(const CcqpProblem& p, Eigen::VectorXd z0, Eigen::VectorXd x0);
  static IterateState initial_zero(const CcqpProblem& p);

  KktPoint kkt_point() const { return KktPoint{w, y, z, x}; }
};

enum class TermReason { converged, max_iter, error };
std::string term_reason_name(TermReason r);

struct KktHistoryEntry {
  long k = 0;
  KktResidual residual;
  double fp_residual = 0.0;
};

struct SolveReport {
  IterateState final_state;
  TermReason reason = TermReason::error;
  std::string stopped_by;  // "kkt" or "fp" when converged
  long iterations = 0;
  std::vector<KktHistoryEntry> history;
  KktResidual final_kkt;
  double final_fp = 0.0;
  ObjectiveValues objectives;
  double wall_seconds = 0.0;
  SolverConfig config;
  Algo algo = Algo::modified;
  std::vector<std::string> warnings;
};

/// One step of the modified scheme: assign the quadratic block from the
/// multiplier, solve the y block through the cached Gram factorization,
/// resolve theta* at the shadow point, recover z.
IterateState modified_admm_step(const CcqpProblem& p, double sigma, const IterateState& s);

/// One step of the relaxed scheme: same y block; the z block folds the
/// relaxation into a single prox of theta; the multiplier update follows.
/// Collapses to modified_admm_step at rho = 1.
IterateState generalized_step(const CcqpProblem& p, const SolverConfig& cfg,
                              const IterateState& s);

/// One step of the directly extended scheme (baseline, no convergence
/// guarantee): the quadratic block is genuinely minimized by solving
/// (I + sigma Q) w = x + sigma (A*y + z - c), then y, z, and a tau-scaled
/// multiplier update.
IterateState direct_extended_step(const CcqpProblem& p, const SolverConfig& cfg,
                                  const IterateState& s);

/// Shadow point of a stepped state, x - sigma z. Throws StateError when the
/// state has not been produced by a step.
Eigen::VectorXd shadow_u(const CcqpProblem& p, double sigma, const IterateState& s);

/// Step sizes derived from the inflated lambda_max estimate:
/// sigma = 1/lambda_hat (1 if the quadratic vanishes),
/// rho = min(1.5, (4 - sigma lambda_hat)/2 - 0.05),
/// tolerances 1e-7 (KKT) and 1e-9 (fixed point), 50000 iterations.
SolverConfig default_parameters(const CcqpProblem& p);

/// Validates cfg for the chosen algorithm (sigma bound always, rho bound for
/// the relaxed paths) unless unsafe_override is set. Throws ConfigError.
void validate_config(const CcqpProblem& p, const SolverConfig& cfg, Algo algo);

/// Runs the chosen algorithm from init (default zeros) until the KKT
/// checkpoint residual falls below tol_kkt, the fixed-point residual below
/// tol_fp, or max_iter. Non-convergence is a report outcome, not an error.
SolveReport solve(const CcqpProblem& p, Algo algo, SolverConfig cfg,
                  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> init = std::nullopt);

}  // namespace ccqp

#endif  // CCQP_ADMM_HPP_
