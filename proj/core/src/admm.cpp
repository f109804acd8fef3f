#include "ccqp/admm.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "ccqp/errors.hpp"
#include "ccqp/splitting.hpp"

namespace ccqp {

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::modified: return "modified";
    case Algo::generalized: return "generalized";
    case Algo::direct3: return "direct3";
    case Algo::dys: return "dys";
  }
  return "?";
}

std::optional<Algo> algo_from_name(const std::string& s) {
  if (s == "modified") return Algo::modified;
  if (s == "generalized") return Algo::generalized;
  if (s == "direct3") return Algo::direct3;
  if (s == "dys") return Algo::dys;
  return std::nullopt;
}

std::string term_reason_name(TermReason r) {
  switch (r) {
    case TermReason::converged: return "converged";
    case TermReason::max_iter: return "max_iter";
    case TermReason::error: return "error";
  }
  return "?";
}

IterateState IterateState::initial(const CcqpProblem& p, Eigen::VectorXd z0,
                                   Eigen::VectorXd x0) {
  if (z0.size() != p.x_dim || x0.size() != p.x_dim) {
    throw InputError("IterateState: initialization does not match the problem dimension");
  }
  try {
    if (std::isinf(p.theta->value(-z0))) {
      throw InputError("IterateState: -z0 is outside dom theta");
    }
  } catch (const ValueOracleMissing&) {
    // No value oracle: trust the caller.
  }
  IterateState s;
  s.w = x0;
  s.y = Eigen::VectorXd::Zero(p.y_dim);
  s.z = std::move(z0);
  s.x = std::move(x0);
  s.k = 0;
  s.stepped = false;
  return s;
}

IterateState IterateState::initial_zero(const CcqpProblem& p) {
  return initial(p, Eigen::VectorXd::Zero(p.x_dim), Eigen::VectorXd::Zero(p.x_dim));
}

namespace {

void check_state(const CcqpProblem& p, const IterateState& s, const char* who) {
  if (s.x.size() != p.x_dim || s.z.size() != p.x_dim || s.y.size() != p.y_dim) {
    throw InputError(std::string(who) + ": state dimensions do not match the problem");
  }
}

// Shared y block: minimizes the augmented Lagrangian over y with w already
// set to x, through the cached factorization of A A^T.
Eigen::VectorXd y_update(const CcqpProblem& p, double sigma, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& z, const Eigen::VectorXd& grad) {
  return p.gram.solve(-((p.apply_A(x) - p.b) / sigma + p.apply_A(z - grad)));
}

}  // namespace

IterateState modified_admm_step(const CcqpProblem& p, double sigma, const IterateState& s) {
  if (!(sigma > 0)) throw InputError("modified_admm_step: sigma must be positive");
  check_state(p, s, "modified_admm_step");

  const Eigen::VectorXd grad = p.grad_q(s.x);
  IterateState next;
  next.w = s.x;
  next.y = y_update(p, sigma, s.x, s.z, grad);
  next.u = s.x - sigma * (grad - p.apply_At(next.y));
  next.x = p.theta->conjugate_prox(sigma, next.u);
  next.z = (next.x - next.u) / sigma;
  next.k = s.k + 1;
  next.stepped = true;
  return next;
}

IterateState generalized_step(const CcqpProblem& p, const SolverConfig& cfg,
                              const IterateState& s) {
  const double sigma = cfg.sigma;
  const double rho = cfg.rho;
  if (!(sigma > 0)) throw InputError("generalized_step: sigma must be positive");
  check_state(p, s, "generalized_step");

  const Eigen::VectorXd grad = p.grad_q(s.x);  // Q w+ + c with w+ = x
  IterateState next;
  next.w = s.x;
  next.y = y_update(p, sigma, s.x, s.z, grad);
  const Eigen::VectorXd v = rho * p.apply_At(next.y) - (1.0 - rho) * s.z - rho * grad;
  // The z block reduces to a single prox of theta after substituting s = -z.
  next.z = -p.theta->prox(1.0 / sigma, v + s.x / sigma);
  next.x = s.x + sigma * (v + next.z);
  next.u = next.x - sigma * next.z;
  next.k = s.k + 1;
  next.stepped = true;
  return next;
}

IterateState direct_extended_step(const CcqpProblem& p, const SolverConfig& cfg,
                                  const IterateState& s) {
  const double sigma = cfg.sigma;
  const double tau = cfg.tau;
  if (!(sigma > 0)) throw InputError("direct_extended_step: sigma must be positive");
  if (!(tau > 0)) throw InputError("direct_extended_step: tau must be positive");
  check_state(p, s, "direct_extended_step");

  IterateState next;
  // The w block is a genuine minimization; its normal equation is
  // Q[(I + sigma Q) w - (x + sigma (A*y + z - c))] = 0.
  const Eigen::VectorXd rhs = s.x + sigma * (p.apply_At(s.y) + s.z - p.c);
  next.w = p.Q.solve_identity_plus(sigma, rhs);
  const Eigen::VectorXd qw = p.Q.apply(next.w);
  next.y = p.gram.solve(-((p.apply_A(s.x) - p.b) / sigma + p.apply_A(s.z - qw - p.c)));
  const Eigen::VectorXd v = p.apply_At(next.y) - qw - p.c;
  next.z = -p.theta->prox(1.0 / sigma, v + s.x / sigma);
  next.x = s.x + tau * sigma * (v + next.z);
  next.u = next.x - sigma * next.z;
  next.k = s.k + 1;
  next.stepped = true;
  return next;
}

Eigen::VectorXd shadow_u(const CcqpProblem& p, double sigma, const IterateState& s) {
  if (!(sigma > 0)) throw InputError("shadow_u: sigma must be positive");
  if (!s.stepped) throw StateError("shadow_u: state has not been stepped");
  check_state(p, s, "shadow_u");
  return s.x - sigma * s.z;
}

SolverConfig default_parameters(const CcqpProblem& p) {
  SolverConfig cfg;
  const double lam = p.lambda_hat;
  cfg.sigma = lam > 1e-12 ? 1.0 / lam : 1.0;
  cfg.rho = std::min(1.5, (4.0 - cfg.sigma * lam) / 2.0 - 0.05);
  cfg.tau = 1.0;
  cfg.tol_kkt = 1e-7;
  cfg.tol_fp = 1e-9;
  cfg.max_iter = 50000;
  cfg.log_every = 10;
  return cfg;
}

void validate_config(const CcqpProblem& p, const SolverConfig& cfg, Algo algo) {
  if (cfg.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (cfg.log_every < 1) throw ConfigError("log_every must be >= 1");
  if (!(cfg.tol_kkt > 0) || !(cfg.tol_fp > 0)) throw ConfigError("tolerances must be positive");
  if (algo == Algo::direct3 && !(cfg.tau > 0)) throw ConfigError("tau must be positive");
  if (!(cfg.sigma > 0)) throw ConfigError("sigma must be positive");
  if (cfg.unsafe_override) return;
  const bool uses_rho = algo == Algo::generalized || algo == Algo::dys;
  validate_step_sizes(p.lambda_hat, cfg.sigma, cfg.rho, uses_rho);
}

namespace {

struct LoopResult {
  IterateState state;
  TermReason reason = TermReason::max_iter;
  std::string stopped_by;
  long iterations = 0;
  std::vector<KktHistoryEntry> history;
  double final_fp = std::numeric_limits<double>::infinity();
  KktResidual final_kkt;
};

// Driver shared by the three ADMM variants. fp_residual at iteration k is
// ||u^{k-1} - u^{k-2}|| with u^{-1} = x0 - sigma z0, which keeps the value
// aligned with the fixed-point path from the very first step.
template <typename StepFn>
LoopResult run_admm_loop(const CcqpProblem& p, const SolverConfig& cfg, IterateState state,
                         const StepFn& step) {
  LoopResult out;
  Eigen::VectorXd u_prev = state.x - cfg.sigma * state.z;
  for (long k = 1; k <= cfg.max_iter; ++k) {
    state = step(state);
    const double fp = (state.u - u_prev).norm();
    u_prev = state.u;

    const bool fp_hit = fp <= cfg.tol_fp;
    const bool checkpoint = (k % cfg.log_every == 0) || k == cfg.max_iter || fp_hit;
    if (checkpoint) {
      KktHistoryEntry e;
      e.k = k;
      e.residual = kkt_residual(p, cfg.sigma, state.kkt_point());
      e.fp_residual = fp;
      out.history.push_back(e);
      out.final_kkt = e.residual;
      out.final_fp = fp;
      if (e.residual.max() <= cfg.tol_kkt) {
        out.reason = TermReason::converged;
        out.stopped_by = "kkt";
      } else if (fp_hit) {
        out.reason = TermReason::converged;
        out.stopped_by = "fp";
      }
      if (out.reason == TermReason::converged) {
        out.state = std::move(state);
        out.iterations = k;
        return out;
      }
    }
  }
  out.state = std::move(state);
  out.iterations = cfg.max_iter;
  out.reason = TermReason::max_iter;
  return out;
}

// Fixed-point driver that materializes the ADMM-equivalent (w, y, z, x)
// tuple, so reports and stopping decisions line up with the modified scheme
// run for run.
LoopResult run_dys_loop(const CcqpProblem& p, const SolverConfig& cfg, IterateState init) {
  const double sigma = cfg.sigma;
  const double rho = cfg.rho;
  const ThreeTermObjective obj = make_three_term(p);

  LoopResult out;
  Eigen::VectorXd u = init.x - sigma * init.z;
  Eigen::VectorXd x_cur = init.x;  // ADMM-equivalent x^{k-1}
  Eigen::VectorXd z_cur = init.z;  // ADMM-equivalent z^{k-1}

  for (long k = 1; k <= cfg.max_iter; ++k) {
    Eigen::VectorXd x_hat;
    const Eigen::VectorXd gu = gamma_apply_ex(obj, sigma, u, &x_hat);
    const Eigen::VectorXd u_next = (1.0 - rho) * u + rho * gu;
    const double fp = (u_next - u).norm();
    const Eigen::VectorXd z_next = (x_hat - u_next) / sigma;

    const bool fp_hit = fp <= cfg.tol_fp;
    const bool checkpoint = (k % cfg.log_every == 0) || k == cfg.max_iter || fp_hit;
    if (checkpoint) {
      IterateState st;
      st.w = x_cur;
      st.y = p.gram.solve(-((p.apply_A(x_cur) - p.b) / sigma + p.apply_A(z_cur - p.grad_q(x_cur))));
      st.z = z_next;
      st.x = x_hat;
      st.u = u_next;
      st.k = k;
      st.stepped = true;

      KktHistoryEntry e;
      e.k = k;
      e.residual = kkt_residual(p, sigma, st.kkt_point());
      e.fp_residual = fp;
      out.history.push_back(e);
      out.final_kkt = e.residual;
      out.final_fp = fp;
      if (e.residual.max() <= cfg.tol_kkt) {
        out.reason = TermReason::converged;
        out.stopped_by = "kkt";
      } else if (fp_hit) {
        out.reason = TermReason::converged;
        out.stopped_by = "fp";
      }
      if (out.reason == TermReason::converged || k == cfg.max_iter) {
        out.state = std::move(st);
        out.iterations = k;
        if (out.reason != TermReason::converged) out.reason = TermReason::max_iter;
        return out;
      }
    }
    u = u_next;
    x_cur = x_hat;
    z_cur = z_next;
  }
  out.iterations = cfg.max_iter;
  out.reason = TermReason::max_iter;
  return out;
}

}  // namespace

SolveReport solve(const CcqpProblem& p, Algo algo, SolverConfig cfg,
                  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> init) {
  validate_config(p, cfg, algo);
  IterateState state = init ? IterateState::initial(p, init->first, init->second)
                            : IterateState::initial_zero(p);

  const auto t0 = std::chrono::steady_clock::now();
  LoopResult res;
  switch (algo) {
    case Algo::modified:
      res = run_admm_loop(p, cfg, std::move(state), [&](const IterateState& s) {
        return modified_admm_step(p, cfg.sigma, s);
      });
      break;
    case Algo::generalized:
      res = run_admm_loop(p, cfg, std::move(state), [&](const IterateState& s) {
        return generalized_step(p, cfg, s);
      });
      break;
    case Algo::direct3:
      res = run_admm_loop(p, cfg, std::move(state), [&](const IterateState& s) {
        return direct_extended_step(p, cfg, s);
      });
      break;
    case Algo::dys:
      res = run_dys_loop(p, cfg, std::move(state));
      break;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

  SolveReport report;
  report.final_state = std::move(res.state);
  report.reason = res.reason;
  report.stopped_by = res.stopped_by;
  report.iterations = res.iterations;
  report.history = std::move(res.history);
  report.final_kkt = res.final_kkt;
  report.final_fp = res.final_fp;
  report.objectives = objective_values(p, report.final_state.kkt_point());
  report.wall_seconds = elapsed.count();
  report.config = cfg;
  report.algo = algo;
  if (algo == Algo::direct3) {
    report.warnings.push_back("direct3 is a baseline without a convergence guarantee");
  }
  return report;
}

}  // namespace ccqp
