#include "ccqp/equivalence.hpp"

#include <algorithm>

#include "ccqp/errors.hpp"

namespace ccqp {

EquivalenceReport equivalence_check(const CcqpProblem& p, const SolverConfig& cfg, long steps,
                                    CheckMode mode, const EquivalenceHooks& hooks) {
  if (steps < 0) throw InputError("equivalence_check: steps must be >= 0");
  const double rho = mode == CheckMode::thm1 ? 1.0 : cfg.rho;
  if (mode == CheckMode::prop2 && !cfg.unsafe_override && !(cfg.rho > 0 && cfg.rho < 2)) {
    throw ConfigError("equivalence_check: prop2 needs rho in (0, 2)");
  }
  if (!(cfg.sigma > 0)) throw ConfigError("equivalence_check: sigma must be positive");

  EquivalenceReport report;
  report.mode = mode;
  report.steps = steps;
  report.sigma = cfg.sigma;
  report.rho = rho;
  if (steps == 0) return report;

  const double sigma_fp = cfg.sigma * hooks.sigma_mismatch_factor.value_or(1.0);
  const ThreeTermObjective obj = make_three_term(p);

  auto step = [&](const IterateState& s) {
    return mode == CheckMode::thm1 ? modified_admm_step(p, cfg.sigma, s)
                                   : generalized_step(p, cfg, s);
  };

  // The ADMM side's first step supplies the matched seed: its shadow point is
  // the k = 0 element of the governing sequence.
  IterateState s = IterateState::initial_zero(p);
  s = step(s);
  Eigen::VectorXd u_hat = s.u;

  report.trace.reserve(static_cast<size_t>(steps));
  for (long k = 1; k <= steps; ++k) {
    s = step(s);  // carries u^k
    u_hat = (1.0 - rho) * u_hat + rho * gamma_apply(obj, sigma_fp, u_hat);

    EquivalenceStep e;
    e.k = k;
    e.u_dev = (u_hat - s.u).norm() / (1.0 + s.u.norm());
    e.x_dev = (recover_primal(obj, sigma_fp, u_hat) - s.x).norm() / (1.0 + s.x.norm());
    report.trace.push_back(e);
    report.max_u_deviation = std::max(report.max_u_deviation, e.u_dev);
    report.max_x_deviation = std::max(report.max_x_deviation, e.x_dev);
  }
  return report;
}

namespace {

double component(const KktResidual& r, const std::string& name) {
  if (name == "eta_primal") return r.eta_primal;
  if (name == "eta_dual") return r.eta_dual;
  if (name == "eta_w") return r.eta_w;
  if (name == "eta_theta") return r.eta_theta;
  return r.eta_comp;
}

PerturbProbe run_probe(const CcqpProblem& p, double sigma, const KktPoint& ref,
                       const KktResidual& base, const std::string& target,
                       std::vector<std::string> others, const KktPoint& perturbed) {
  const KktResidual r = kkt_residual(p, sigma, perturbed);
  PerturbProbe probe;
  probe.target = target;
  probe.target_delta = std::abs(component(r, target) - component(base, target));
  probe.others_checked = std::move(others);
  for (const auto& o : probe.others_checked) {
    probe.max_other_delta =
        std::max(probe.max_other_delta, std::abs(component(r, o) - component(base, o)));
  }
  probe.pass = probe.target_delta > 1e-4 && probe.max_other_delta < 1e-8;
  (void)ref;
  return probe;
}

}  // namespace

KktPerturbReport kkt_perturb_check(const CcqpProblem& p, SolverConfig cfg) {
  cfg.tol_kkt = 1e-11;
  cfg.tol_fp = 1e-13;
  cfg.max_iter = std::max<long>(cfg.max_iter, 200000);
  const SolveReport run = solve(p, Algo::modified, cfg);
  if (run.reason != TermReason::converged) {
    throw NoConvergence("kkt_perturb_check: reference run did not reach tolerance 1e-11",
                        run.final_kkt.max());
  }
  const KktPoint ref = run.final_state.kkt_point();
  const KktResidual base = kkt_residual(p, cfg.sigma, ref);

  KktPerturbReport report;
  report.reference_max = base.max();
  const double eps = 1e-2;

  // Dual: move y alone; no other component involves y.
  {
    KktPoint pt = ref;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p.y_dim);
    e[0] = 1.0;
    pt.y += eps * e;
    std::vector<std::string> others{"eta_primal", "eta_w", "eta_theta"};
    if (base.has_comp) others.push_back("eta_comp");
    report.probes.push_back(run_probe(p, cfg.sigma, ref, base, "eta_dual", std::move(others), pt));
  }
  // Theta: shift z inside range(A*) and compensate through y, which keeps the
  // dual equation exact; x and w are untouched.
  {
    KktPoint pt = ref;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p.y_dim);
    e[0] = 1.0;
    Eigen::VectorXd dz = p.apply_At(e);
    dz *= eps / dz.norm();
    pt.z += dz;
    pt.y -= p.gram.solve(p.apply_A(dz));
    report.probes.push_back(run_probe(p, cfg.sigma, ref, base, "eta_theta",
                                      {"eta_primal", "eta_dual", "eta_w"}, pt));
  }
  // Primal: move x along the minimum-norm infeasibility direction; the dual
  // equation has no x term.
  {
    KktPoint pt = ref;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p.y_dim);
    e[0] = 1.0;
    Eigen::VectorXd dx = p.apply_At(p.gram.solve(e));
    dx *= eps / dx.norm();
    pt.x += dx;
    report.probes.push_back(
        run_probe(p, cfg.sigma, ref, base, "eta_primal", {"eta_dual"}, pt));
  }
  // W: move w along a direction Q does not annihilate and compensate the dual
  // equation through z. Unraisable when the quadratic vanishes.
  {
    PerturbProbe probe;
    probe.target = "eta_w";
    Eigen::VectorXd d = Eigen::VectorXd::Ones(p.x_dim).normalized();
    for (int it = 0; it < 20; ++it) {
      const Eigen::VectorXd qd = p.Q.apply(d);
      if (qd.norm() <= 1e-12) break;
      d = qd.normalized();
    }
    const Eigen::VectorXd qd = p.Q.apply(d);
    if (qd.norm() <= 1e-12) {
      probe.skipped = true;
      probe.pass = true;
      report.probes.push_back(probe);
    } else {
      KktPoint pt = ref;
      pt.w += eps * d;
      pt.z += eps * qd;
      report.probes.push_back(run_probe(p, cfg.sigma, ref, base, "eta_w",
                                        {"eta_primal", "eta_dual"}, pt));
    }
  }

  report.pass = true;
  for (const auto& probe : report.probes) report.pass = report.pass && probe.pass;
  return report;
}

}  // namespace ccqp
