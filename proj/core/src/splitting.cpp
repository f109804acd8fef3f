#include "ccqp/splitting.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "ccqp/errors.hpp"

namespace ccqp {

ThreeTermObjective make_three_term(const CcqpProblem& p) {
  ThreeTermObjective obj;
  const auto theta = p.theta;
  obj.prox_g1 = [theta](double t, const Eigen::VectorXd& v) {
    return theta->conjugate_prox(t, v);
  };
  // Affine projection is the resolvent of the normal cone of {x : A x = b}
  // for every parameter value.
  obj.prox_g2 = [&p](double, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return v - p.apply_At(p.gram.solve(p.apply_A(v) - p.b));
  };
  obj.grad_h = [&p](const Eigen::VectorXd& x) { return p.grad_q(x); };
  obj.lambda_hat = p.lambda_hat;
  obj.beta = p.lambda_hat > 0 ? 1.0 / p.lambda_hat : std::numeric_limits<double>::infinity();
  return obj;
}

Eigen::VectorXd gamma_apply_ex(const ThreeTermObjective& obj, double sigma,
                               const Eigen::VectorXd& u, Eigen::VectorXd* x_hat) {
  if (!(sigma > 0)) throw InputError("gamma_apply: sigma must be positive");
  const Eigen::VectorXd xh = obj.prox_g1(sigma, u);
  const Eigen::VectorXd reflected = 2.0 * xh - u - sigma * obj.grad_h(xh);
  if (x_hat) *x_hat = xh;
  return u - xh + obj.prox_g2(sigma, reflected);
}

Eigen::VectorXd gamma_apply(const ThreeTermObjective& obj, double sigma,
                            const Eigen::VectorXd& u) {
  return gamma_apply_ex(obj, sigma, u, nullptr);
}

Eigen::VectorXd recover_primal(const ThreeTermObjective& obj, double sigma,
                               const Eigen::VectorXd& u) {
  if (!(sigma > 0)) throw InputError("recover_primal: sigma must be positive");
  return obj.prox_g1(sigma, u);
}

void validate_step_sizes(double lambda_hat, double sigma, double rho, bool check_rho) {
  if (!(sigma > 0)) throw ConfigError("sigma must be positive");
  if (lambda_hat > 0 && !(sigma < 2.0 / lambda_hat)) {
    throw ConfigError("sigma = " + std::to_string(sigma) + " violates sigma < 2/lambda_max = " +
                      std::to_string(2.0 / lambda_hat) +
                      "; pass the unsafe override to run anyway");
  }
  if (check_rho) {
    const double bound = std::min(2.0, (4.0 - sigma * lambda_hat) / 2.0);
    if (!(rho > 0) || !(rho < bound)) {
      throw ConfigError("rho = " + std::to_string(rho) +
                        " violates rho in (0, min(2, (4 - sigma lambda_max)/2)) = (0, " +
                        std::to_string(bound) + "); pass the unsafe override to run anyway");
    }
  }
}

RelaxedRun relaxed_iterate(const ThreeTermObjective& obj, double sigma, double rho,
                           Eigen::VectorXd u0, const StoppingRule& stop, bool unsafe_override) {
  if (!unsafe_override) validate_step_sizes(obj.lambda_hat, sigma, rho, true);
  if (stop.max_iter < 1) throw InputError("relaxed_iterate: max_iter must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  RelaxedRun run;
  Eigen::VectorXd u = std::move(u0);
  for (long k = 0; k < stop.max_iter; ++k) {
    Eigen::VectorXd x_hat;
    const Eigen::VectorXd gu = gamma_apply_ex(obj, sigma, u, &x_hat);
    const Eigen::VectorXd u_next = (1.0 - rho) * u + rho * gu;

    SplitState st;
    st.u = u;
    st.x = x_hat;
    st.k = k;
    st.fp_residual = (u_next - u).norm();
    run.trace.push_back(st);

    const bool fp_ok = stop.fp_tol > 0 && st.fp_residual <= stop.fp_tol;
    const bool extra_ok = stop.extra && stop.extra(st);
    const bool converged = stop.require_all
                               ? (stop.fp_tol <= 0 || fp_ok) && (!stop.extra || extra_ok)
                               : (fp_ok || extra_ok);
    if (converged && (stop.fp_tol > 0 || stop.extra)) {
      run.reason = StopReason::converged;
      return run;
    }
    if (stop.wall_seconds > 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
      if (elapsed.count() > stop.wall_seconds) {
        run.reason = StopReason::wall_clock;
        return run;
      }
    }
    u = u_next;
  }
  run.reason = StopReason::max_iter;
  return run;
}

}  // namespace ccqp
