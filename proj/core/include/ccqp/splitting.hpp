#ifndef CCQP_SPLITTING_HPP_
#define CCQP_SPLITTING_HPP_

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ccqp/problem.hpp"

namespace ccqp {

/// The three-term decomposition driving the fixed-point iteration:
/// prox_g1 resolves the first nonsmooth term (applied first inside the
/// operator), prox_g2 the second (applied to the reflected point), grad_h the
/// smooth quadratic gradient, beta its cocoercivity constant.
struct ThreeTermObjective {
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> prox_g1;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> prox_g2;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad_h;
  double beta = 0.0;        // 1 / lambda_hat; +inf when the quadratic vanishes
  double lambda_hat = 0.0;  // inflated largest-eigenvalue estimate
};

/// Decomposition of a composite problem: g1 = theta* (resolvent synthesized
/// from theta's oracle), g2 the indicator of {x : A x = b}, h the quadratic.
ThreeTermObjective make_three_term(const CcqpProblem& p);

/// One iterate of the governing sequence.
struct SplitState {
  Eigen::VectorXd u;        // governing point
  Eigen::VectorXd x;        // recovered primal, prox_g1(sigma, u)
  long k = 0;
  double fp_residual = 0.0; // ||u_next - u|| of the step taken at this iterate
};

enum class StopReason { converged, max_iter, wall_clock };

/// Stopping combinator. Threshold conditions (fixed-point residual and the
/// optional extra predicate, typically a KKT hook) stop with `converged`;
/// by default either suffices, with require_all both must hold. max_iter and
/// wall_seconds are hard caps and stop without convergence.
struct StoppingRule {
  double fp_tol = 1e-9;   // <= 0 disables
  long max_iter = 50000;
  double wall_seconds = -1.0;  // <= 0 disables
  std::function<bool(const SplitState&)> extra;
  bool require_all = false;
};

/// The single-valued operator
///   u  ->  u - x^ + prox_g2(sigma, 2 x^ - u - sigma grad_h(x^)),
/// with x^ = prox_g1(sigma, u). Order matters: g1's resolvent is first.
Eigen::VectorXd gamma_apply(const ThreeTermObjective& obj, double sigma,
                            const Eigen::VectorXd& u);

/// gamma_apply that also hands back x^ (already computed internally).
Eigen::VectorXd gamma_apply_ex(const ThreeTermObjective& obj, double sigma,
                               const Eigen::VectorXd& u, Eigen::VectorXd* x_hat);

/// Recovered primal point x = prox_g1(sigma, u).
Eigen::VectorXd recover_primal(const ThreeTermObjective& obj, double sigma,
                               const Eigen::VectorXd& u);

struct RelaxedRun {
  std::vector<SplitState> trace;
  StopReason reason = StopReason::max_iter;
};

/// Relaxed fixed-point iteration u+ = (1 - rho) u + rho Gamma(u) from u0.
/// (sigma, rho) are validated against the admissible region unless
/// unsafe_override is set.
RelaxedRun relaxed_iterate(const ThreeTermObjective& obj, double sigma, double rho,
                           Eigen::VectorXd u0, const StoppingRule& stop,
                           bool unsafe_override = false);

/// Admissibility of the step sizes: sigma in (0, 2/lambda_hat) and
/// rho in (0, min(2, (4 - sigma lambda_hat)/2)). Throws ConfigError.
void validate_step_sizes(double lambda_hat, double sigma, double rho, bool check_rho);

}  // namespace ccqp

#endif  // CCQP_SPLITTING_HPP_
