#ifndef CCQP_POWER_ITERATION_HPP_
#define CCQP_POWER_ITERATION_HPP_

#include <Eigen/Dense>
#include <functional>

namespace ccqp {

/// A self-adjoint PSD linear operator in matrix-free form.
struct LinOp {
  int dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply;
};

/// Largest-eigenvalue estimate by power iteration from a fixed seeded random
/// start. Returns lambda with |lambda - lambda_max| <= tol * max(lambda_max, 1)
/// (certified through the residual ||op v - lambda v||), and 0 for a
/// numerically zero operator. Throws NoConvergence carrying the best estimate
/// when max_iter is exhausted.
double power_lambda_max(const LinOp& op, double tol = 1e-8, int max_iter = 500);

/// power_lambda_max inflated by (1 + 1e-6), so step-size bounds derived from
/// it stay valid under estimation error.
double inflated_lambda_max(const LinOp& op);

}  // namespace ccqp

#endif  // CCQP_POWER_ITERATION_HPP_
