#ifndef CCQP_QUAD_OPERATOR_HPP_
#define CCQP_QUAD_OPERATOR_HPP_

#include <Eigen/Dense>

#include "ccqp/power_iteration.hpp"

namespace ccqp {

/// Self-adjoint PSD linear operator on R^d, restricted to forms whose
/// adjoint and shifted inverse are exactly computable.
class QuadOperator {
 public:
  enum class Form { zero, identity_scaled, hadamard_diag, dense_vec, rank_one_sum };

  static QuadOperator zero(int d);
  static QuadOperator scaled_identity(int d, double alpha);
  /// Diagonal scaling by nonnegative weights.
  static QuadOperator diagonal(Eigen::VectorXd weights);
  /// Dense symmetric PSD matrix on the vectorized space (symmetrized on entry).
  static QuadOperator dense(const Eigen::MatrixXd& m);
  /// Q = sum_i b_i b_i^T over the columns of basis (d x r).
  static QuadOperator rank_one_sum(Eigen::MatrixXd basis);

  Form form() const { return form_; }
  int dim() const { return dim_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// Solves (I + sigma Q) w = r exactly for the stored form.
  /// Throws WSubproblemUnsupported if the form has no solver.
  Eigen::VectorXd solve_identity_plus(double sigma, const Eigen::VectorXd& r) const;

  LinOp as_linop() const;

  double alpha() const { return alpha_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& dense_matrix() const { return dense_; }
  const Eigen::MatrixXd& basis() const { return basis_; }

 private:
  QuadOperator(Form f, int d) : form_(f), dim_(d) {}
  void check_dim(const Eigen::VectorXd& x) const;

  Form form_;
  int dim_;
  double alpha_ = 0.0;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd dense_;
  Eigen::MatrixXd basis_;
};

}  // namespace ccqp

#endif  // CCQP_QUAD_OPERATOR_HPP_
