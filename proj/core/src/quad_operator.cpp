#include "ccqp/quad_operator.hpp"

#include <utility>

#include "ccqp/errors.hpp"

namespace ccqp {

QuadOperator QuadOperator::zero(int d) {
  if (d < 1) throw InputError("QuadOperator: dimension must be >= 1");
  return QuadOperator(Form::zero, d);
}

QuadOperator QuadOperator::scaled_identity(int d, double alpha) {
  if (d < 1) throw InputError("QuadOperator: dimension must be >= 1");
  if (alpha < 0) throw InputError("QuadOperator: scaled identity needs alpha >= 0");
  QuadOperator q(Form::identity_scaled, d);
  q.alpha_ = alpha;
  return q;
}

QuadOperator QuadOperator::diagonal(Eigen::VectorXd weights) {
  if (weights.size() < 1) throw InputError("QuadOperator: empty weight vector");
  if (weights.minCoeff() < 0) throw InputError("QuadOperator: diagonal weights must be >= 0");
  QuadOperator q(Form::hadamard_diag, static_cast<int>(weights.size()));
  q.weights_ = std::move(weights);
  return q;
}

QuadOperator QuadOperator::dense(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw InputError("QuadOperator: dense form must be square");
  QuadOperator q(Form::dense_vec, static_cast<int>(m.rows()));
  q.dense_ = 0.5 * (m + m.transpose());
  return q;
}

QuadOperator QuadOperator::rank_one_sum(Eigen::MatrixXd basis) {
  if (basis.rows() < 1) throw InputError("QuadOperator: empty basis");
  QuadOperator q(Form::rank_one_sum, static_cast<int>(basis.rows()));
  q.basis_ = std::move(basis);
  return q;
}

void QuadOperator::check_dim(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) {
    throw InputError("QuadOperator: point has length " + std::to_string(x.size()) +
                     ", expected " + std::to_string(dim_));
  }
}

Eigen::VectorXd QuadOperator::apply(const Eigen::VectorXd& x) const {
  check_dim(x);
  switch (form_) {
    case Form::zero:
      return Eigen::VectorXd::Zero(dim_);
    case Form::identity_scaled:
      return alpha_ * x;
    case Form::hadamard_diag:
      return weights_.cwiseProduct(x);
    case Form::dense_vec:
      return dense_ * x;
    case Form::rank_one_sum:
      return basis_ * (basis_.transpose() * x);
  }
  return Eigen::VectorXd();  // unreachable
}

Eigen::VectorXd QuadOperator::solve_identity_plus(double sigma, const Eigen::VectorXd& r) const {
  check_dim(r);
  if (!(sigma > 0)) throw InputError("QuadOperator: shift must be positive");
  switch (form_) {
    case Form::zero:
      return r;
    case Form::identity_scaled:
      return r / (1.0 + sigma * alpha_);
    case Form::hadamard_diag:
      return r.cwiseQuotient(Eigen::VectorXd::Ones(dim_) + sigma * weights_);
    case Form::dense_vec: {
      Eigen::MatrixXd shifted = sigma * dense_;
      shifted.diagonal().array() += 1.0;
      return shifted.ldlt().solve(r);
    }
    case Form::rank_one_sum: {
      // Woodbury: (I + sigma B B^T)^{-1} r = r - B (I/sigma + B^T B)^{-1} B^T r.
      const Eigen::VectorXd btr = basis_.transpose() * r;
      Eigen::MatrixXd small = basis_.transpose() * basis_;
      small.diagonal().array() += 1.0 / sigma;
      return r - basis_ * small.ldlt().solve(btr);
    }
  }
  throw WSubproblemUnsupported("QuadOperator: no shifted solver for this form");
}

LinOp QuadOperator::as_linop() const {
  return LinOp{dim_, [*this](const Eigen::VectorXd& x) { return apply(x); }};
}

}  // namespace ccqp
