#ifndef CCQP_CONSTRAINT_MAP_HPP_
#define CCQP_CONSTRAINT_MAP_HPP_

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ccqp/sym_matrix.hpp"

namespace ccqp {

/// Diagonally pivoted Cholesky factorization of a symmetric positive
/// definite matrix. A pivot below rel_pivot_tol times the largest initial
/// diagonal entry raises SurjectivityViolation: the rows it factors are
/// numerically dependent and the owning constraint map is not surjective.
class GramFactorization {
 public:
  static GramFactorization compute(const Eigen::MatrixXd& spd, double rel_pivot_tol = 1e-12);

  int dim() const { return static_cast<int>(l_.rows()); }
  /// Solves G x = rhs through the stored factor.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  const Eigen::MatrixXd& factor() const { return l_; }
  const std::vector<int>& permutation() const { return perm_; }
  /// P L Lᵀ Pᵀ, for refactorization residual checks.
  Eigen::MatrixXd reconstruct() const;

 private:
  Eigen::MatrixXd l_;       // lower triangular, in pivoted order
  std::vector<int> perm_;   // perm_[k] = original index factored at step k
};

/// The linear map A : S^n -> R^m given by m symmetric rows,
/// (A X)_i = <A_i, X>, together with an optional factorization of its
/// Gram matrix G_ij = <A_i, A_j> (equal to A A* on R^m).
class ConstraintMap {
 public:
  explicit ConstraintMap(std::vector<SymMatrix> rows, bool factorize_now = true);

  int num_rows() const { return static_cast<int>(rows_.size()); }
  int dim() const { return rows_.front().dim(); }
  const SymMatrix& row(int i) const { return rows_[static_cast<size_t>(i)]; }

  Eigen::VectorXd apply(const SymMatrix& x) const;
  SymMatrix adjoint(const Eigen::VectorXd& y) const;

  Eigen::MatrixXd gram() const;
  bool has_gram() const { return gram_.has_value(); }
  const GramFactorization& gram_factor() const;

  /// Dense m x svec_dim(n) matrix whose i-th row is svec(A_i)ᵀ; the same map
  /// on vectorized coordinates, with the same Gram matrix.
  Eigen::MatrixXd lowered() const;

 private:
  std::vector<SymMatrix> rows_;
  std::optional<GramFactorization> gram_;
};

Eigen::VectorXd apply_map(const ConstraintMap& a, const SymMatrix& x);
SymMatrix apply_adjoint(const ConstraintMap& a, const Eigen::VectorXd& y);
GramFactorization factorize_gram(const ConstraintMap& a);
Eigen::VectorXd solve_gram(const GramFactorization& f, const Eigen::VectorXd& rhs);

/// Projection onto K = {X : A X = b}:  X - A*( (A A*)^{-1} (A X - b) ).
SymMatrix affine_project(const ConstraintMap& a, const GramFactorization& f,
                         const Eigen::VectorXd& b, const SymMatrix& x);

}  // namespace ccqp

#endif  // CCQP_CONSTRAINT_MAP_HPP_
