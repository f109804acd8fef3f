#ifndef CCQP_SYM_MATRIX_HPP_
#define CCQP_SYM_MATRIX_HPP_

#include <Eigen/Dense>
#include <vector>

namespace ccqp {

/// Dense real symmetric matrix. Every constructor symmetrizes its input as
/// (M + Mᵀ)/2, which makes entries(i,j) == entries(j,i) bit-exact, so the
/// symmetry invariant cannot drift through arithmetic.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix zero(int n);
  static SymMatrix identity(int n);
  /// Builds from the row-major upper triangle (n(n+1)/2 entries), the layout
  /// used by the problem file format.
  static SymMatrix from_upper(int n, const std::vector<double>& upper);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  double norm() const { return m_.norm(); }
  /// Row-major upper triangle, inverse of from_upper.
  std::vector<double> upper() const;

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator*(double s) const;

 private:
  Eigen::MatrixXd m_;
};

/// Frobenius (trace) inner product.
double dot(const SymMatrix& a, const SymMatrix& b);

/// Metric projection onto the positive semidefinite cone: eigendecompose,
/// clamp negative eigenvalues to zero, reconstruct. The input is symmetrized
/// first; eigenvalues in [-eps, 0) are absorbed silently.
SymMatrix psd_project(const SymMatrix& m);

/// Largest eigenvalue by direct symmetric eigendecomposition.
double lambda_max_sym(const SymMatrix& m);

// Isometric vectorization of S^n: column-stacked upper triangle with
// off-diagonal entries scaled by sqrt(2), so that <svec(X), svec(Y)> equals
// the trace inner product <X, Y>.
int svec_dim(int n);
Eigen::VectorXd svec(const SymMatrix& x);
SymMatrix smat(const Eigen::VectorXd& v, int n);

}  // namespace ccqp

#endif  // CCQP_SYM_MATRIX_HPP_
