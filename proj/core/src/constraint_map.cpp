#include "ccqp/constraint_map.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ccqp/errors.hpp"

namespace ccqp {

GramFactorization GramFactorization::compute(const Eigen::MatrixXd& spd, double rel_pivot_tol) {
  if (spd.rows() != spd.cols() || spd.rows() < 1) {
    throw InputError("GramFactorization: matrix must be square, order >= 1");
  }
  const int m = static_cast<int>(spd.rows());
  Eigen::MatrixXd work = spd;
  GramFactorization out;
  out.l_ = Eigen::MatrixXd::Zero(m, m);
  out.perm_.resize(static_cast<size_t>(m));
  std::iota(out.perm_.begin(), out.perm_.end(), 0);

  const double threshold = rel_pivot_tol * work.diagonal().maxCoeff();
  for (int k = 0; k < m; ++k) {
    // Largest remaining diagonal becomes the next pivot.
    int p = k;
    for (int j = k + 1; j < m; ++j)
      if (work(j, j) > work(p, p)) p = j;
    if (p != k) {
      work.row(k).swap(work.row(p));
      work.col(k).swap(work.col(p));
      out.l_.row(k).swap(out.l_.row(p));
      std::swap(out.perm_[static_cast<size_t>(k)], out.perm_[static_cast<size_t>(p)]);
    }
    const double pivot = work(k, k);
    if (!(pivot > threshold)) {
      throw SurjectivityViolation(
          "Gram matrix is numerically rank deficient at step " + std::to_string(k) +
          " (pivot " + std::to_string(pivot) + " <= " + std::to_string(threshold) +
          "): constraint rows are dependent, the map is not surjective");
    }
    const double lkk = std::sqrt(pivot);
    out.l_(k, k) = lkk;
    for (int i = k + 1; i < m; ++i) out.l_(i, k) = work(i, k) / lkk;
    for (int j = k + 1; j < m; ++j)
      for (int i = j; i < m; ++i) work(i, j) -= out.l_(i, k) * out.l_(j, k);
  }
  return out;
}

Eigen::VectorXd GramFactorization::solve(const Eigen::VectorXd& rhs) const {
  const int m = dim();
  if (rhs.size() != m) {
    throw InputError("GramFactorization::solve: rhs length " + std::to_string(rhs.size()) +
                     ", expected " + std::to_string(m));
  }
  Eigen::VectorXd pr(m);
  for (int k = 0; k < m; ++k) pr[k] = rhs[perm_[static_cast<size_t>(k)]];
  l_.triangularView<Eigen::Lower>().solveInPlace(pr);
  l_.transpose().triangularView<Eigen::Upper>().solveInPlace(pr);
  Eigen::VectorXd x(m);
  for (int k = 0; k < m; ++k) x[perm_[static_cast<size_t>(k)]] = pr[k];
  return x;
}

Eigen::MatrixXd GramFactorization::reconstruct() const {
  const int m = dim();
  Eigen::MatrixXd pllp = l_ * l_.transpose();
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      g(perm_[static_cast<size_t>(i)], perm_[static_cast<size_t>(j)]) = pllp(i, j);
  return g;
}

ConstraintMap::ConstraintMap(std::vector<SymMatrix> rows, bool factorize_now)
    : rows_(std::move(rows)) {
  if (rows_.empty()) throw InputError("ConstraintMap: needs at least one row");
  const int n = rows_.front().dim();
  for (const auto& r : rows_) {
    if (r.dim() != n) throw InputError("ConstraintMap: rows have mixed orders");
  }
  if (factorize_now) gram_ = GramFactorization::compute(gram());
}

Eigen::VectorXd ConstraintMap::apply(const SymMatrix& x) const {
  if (x.dim() != dim()) {
    throw InputError("ConstraintMap::apply: argument order " + std::to_string(x.dim()) +
                     ", rows have order " + std::to_string(dim()));
  }
  Eigen::VectorXd out(num_rows());
  for (int i = 0; i < num_rows(); ++i) out[i] = dot(rows_[static_cast<size_t>(i)], x);
  return out;
}

SymMatrix ConstraintMap::adjoint(const Eigen::VectorXd& y) const {
  if (y.size() != num_rows()) {
    throw InputError("ConstraintMap::adjoint: vector length " + std::to_string(y.size()) +
                     ", expected " + std::to_string(num_rows()));
  }
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < num_rows(); ++i) acc += y[i] * rows_[static_cast<size_t>(i)].mat();
  return SymMatrix(acc);
}

Eigen::MatrixXd ConstraintMap::gram() const {
  const int m = num_rows();
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      g(i, j) = dot(rows_[static_cast<size_t>(i)], rows_[static_cast<size_t>(j)]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

const GramFactorization& ConstraintMap::gram_factor() const {
  if (!gram_) throw StateError("ConstraintMap: Gram factorization was not computed");
  return *gram_;
}

Eigen::MatrixXd ConstraintMap::lowered() const {
  Eigen::MatrixXd a(num_rows(), svec_dim(dim()));
  for (int i = 0; i < num_rows(); ++i)
    a.row(i) = svec(rows_[static_cast<size_t>(i)]).transpose();
  return a;
}

Eigen::VectorXd apply_map(const ConstraintMap& a, const SymMatrix& x) { return a.apply(x); }

SymMatrix apply_adjoint(const ConstraintMap& a, const Eigen::VectorXd& y) { return a.adjoint(y); }

GramFactorization factorize_gram(const ConstraintMap& a) {
  return GramFactorization::compute(a.gram());
}

Eigen::VectorXd solve_gram(const GramFactorization& f, const Eigen::VectorXd& rhs) {
  return f.solve(rhs);
}

SymMatrix affine_project(const ConstraintMap& a, const GramFactorization& f,
                         const Eigen::VectorXd& b, const SymMatrix& x) {
  if (b.size() != a.num_rows() || f.dim() != a.num_rows()) {
    throw InputError("affine_project: inconsistent dimensions");
  }
  const Eigen::VectorXd residual = a.apply(x) - b;
  return x - a.adjoint(f.solve(residual));
}

}  // namespace ccqp
