#include "ccqp/sym_matrix.hpp"

#include <cmath>

#include "ccqp/errors.hpp"

namespace ccqp {

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InputError("SymMatrix: expected a square matrix of order >= 1, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(int n) { return SymMatrix(Eigen::MatrixXd::Zero(n, n)); }

SymMatrix SymMatrix::identity(int n) { return SymMatrix(Eigen::MatrixXd::Identity(n, n)); }

SymMatrix SymMatrix::from_upper(int n, const std::vector<double>& upper) {
  const size_t want = static_cast<size_t>(n) * (n + 1) / 2;
  if (upper.size() != want) {
    throw InputError("SymMatrix::from_upper: order " + std::to_string(n) + " needs " +
                     std::to_string(want) + " entries, got " + std::to_string(upper.size()));
  }
  Eigen::MatrixXd m(n, n);
  size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      m(i, j) = upper[pos];
      m(j, i) = upper[pos];
      ++pos;
    }
  }
  return SymMatrix(m);
}

std::vector<double> SymMatrix::upper() const {
  const int n = dim();
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.push_back(m_(i, j));
  return out;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const { return SymMatrix(m_ + o.m_); }
SymMatrix SymMatrix::operator-(const SymMatrix& o) const { return SymMatrix(m_ - o.m_); }
SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(m_ * s); }

double dot(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("dot: dimension mismatch");
  return a.mat().cwiseProduct(b.mat()).sum();
}

SymMatrix psd_project(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.mat());
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return SymMatrix(es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose());
}

double lambda_max_sym(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

int svec_dim(int n) { return n * (n + 1) / 2; }

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

Eigen::VectorXd svec(const SymMatrix& x) {
  const int n = x.dim();
  Eigen::VectorXd v(svec_dim(n));
  int pos = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      v[pos++] = (i == j) ? x(i, j) : kSqrt2 * x(i, j);
    }
  }
  return v;
}

SymMatrix smat(const Eigen::VectorXd& v, int n) {
  if (v.size() != svec_dim(n)) {
    throw InputError("smat: vector length " + std::to_string(v.size()) +
                     " does not match order " + std::to_string(n));
  }
  Eigen::MatrixXd m(n, n);
  int pos = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double e = (i == j) ? v[pos] : v[pos] / kSqrt2;
      m(i, j) = e;
      m(j, i) = e;
      ++pos;
    }
  }
  return SymMatrix(m);
}

}  // namespace ccqp
