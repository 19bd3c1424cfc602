#include "qpass/qcore/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpass::qcore {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx CMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    m = std::max(m, std::abs(a_[i] - other.a_[i]));
  return m;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("operator*: shape mismatch");
  CMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      cplx arx = a(r, k);
      if (arx == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += arx * b(k, c);
    }
  return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("operator+: shape mismatch");
  CMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("operator-: shape mismatch");
  CMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
  return out;
}

CMatrix operator*(cplx s, const CMatrix& a) {
  CMatrix out = a;
  for (cplx& v : out.a_) v *= s;
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      cplx v = a(ra, ca);
      if (v == cplx{}) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          out(ra * b.rows() + rb, ca * b.cols() + cb) = v * b(rb, cb);
    }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
  return true;
}

double unitarity_residual(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("unitarity_residual: matrix not square");
  const CMatrix id = CMatrix::identity(m.rows());
  double r1 = (m * m.adjoint()).max_abs_diff(id);
  double r2 = (m.adjoint() * m).max_abs_diff(id);
  return std::max(r1, r2);
}

bool is_unitary(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && unitarity_residual(m) <= tol;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols() || !is_hermitian(m, 1e-9))
    throw std::invalid_argument("hermitian_eigenvalues: not Hermitian");
  Eigen::MatrixXcd em(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      em(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return out;
}

double min_eigenvalue(const CMatrix& m) { return hermitian_eigenvalues(m).front(); }

}  // namespace qpass::qcore
