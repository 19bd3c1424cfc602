#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qpass::qcore {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Block dimensions in this project never
// exceed 16, so plain O(n^3) arithmetic is all we need.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  CMatrix adjoint() const;
  cplx trace() const;

  // max_ij |a_ij - b_ij|; shapes must match
  double max_abs_diff(const CMatrix& other) const;
  double max_abs() const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(cplx s, const CMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tol);
// max entry of |U U^dag - I| and |U^dag U - I|
double unitarity_residual(const CMatrix& m);
bool is_unitary(const CMatrix& m, double tol);

// Eigenvalues of a Hermitian matrix, ascending. Throws std::invalid_argument
// if the matrix is not square or not Hermitian to 1e-9.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);
double min_eigenvalue(const CMatrix& m);

}  // namespace qpass::qcore
