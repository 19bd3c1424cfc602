#include "qpass/qcore/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qpass::qcore {

namespace {

std::size_t qubit_count_for(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("state dimension must be a power of two >= 2");
  std::size_t n = 0;
  while ((1ull << n) < dim) ++n;
  if (n > 4) throw std::invalid_argument("state larger than 16 amplitudes");
  return n;
}

}  // namespace

StateVector::StateVector(std::vector<cplx> amps) : amps_(std::move(amps)) {
  n_qubits_ = qubit_count_for(amps_.size());
  double n2 = 0.0;
  for (const cplx& a : amps_) n2 += std::norm(a);
  double n1 = std::sqrt(n2);
  if (std::abs(n1 - 1.0) > 1e-9)
    throw std::invalid_argument("state vector is not normalized");
  for (cplx& a : amps_) a /= n1;
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  if (n_qubits == 0 || n_qubits > 4)
    throw std::invalid_argument("basis: qubit count out of range");
  std::size_t dim = 1ull << n_qubits;
  if (index >= dim) throw std::invalid_argument("basis: index out of range");
  std::vector<cplx> a(dim);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dim mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double overlap(const StateVector& a, const StateVector& b) {
  return std::abs(inner(a, b));
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("density matrix must be square");
  n_qubits_ = qubit_count_for(m_.rows());
  if (!is_hermitian(m_, 1e-12))
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(m_.trace() - cplx{1.0}) > 1e-12)
    throw std::invalid_argument("density matrix trace != 1");
  if (min_eigenvalue(m_) < -1e-12)
    throw std::invalid_argument("density matrix not positive semidefinite");
}

DensityMatrix::DensityMatrix(const StateVector& psi)
    : m_(psi.dim(), psi.dim()), n_qubits_(psi.num_qubits()) {
  for (std::size_t r = 0; r < psi.dim(); ++r)
    for (std::size_t c = 0; c < psi.dim(); ++c)
      m_(r, c) = psi[r] * std::conj(psi[c]);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
  std::size_t dim = 1ull << n_qubits;
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

}  // namespace qpass::qcore
