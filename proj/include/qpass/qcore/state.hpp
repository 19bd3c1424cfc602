#pragma once

#include <cstddef>
#include <vector>

#include "qpass/qcore/matrix.hpp"

namespace qpass::qcore {

// Pure state of n qubits, big-endian: basis index i has qubit 0 in the most
// significant bit, so |i> = |b_0 b_1 ... b_{n-1}> with i = sum b_q 2^{n-1-q}.
// Immutable after construction; constructors reject amplitude vectors whose
// norm is off by more than 1e-9 and renormalize the rest, so downstream code
// can rely on unit norm to 1e-12.
class StateVector {
 public:
  explicit StateVector(std::vector<cplx> amps);
  static StateVector basis(std::size_t n_qubits, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  std::size_t num_qubits() const { return n_qubits_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  const std::vector<cplx>& amps() const { return amps_; }

 private:
  std::vector<cplx> amps_;
  std::size_t n_qubits_ = 0;
};

cplx inner(const StateVector& a, const StateVector& b);  // <a|b>
double overlap(const StateVector& a, const StateVector& b);

// Mixed state of n qubits. Construction checks Hermiticity and unit trace to
// 1e-12 and positive semidefiniteness to -1e-12 on the spectrum.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);
  explicit DensityMatrix(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t n_qubits);

  std::size_t dim() const { return m_.rows(); }
  std::size_t num_qubits() const { return n_qubits_; }
  const CMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  CMatrix m_;
  std::size_t n_qubits_ = 0;
};

}  // namespace qpass::qcore
