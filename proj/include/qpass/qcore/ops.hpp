#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpass/qcore/matrix.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::qcore {

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

StateVector apply(const CMatrix& u, const StateVector& psi);
DensityMatrix apply(const CMatrix& u, const DensityMatrix& rho);  // U rho U^dag

// Trace out all qubits not listed in `keep`. `keep` must be a strictly
// increasing non-empty proper subset of {0..n-1}.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& keep);

// Reduced state of a pure state without forming the full density matrix.
DensityMatrix reduced_state(const StateVector& psi,
                            const std::vector<std::size_t>& keep);

// <psi| P |psi> for a projector P (checked Hermitian and idempotent to 1e-12).
double born_probability(const StateVector& psi, const CMatrix& projector);

double purity(const DensityMatrix& rho);  // Tr[rho^2]

// Lift a unitary acting on `targets` (in that qubit order) to n qubits.
CMatrix embed(const CMatrix& u, std::size_t n_qubits,
              const std::vector<std::size_t>& targets);

// If psi factors as front (x) back across the first n_front qubits, return the
// two factors; otherwise nullopt. `residual` below this threshold counts as a
// product (the honest protocol paths land around 1e-15).
struct SplitResult {
  StateVector front;
  StateVector back;
  double residual;
};
std::optional<SplitResult> split_product(const StateVector& psi,
                                         std::size_t n_front,
                                         double tol = 1e-8);

}  // namespace qpass::qcore
