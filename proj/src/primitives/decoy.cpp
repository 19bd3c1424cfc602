#include "qpass/primitives/decoy.hpp"

#include <stdexcept>

namespace qpass::primitives {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

DecoySymbol decoy_symbol_from_wire(int value) {
  if (value < 2 || value > 5)
    throw std::invalid_argument("decoy symbol must be one of 2,3,4,5");
  return static_cast<DecoySymbol>(value);
}

int decoy_wire_value(DecoySymbol s) { return static_cast<int>(s); }

DecoyBasis decoy_basis_of(DecoySymbol s) {
  return (s == DecoySymbol::Z0 || s == DecoySymbol::Z1) ? DecoyBasis::Z
                                                        : DecoyBasis::X;
}

int decoy_expected_bit(DecoySymbol s) {
  return (s == DecoySymbol::Z1 || s == DecoySymbol::X1) ? 1 : 0;
}

qcore::StateVector decoy_encode(DecoySymbol s) {
  std::vector<qcore::cplx> a(2);
  switch (s) {
    case DecoySymbol::Z0: a[0] = 1.0; break;
    case DecoySymbol::Z1: a[1] = 1.0; break;
    case DecoySymbol::X0: a[0] = kInvSqrt2; a[1] = kInvSqrt2; break;
    case DecoySymbol::X1: a[0] = kInvSqrt2; a[1] = -kInvSqrt2; break;
  }
  return qcore::StateVector(std::move(a));
}

const qcore::ProjectiveBasis& decoy_z_basis() {
  static const qcore::ProjectiveBasis basis =
      qcore::ProjectiveBasis::computational(1);
  return basis;
}

const qcore::ProjectiveBasis& decoy_x_basis() {
  static const qcore::ProjectiveBasis basis = qcore::ProjectiveBasis::from_states(
      {decoy_encode(DecoySymbol::X0), decoy_encode(DecoySymbol::X1)}, {"0", "1"});
  return basis;
}

int decoy_measure(const qcore::StateVector& qubit, DecoyBasis basis,
                  qcore::RngStream& rng) {
  if (qubit.dim() != 2)
    throw std::invalid_argument("decoy_measure: expected a single qubit");
  const qcore::ProjectiveBasis& b =
      basis == DecoyBasis::Z ? decoy_z_basis() : decoy_x_basis();
  return static_cast<int>(qcore::measure(qubit, b, rng).index);
}

}  // namespace qpass::primitives
