#pragma once

#include "qpass/qcore/measure.hpp"
#include "qpass/qcore/rng.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::primitives {

// Decoy alphabet. Wire values 2..5 keep decoy symbols disjoint from password
// bits {0,1} in logs and configs.
//   Z0 = |0>, Z1 = |1>, X0 = (|0>+|1>)/sqrt2, X1 = (|0>-|1>)/sqrt2
enum class DecoySymbol : int { Z0 = 2, Z1 = 3, X0 = 4, X1 = 5 };

enum class DecoyBasis { Z, X };

DecoySymbol decoy_symbol_from_wire(int value);  // throws on anything else
int decoy_wire_value(DecoySymbol s);
DecoyBasis decoy_basis_of(DecoySymbol s);
int decoy_expected_bit(DecoySymbol s);  // 0 or 1 within its basis

qcore::StateVector decoy_encode(DecoySymbol s);

// measure a single qubit in the given basis; returns the observed bit
int decoy_measure(const qcore::StateVector& qubit, DecoyBasis basis,
                  qcore::RngStream& rng);

const qcore::ProjectiveBasis& decoy_z_basis();
const qcore::ProjectiveBasis& decoy_x_basis();

}  // namespace qpass::primitives
