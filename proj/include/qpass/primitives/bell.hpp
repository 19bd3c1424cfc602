#pragma once

#include <string>

#include "qpass/primitives/params.hpp"
#include "qpass/qcore/matrix.hpp"
#include "qpass/qcore/measure.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::primitives {

// The four Bell states of a (card, store) pair, big-endian (card first):
//   Plus  = (|00> + |11>)/sqrt2      Minus  = (|00> - |11>)/sqrt2
//   BPlus = (|01> + |10>)/sqrt2      BMinus = (|01> - |10>)/sqrt2
enum class BellKind { Plus, Minus, BPlus, BMinus };

const char* bell_label(BellKind k);  // "+", "-", "B+", "B-"

qcore::StateVector make_bell(BellKind k);

// measurement basis over the four Bell states, in enum order
const qcore::ProjectiveBasis& bell_basis();

// password qubit for one classical bit: |0> for 0, alpha|0> + beta|1> for 1
qcore::StateVector make_password_ket(const ProtocolParams& p, int bit);

// card rotation diag(e^{i delta}, e^{-i delta}); inverse() gives the unlock
qcore::CMatrix make_rotation(const ProtocolParams& p);
qcore::CMatrix make_rotation_inverse(const ProtocolParams& p);

// (R (x) I) |Plus> = xi |Plus> + i eta |Minus>, the locked pair state
qcore::StateVector make_locked_pair(const ProtocolParams& p);

}  // namespace qpass::primitives
