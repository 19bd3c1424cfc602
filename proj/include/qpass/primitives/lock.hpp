#pragma once

#include <array>

#include "qpass/primitives/bell.hpp"
#include "qpass/primitives/params.hpp"
#include "qpass/qcore/matrix.hpp"
#include "qpass/qcore/rng.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::primitives {

// The verifier's unlock unitary on (password, card, store), 8x8, big-endian
// index 4 b_pwd + 2 b_card + b_store. Its defining action:
//   honest bit 0:  |0>|Plus>  ->  |0>|Plus>
//   honest bit 1 arrives as alpha|0>+beta|1> on a pair rotated to
//   xi|Plus> + i eta|Minus>; U maps that onto (...)|Plus> exactly, which is
//   what the verifier's Bell check keys on.
// The action on the three remaining Plus/Minus-sector inputs is pinned only
// up to a unitary completion; `completion` stores the two free rows actually
// chosen. U is the identity on the BPlus/BMinus sector.
struct LockUnitary {
  ProtocolParams params;
  qcore::CMatrix matrix;      // 8x8
  qcore::CMatrix completion;  // 2x3 free block, rows are the chosen u_1j, u_2j
};

// Build with the default completion (Gram-Schmidt over basis candidates in
// index order). `order` permutes the candidate list; any order yields a valid
// unitary and identical protocol statistics, which the tests exercise.
LockUnitary build_lock_unitary(const ProtocolParams& p);
LockUnitary build_lock_unitary(const ProtocolParams& p,
                               const std::array<int, 3>& order);

// U applied to an incoming (password, card, store) triple
qcore::StateVector apply_unlock(const LockUnitary& lock,
                                const qcore::StateVector& triple);
// U^{-1}, the verifier's re-lock before the card goes back
qcore::StateVector apply_relock(const LockUnitary& lock,
                                const qcore::StateVector& triple);

struct BellVerifyResult {
  bool accepted;  // outcome == Plus
  BellKind outcome;
};

// Bell-basis measurement of a (card, store) pair; collapses nothing the
// caller keeps (pair is taken by value conceptually - we return outcome only).
BellVerifyResult bell_verify(const qcore::StateVector& pair,
                             qcore::RngStream& rng);
BellVerifyResult bell_verify(const qcore::DensityMatrix& pair,
                             qcore::RngStream& rng);

}  // namespace qpass::primitives
