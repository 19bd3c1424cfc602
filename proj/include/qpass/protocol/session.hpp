#pragma once

#include <functional>

#include "qpass/primitives/lock.hpp"
#include "qpass/protocol/channel.hpp"
#include "qpass/protocol/types.hpp"

namespace qpass::protocol {

// Observation points an adversary may hold during a session. The session
// runner calls into whatever is wired here; access-policy screening happens
// when a strategy is constructed, not here.
struct AdversaryHooks {
  // user->verifier quantum channel
  const QuantumTap* quantum_tap = nullptr;
  // public classical channel (read-only)
  std::function<void(const TranscriptEvent&)> classical_tap = nullptr;
  // qubits the verifier throws away after a successful check, in block order
  std::function<void(std::size_t block, const qcore::StateVector&)> discard_tap =
      nullptr;
};

// Fresh credential: N shared pairs in the common Bell state, a random N-bit
// password, and the card half rotation-locked on every bit-1 block.
Enrollment enroll(const ProtocolConfig& cfg, qcore::RngStream& rng);

// One authentication round. The enrollment is updated in place: an accepted
// honest round restores every pair exactly; anything else latches `disturbed`.
// All randomness (verifier draws and user draws) comes from `rng`; adversary
// hooks bring their own streams.
SessionTranscript run_basic_session(Enrollment& enr, const ProtocolConfig& cfg,
                                    qcore::RngStream& rng,
                                    const AdversaryHooks* hooks = nullptr);

// Extended round: the card lock is swapped to a one-time pad for transit and
// decoy qubits ride along at secret positions, disclosed only after delivery.
SessionTranscript run_extended_session(Enrollment& enr,
                                       const ProtocolConfig& cfg,
                                       qcore::RngStream& rng,
                                       const AdversaryHooks* hooks = nullptr);

// Verifier-side core of one block check, reusable against adversarial inputs:
// apply the unlock on qubits (k, a, b) of `joint`, Bell-measure (a, b).
struct VerifyStep {
  primitives::BellKind outcome;
  qcore::StateVector post;
};
VerifyStep unlock_and_verify(const primitives::LockUnitary& lock,
                             const qcore::StateVector& joint, std::size_t pos_k,
                             std::size_t pos_a, std::size_t pos_b,
                             qcore::RngStream& rng);

qcore::StateVector relock(const primitives::LockUnitary& lock,
                          const qcore::StateVector& joint, std::size_t pos_k,
                          std::size_t pos_a, std::size_t pos_b);

// reduced single-qubit states for invariant checks
qcore::DensityMatrix reduced_card_state(const Enrollment& enr,
                                        std::size_t block);
qcore::DensityMatrix reduced_store_state(const Enrollment& enr,
                                         std::size_t block);

}  // namespace qpass::protocol
