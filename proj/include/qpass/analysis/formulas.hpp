#pragma once

#include <cstdint>

#include "qpass/adversary/strategies.hpp"
#include "qpass/primitives/lock.hpp"
#include "qpass/primitives/params.hpp"

namespace qpass::analysis {

// Per-block probability that a forged (password, card) pair passes the
// verifier's Bell check while the store qubit sits maximally mixed. The
// four-term expression only involves the pinned row of the unlock unitary,
// so it is completion-independent by construction.
double ps_closed_form(const adversary::ForgedInput& forged,
                      const primitives::ProtocolParams& p);

// Same quantity from the built 8x8 unitary by explicit conjugation, partial
// trace and projection. Must agree with ps_closed_form to 1e-10 for every
// forgery and every completion choice - which is exactly what the tests pin.
double ps_direct(const adversary::ForgedInput& forged,
                 const primitives::LockUnitary& lock);
double ps_direct(const adversary::ForgedInput& forged,
                 const primitives::ProtocolParams& p);

// Average per-block detection probability of a card-steal forgery rho_E:
// (1/2) (1-xi^2)/(1-alpha^2 xi^2) [1 + alpha^2 - 2 alpha^2 r - 2 alpha beta x]
double delta_e_closed_form(const adversary::CardStealPassword& pw,
                           const primitives::ProtocolParams& p);

// Trace form: average of Tr[U(rho_E (x) pair)(U^dag)(I - P_plus)] over the
// two honest pair states (plain and rotation-locked).
double delta_e_direct(const adversary::CardStealPassword& pw,
                      const primitives::LockUnitary& lock);
double delta_e_direct(const adversary::CardStealPassword& pw,
                      const primitives::ProtocolParams& p);

// Minimum of delta_e over the forgery Bloch ball.
double pn_closed_form(const primitives::ProtocolParams& p);

struct PnMinimum {
  double value = 0.0;
  double r = 0.0;
  double x = 0.0;
};

// Exhaustive grid scan of delta_e over (r, x) with two zoom rounds; assumes
// nothing about where the minimum sits. y is pinned to 0 because delta_e has
// no y term (itself verified separately).
PnMinimum pn_minimize_direct(const primitives::ProtocolParams& p);

// 1 - (1-p)^n, the whole-session detection for independent per-block checks
double total_detection(double p, std::uint64_t n);

}  // namespace qpass::analysis
