#pragma once

#include <stdexcept>
#include <vector>

namespace qpass::adversary {

// What an attack strategy wants to touch. The security model gives the
// adversary the transmission channels, the public classical traffic and
// whatever the verifier throws away - and nothing inside the user's region or
// the verifier's quantum machinery.
enum class AccessSite {
  QuantumChannel,            // user->verifier qubits in flight
  ClassicalChannel,          // public classical messages
  VerifierDiscards,          // qubits leaving the verifier as garbage
  VerifierQuantumInternals,  // forbidden
  UserRegion,                // forbidden
};

const char* access_site_label(AccessSite s);

struct PolicyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws PolicyError when any requested site is off-limits. Called from
// strategy constructors so a forbidden strategy never gets to run.
void enforce_access_policy(const std::vector<AccessSite>& requested);

}  // namespace qpass::adversary
