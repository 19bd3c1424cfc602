#include "qpass/adversary/policy.hpp"

#include <string>

namespace qpass::adversary {

const char* access_site_label(AccessSite s) {
  switch (s) {
    case AccessSite::QuantumChannel: return "quantum-channel";
    case AccessSite::ClassicalChannel: return "classical-channel";
    case AccessSite::VerifierDiscards: return "verifier-discards";
    case AccessSite::VerifierQuantumInternals: return "verifier-quantum-internals";
    case AccessSite::UserRegion: return "user-region";
  }
  return "?";
}

void enforce_access_policy(const std::vector<AccessSite>& requested) {
  for (AccessSite s : requested) {
    if (s == AccessSite::UserRegion || s == AccessSite::VerifierQuantumInternals)
      throw PolicyError(std::string("access denied: ") + access_site_label(s));
  }
}

}  // namespace qpass::adversary
