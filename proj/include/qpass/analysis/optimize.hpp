#pragma once

#include <cstdint>

#include "qpass/adversary/strategies.hpp"
#include "qpass/primitives/params.hpp"

namespace qpass::analysis {

struct PsMaxResult {
  adversary::ForgedInput best = adversary::ForgedInput::computational(0);
  double value = 0.0;
  std::uint64_t evals = 0;
  bool converged = false;
};

// Multi-start compass search for the forged state maximizing the per-block
// pass probability. Seven real parameters: the global phase is spent making
// the first amplitude real non-negative, and the vector is renormalized
// before every evaluation. `budget` caps objective evaluations across all
// starts; running out before the last start settles clears `converged`.
// Deterministic for fixed (params, budget, starts, seed).
PsMaxResult ps_maximize(const primitives::ProtocolParams& p,
                        std::uint64_t budget = 2000000,
                        std::size_t starts = 64, std::uint64_t seed = 77);

}  // namespace qpass::analysis
