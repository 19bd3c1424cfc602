#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "qpass/adversary/attacks.hpp"
#include "qpass/analysis/parallel.hpp"
#include "qpass/analysis/stats.hpp"

namespace qpass::analysis {

// One named empirical scenario: which attacker sits on the channel (if any)
// and which stage's detection count is being estimated.
//   attack: honest | no-card | card-steal | mitm | intercept-resend
//   stage:  session | block          (no-card, card-steal)
//           session                  (honest, mitm)
//           decoy | session | total  (intercept-resend; session = the decoy
//                                     screen itself, total = any rejection)
struct ScenarioSpec {
  std::string attack = "honest";
  std::string stage = "session";
  protocol::ProtocolConfig cfg;

  adversary::ForgedInput forged = adversary::ForgedInput::computational(0);
  bool forged_haar = false;  // replace `forged` with one seeded Haar draw
  adversary::CardStealPassword pw{};
  bool pw_optimal = true;  // replace `pw` with the detection-minimizing one
  adversary::InterceptPolicy intercept{};

  std::string name() const { return attack + "/" + stage; }
};

// Runs the scenario and returns the detection estimate for its stage.
// Bit-identical output for equal (spec, trials, seed) under any parallelism.
DetectionStats monte_carlo(const ScenarioSpec& sc, std::uint64_t trials,
                           std::uint64_t seed,
                           ParallelPolicy policy = default_policy());

nlohmann::json scenario_to_json(const ScenarioSpec& sc);
ScenarioSpec scenario_from_json(const nlohmann::json& j);

}  // namespace qpass::analysis
