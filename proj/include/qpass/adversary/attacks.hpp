#pragma once

#include <cstdint>
#include <vector>

#include "qpass/adversary/strategies.hpp"
#include "qpass/analysis/parallel.hpp"
#include "qpass/analysis/stats.hpp"
#include "qpass/protocol/session.hpp"

namespace qpass::adversary {

// Impersonation without the card: E fabricates both qubits of every block.
// The genuine card sits untouched in the user's region, so the verifier's
// store half behaves as a maximally mixed spectator.
struct NoCardResult {
  analysis::DetectionStats block_pass;          // single-block acceptance
  analysis::DetectionStats session_detection;   // >=1 failed block out of N
};
NoCardResult attack_no_card(
    const ForgedInput& forged, const protocol::ProtocolConfig& cfg,
    std::uint64_t trials, const qcore::RngStream& base,
    analysis::ParallelPolicy policy = analysis::default_policy());

// Stolen card, unknown password: E sends the genuine card halves plus a
// forged password qubit drawn from `pw`.
struct CardStealResult {
  analysis::DetectionStats block_detection;
  analysis::DetectionStats session_detection;
};
CardStealResult attack_with_stolen_card(
    const CardStealPassword& pw, const protocol::ProtocolConfig& cfg,
    std::uint64_t trials, const qcore::RngStream& base,
    analysis::ParallelPolicy policy = analysis::default_policy());

// Relay position on the quantum channel: E banks every genuine qubit and
// forwards forgeries. The verifier's view of a forwarded block matches the
// no-card case; what E gains is the stored quantum material.
struct MitmResult {
  analysis::DetectionStats session_detection;
  std::uint64_t qubits_banked_per_session = 0;
};
MitmResult attack_mitm(
    const ForgedInput& forged, const protocol::ProtocolConfig& cfg,
    std::uint64_t trials, const qcore::RngStream& base,
    analysis::ParallelPolicy policy = analysis::default_policy());

// The silent variant: E absorbs the stream and forwards nothing; the session
// must die at the verifier's receive check. Runs one real session.
protocol::SessionTranscript attack_mitm_absorb(
    const protocol::ProtocolConfig& cfg, qcore::RngStream& rng);

// Measure-and-resend on the extended-mode transit stream (cards, password
// carriers and decoys alike - E cannot tell them apart).
struct InterceptResult {
  analysis::DetectionStats per_decoy_flag;       // single decoy mismatch rate
  analysis::DetectionStats decoy_stage_detection;  // verdict rejected-at-decoy
  analysis::DetectionStats total_detection;        // any non-accepted verdict
};
InterceptResult attack_intercept_resend(
    const InterceptPolicy& policy, const protocol::ProtocolConfig& cfg,
    std::uint64_t trials, const qcore::RngStream& base,
    analysis::ParallelPolicy par = analysis::default_policy());

// Passive collection of the verifier's discarded qubits over many honest
// rounds, measured per round and combined by maximum likelihood. Accuracy is
// the fraction of password bits guessed right at each checkpoint, averaged
// over `trials` independent credentials.
struct AccumulateReport {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> accuracy;
  HelstromMeasurement measurement;
  std::uint64_t trials = 0;
  std::uint64_t bits_per_trial = 0;
};
AccumulateReport attack_accumulate_discards(
    const protocol::ProtocolConfig& cfg, std::uint64_t rounds,
    const std::vector<std::uint64_t>& checkpoints, std::uint64_t trials,
    const qcore::RngStream& base,
    analysis::ParallelPolicy policy = analysis::default_policy());

}  // namespace qpass::adversary
