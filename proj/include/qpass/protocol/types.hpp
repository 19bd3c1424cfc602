#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpass/primitives/decoy.hpp"
#include "qpass/primitives/params.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::protocol {

enum class Mode { Basic, Extended };

const char* mode_label(Mode m);
Mode mode_from_label(const std::string& s);

struct ProtocolConfig {
  Mode mode = Mode::Basic;
  std::size_t n_blocks = 8;
  std::size_t n_decoys = 0;  // extended mode requires >= 1
  primitives::ProtocolParams params;
  std::uint64_t seed = 0;
  // how many decoy mismatches the verifier tolerates before rejecting;
  // default zero (a single flipped decoy kills the session)
  std::size_t decoy_error_budget = 0;

  void validate() const;  // throws std::invalid_argument
};

struct ClassicalPassword {
  std::vector<std::uint8_t> bits;  // one per block
};

enum class Verdict { Accepted, RejectedAtDecoy, RejectedAtBell, Aborted };

const char* verdict_label(Verdict v);

struct TranscriptEvent {
  std::string phase;
  bool classical = false;  // visible on the public channel
  nlohmann::json message;
};

struct SessionTranscript {
  std::uint64_t round_id = 0;
  Mode mode = Mode::Basic;
  Verdict verdict = Verdict::Aborted;
  std::string abort_reason;               // set only when verdict == Aborted
  std::vector<std::string> bell_outcomes; // one label per verified block
  std::vector<bool> decoy_ok;             // one per decoy, extended mode
  std::vector<TranscriptEvent> log;

  nlohmann::json to_json() const;
};

// One enrolled credential: N (card, store) pairs plus the classical password.
// `pairs` hold the joint pure state of each block, card qubit first. The
// card qubits stay rotation-locked between sessions. `disturbed` latches once
// a session leaves a block in a state that is no longer the clean enrolled
// pair (any tampered or failed session); later sessions refuse to start on it.
struct Enrollment {
  std::vector<qcore::StateVector> pairs;
  ClassicalPassword password;
  primitives::ProtocolParams params;
  std::uint64_t next_round_id = 1;
  bool disturbed = false;
};

// User-side and verifier-side views of an enrollment. Neither holds state of
// its own: single qubits of an entangled pair have no pure state, so the views
// expose reduced density matrices.
struct SmartCard {
  const Enrollment* enr;
  bool locked = true;
  qcore::DensityMatrix qubit(std::size_t block) const;
};

struct VerifierStore {
  const Enrollment* enr;
  qcore::DensityMatrix qubit(std::size_t block) const;
};

nlohmann::json state_to_json(const qcore::StateVector& s);
qcore::StateVector state_from_json(const nlohmann::json& j);

nlohmann::json enrollment_to_json(const Enrollment& e);
Enrollment enrollment_from_json(const nlohmann::json& j);

}  // namespace qpass::protocol
