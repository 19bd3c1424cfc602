#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qpass/protocol/session.hpp"
#include "qpass/qcore/ops.hpp"

using namespace qpass;
using protocol::Enrollment;
using protocol::Mode;
using protocol::ProtocolConfig;
using protocol::SessionTranscript;
using protocol::Verdict;
using qcore::cplx;
using qcore::RngStream;
using qcore::StateVector;

namespace {

ProtocolConfig basic_cfg(std::size_t blocks = 4) {
  ProtocolConfig cfg;
  cfg.mode = Mode::Basic;
  cfg.n_blocks = blocks;
  cfg.n_decoys = 0;
  cfg.params = primitives::ProtocolParams::from_alpha_xi(0.5, 0.5);
  return cfg;
}

ProtocolConfig extended_cfg(std::size_t blocks = 4, std::size_t decoys = 6) {
  ProtocolConfig cfg = basic_cfg(blocks);
  cfg.mode = Mode::Extended;
  cfg.n_decoys = decoys;
  return cfg;
}

double pair_residual(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("config validation") {
  ProtocolConfig cfg = basic_cfg();
  cfg.validate();
  cfg.n_blocks = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = extended_cfg();
  cfg.n_decoys = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = basic_cfg();
  cfg.n_decoys = 3;  // basic mode must not carry decoys
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = basic_cfg();
  cfg.params.d = 0.5;  // inconsistent derived field
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("enrollment shape and pair states") {
  ProtocolConfig cfg = basic_cfg(8);
  RngStream rng(101, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  REQUIRE(e.pairs.size() == 8);
  REQUIRE(e.password.bits.size() == 8);
  CHECK(!e.disturbed);
  CHECK(e.next_round_id == 1);

  StateVector plain = primitives::make_bell(primitives::BellKind::Plus);
  StateVector locked = primitives::make_locked_pair(cfg.params);
  for (std::size_t i = 0; i < 8; ++i) {
    const StateVector& want = e.password.bits[i] ? locked : plain;
    CHECK(pair_residual(e.pairs[i], want) < 1e-14);
  }
  // both bit values actually show up over a few enrollments
  int ones = 0;
  for (int s = 0; s < 8; ++s) {
    RngStream r2(200 + s, 0);
    Enrollment e2 = protocol::enroll(cfg, r2);
    for (std::uint8_t b : e2.password.bits) ones += b;
  }
  CHECK(ones > 10);
  CHECK(ones < 54);
}

TEST_CASE("card and store halves carry no password information") {
  ProtocolConfig cfg = basic_cfg(6);
  RngStream rng(103, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  qcore::CMatrix half = qcore::DensityMatrix::maximally_mixed(1).matrix();
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(protocol::reduced_card_state(e, i).matrix().max_abs_diff(half) < 1e-12);
    CHECK(protocol::reduced_store_state(e, i).matrix().max_abs_diff(half) < 1e-12);
  }
  protocol::SmartCard card{&e, true};
  protocol::VerifierStore store{&e};
  CHECK(card.qubit(0).matrix().max_abs_diff(half) < 1e-12);
  CHECK(store.qubit(0).matrix().max_abs_diff(half) < 1e-12);
}

TEST_CASE("honest basic sessions accept and restore the enrollment") {
  ProtocolConfig cfg = basic_cfg(4);
  RngStream rng(105, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  std::vector<StateVector> snapshot = e.pairs;

  for (int round = 0; round < 20; ++round) {
    SessionTranscript t = protocol::run_basic_session(e, cfg, rng);
    CHECK(t.verdict == Verdict::Accepted);
    CHECK(t.bell_outcomes.size() == 4);
    for (const std::string& o : t.bell_outcomes) CHECK(o == "+");
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(pair_residual(e.pairs[i], snapshot[i]) < 1e-12);
    CHECK(!e.disturbed);
  }
  CHECK(e.next_round_id == 21);
}

TEST_CASE("honest extended sessions accept with clean decoys") {
  ProtocolConfig cfg = extended_cfg(4, 6);
  RngStream rng(107, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  std::vector<StateVector> snapshot = e.pairs;

  for (int round = 0; round < 20; ++round) {
    SessionTranscript t = protocol::run_extended_session(e, cfg, rng);
    CHECK(t.verdict == Verdict::Accepted);
    CHECK(t.decoy_ok.size() == 6);
    for (bool ok : t.decoy_ok) CHECK(ok);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(pair_residual(e.pairs[i], snapshot[i]) < 1e-12);
  }
}

TEST_CASE("sessions are deterministic in the seed") {
  ProtocolConfig cfg = extended_cfg(3, 4);
  auto run = [&] {
    RngStream rng(42, 9);
    Enrollment e = protocol::enroll(cfg, rng);
    SessionTranscript t = protocol::run_extended_session(e, cfg, rng);
    return t.to_json().dump();
  };
  CHECK(run() == run());
}

TEST_CASE("mode mismatch between config and runner throws") {
  ProtocolConfig cfg = basic_cfg();
  RngStream rng(109, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  CHECK_THROWS_AS(protocol::run_extended_session(e, cfg, rng),
                  std::invalid_argument);
  ProtocolConfig ext = extended_cfg();
  CHECK_THROWS_AS(protocol::run_basic_session(e, ext, rng),
                  std::invalid_argument);
}

TEST_CASE("wrong password is caught at the bell check") {
  ProtocolConfig cfg = basic_cfg(6);
  RngStream rng(111, 0);
  int rejected = 0;
  const int runs = 60;
  for (int s = 0; s < runs; ++s) {
    Enrollment e = protocol::enroll(cfg, rng);
    // impersonator with the right card but a flipped password guess
    for (std::size_t i = 0; i < e.password.bits.size(); ++i)
      e.password.bits[i] ^= 1u;
    SessionTranscript t = protocol::run_basic_session(e, cfg, rng);
    if (t.verdict == Verdict::RejectedAtBell) {
      ++rejected;
      CHECK(e.disturbed);
    }
  }
  // per-block miss probability is sizable, so most sessions must die
  CHECK(rejected > runs / 2);
}

TEST_CASE("disturbed enrollment refuses further sessions") {
  ProtocolConfig cfg = basic_cfg(2);
  RngStream rng(113, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  e.disturbed = true;
  SessionTranscript t = protocol::run_basic_session(e, cfg, rng);
  CHECK(t.verdict == Verdict::Aborted);
  CHECK(t.abort_reason == "enrollment-disturbed");
}

TEST_CASE("config mismatch aborts before any quantum traffic") {
  ProtocolConfig cfg = basic_cfg(4);
  RngStream rng(115, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  ProtocolConfig other = basic_cfg(5);
  SessionTranscript t = protocol::run_basic_session(e, other, rng);
  CHECK(t.verdict == Verdict::Aborted);
  CHECK(t.abort_reason == "config-mismatch");
}

TEST_CASE("absorbing the stream kills the session at the receive check") {
  ProtocolConfig cfg = basic_cfg(3);
  RngStream rng(117, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  protocol::QuantumTap tap;
  tap.intercept = [](protocol::FlyingQubit&) {
    return protocol::QuantumTap::Decision{protocol::QuantumTap::Action::Absorb,
                                          std::nullopt};
  };
  protocol::AdversaryHooks hooks;
  hooks.quantum_tap = &tap;
  SessionTranscript t = protocol::run_basic_session(e, cfg, rng, &hooks);
  CHECK(t.verdict == Verdict::Aborted);
  CHECK(t.abort_reason == "receive-timeout");
  CHECK(e.disturbed);
}

TEST_CASE("classical tap sees exactly the public messages") {
  ProtocolConfig cfg = extended_cfg(2, 3);
  RngStream rng(119, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  std::vector<std::string> phases;
  protocol::AdversaryHooks hooks;
  hooks.classical_tap = [&](const protocol::TranscriptEvent& ev) {
    CHECK(ev.classical);
    phases.push_back(ev.phase);
  };
  SessionTranscript t = protocol::run_extended_session(e, cfg, rng, &hooks);
  REQUIRE(t.verdict == Verdict::Accepted);
  // public traffic: start announcement, decoy disclosure, verdict
  REQUIRE(phases.size() == 3);
  CHECK(phases[0] == "announce-start");
  CHECK(phases[1] == "announce-decoys");
  CHECK(phases[2] == "verdict");
  // and the transcript holds quantum-side events the tap never saw
  CHECK(t.log.size() > phases.size());
}

TEST_CASE("discards are exactly the password kets in basic mode") {
  ProtocolConfig cfg = basic_cfg(5);
  RngStream rng(121, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  std::vector<std::pair<std::size_t, StateVector>> discards;
  protocol::AdversaryHooks hooks;
  hooks.discard_tap = [&](std::size_t block, const StateVector& q) {
    discards.emplace_back(block, q);
  };
  SessionTranscript t = protocol::run_basic_session(e, cfg, rng, &hooks);
  REQUIRE(t.verdict == Verdict::Accepted);
  REQUIRE(discards.size() == 5);
  for (const auto& [block, q] : discards) {
    StateVector want =
        primitives::make_password_ket(cfg.params, e.password.bits[block]);
    CHECK(qcore::overlap(q, want) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("extended discards do not depend on the password bit") {
  // under the round pad the discarded carrier is keyed to the pad, not to K;
  // collect discards and check their overlap pattern against the pad kets
  ProtocolConfig cfg = extended_cfg(4, 3);
  RngStream rng(123, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  std::vector<StateVector> discards;
  protocol::AdversaryHooks hooks;
  hooks.discard_tap = [&](std::size_t, const StateVector& q) {
    discards.push_back(q);
  };
  SessionTranscript t = protocol::run_extended_session(e, cfg, rng, &hooks);
  REQUIRE(t.verdict == Verdict::Accepted);
  REQUIRE(discards.size() == 4);
  StateVector k0 = primitives::make_password_ket(cfg.params, 0);
  StateVector k1 = primitives::make_password_ket(cfg.params, 1);
  for (const StateVector& q : discards) {
    double o0 = qcore::overlap(q, k0);
    double o1 = qcore::overlap(q, k1);
    // each discard is one of the two kets exactly - but which one is the
    // pad's coin, not the password's
    CHECK(std::max(o0, o1) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("flying qubit handles standalone and entangled positions") {
  RngStream rng(125, 0);
  protocol::FlyingQubit own(StateVector::basis(1, 0));
  CHECK(own.standalone());
  CHECK(own.measure_in(qcore::ProjectiveBasis::computational(1), rng) == 0);

  StateVector joint = primitives::make_bell(primitives::BellKind::Plus);
  protocol::FlyingQubit handle(&joint, 0);
  CHECK(!handle.standalone());
  CHECK_THROWS_AS(handle.state(), std::logic_error);
  std::size_t bit = handle.measure_in(qcore::ProjectiveBasis::computational(1), rng);
  // measuring one half of |Plus> collapses the partner to the same bit
  CHECK(std::abs(joint[bit * 2 + bit] - cplx{1.0, 0.0}) < 1e-12);

  StateVector single = StateVector::basis(1, 0);
  protocol::FlyingQubit q2(single);
  qcore::CMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  q2.transform(x);
  CHECK(std::abs(q2.state()[1] - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("unlock_and_verify accepts honest triples with certainty") {
  ProtocolConfig cfg = basic_cfg();
  primitives::LockUnitary lock = primitives::build_lock_unitary(cfg.params);
  RngStream rng(127, 0);
  for (int bit = 0; bit < 2; ++bit) {
    StateVector pair = bit ? primitives::make_locked_pair(cfg.params)
                           : primitives::make_bell(primitives::BellKind::Plus);
    for (int rep = 0; rep < 10; ++rep) {
      StateVector joint =
          qcore::tensor(primitives::make_password_ket(cfg.params, bit), pair);
      protocol::VerifyStep step =
          protocol::unlock_and_verify(lock, joint, 0, 1, 2, rng);
      CHECK(step.outcome == primitives::BellKind::Plus);
    }
  }
  StateVector joint = qcore::tensor(primitives::make_password_ket(cfg.params, 0),
                                    primitives::make_bell(primitives::BellKind::Plus));
  CHECK_THROWS_AS(protocol::unlock_and_verify(lock, joint, 0, 1, 1, rng),
                  std::invalid_argument);
}

TEST_CASE("transcript json carries the whole story") {
  ProtocolConfig cfg = extended_cfg(2, 2);
  RngStream rng(129, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  SessionTranscript t = protocol::run_extended_session(e, cfg, rng);
  nlohmann::json j = t.to_json();
  CHECK(j.at("schema") == "qpass-transcript/1");
  CHECK(j.at("mode") == "extended");
  CHECK(j.at("verdict") == "accepted");
  CHECK(j.at("abort_reason").is_null());
  CHECK(j.at("bell_outcomes").size() == 2);
  CHECK(j.at("decoy_ok").size() == 2);
  CHECK(j.at("log").is_array());
  CHECK(j.at("log").size() > 4);
}

TEST_CASE("enrollment json roundtrip is amplitude-exact") {
  ProtocolConfig cfg = basic_cfg(3);
  RngStream rng(131, 0);
  Enrollment e = protocol::enroll(cfg, rng);
  nlohmann::json j = protocol::enrollment_to_json(e);
  CHECK(j.at("schema") == "qpass-enrollment/1");
  Enrollment back = protocol::enrollment_from_json(j);
  REQUIRE(back.pairs.size() == e.pairs.size());
  CHECK(back.password.bits == e.password.bits);
  CHECK(back.next_round_id == e.next_round_id);
  for (std::size_t i = 0; i < e.pairs.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k) CHECK(back.pairs[i][k] == e.pairs[i][k]);

  nlohmann::json bad = j;
  bad["schema"] = "nope";
  CHECK_THROWS_AS(protocol::enrollment_from_json(bad), std::invalid_argument);
}

}  // TEST_SUITE
