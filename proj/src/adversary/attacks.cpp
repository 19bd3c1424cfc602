#include "qpass/adversary/attacks.hpp"

#include <cmath>
#include <stdexcept>

#include "qpass/primitives/bell.hpp"
#include "qpass/qcore/ops.hpp"

namespace qpass::adversary {

using analysis::DetectionStats;
using primitives::BellKind;
using protocol::unlock_and_verify;
using qcore::RngStream;
using qcore::StateVector;

namespace {

// fresh enrolled pair for one block: Bell pair, rotation-locked on bit 1
StateVector draw_enrolled_pair(const primitives::ProtocolParams& p,
                               const StateVector& plain,
                               const StateVector& locked, RngStream& rng) {
  (void)p;
  return rng.uniform_int(2) != 0 ? locked : plain;
}

}  // namespace

NoCardResult attack_no_card(const ForgedInput& forged,
                            const protocol::ProtocolConfig& cfg,
                            std::uint64_t trials, const RngStream& base,
                            analysis::ParallelPolicy policy) {
  StrategyHandle strategy(AttackKind::NoCardForgery);
  (void)strategy;
  cfg.validate();
  if (trials == 0) throw std::invalid_argument("attack_no_card: zero trials");

  const primitives::LockUnitary lock = primitives::build_lock_unitary(cfg.params);
  const StateVector psi = forged.state();
  const StateVector plain = primitives::make_bell(BellKind::Plus);
  const StateVector locked = primitives::make_locked_pair(cfg.params);

  // The genuine card half never leaves the user, so each block the verifier
  // touches is (forged pwd', forged card', genuine card, store) with the
  // check running on (pwd'=0, card'=1, store=3).
  auto check_block = [&](RngStream& rng) {
    StateVector pair = draw_enrolled_pair(cfg.params, plain, locked, rng);
    StateVector joint = qcore::tensor(psi, pair);
    return unlock_and_verify(lock, joint, 0, 1, 3, rng).outcome == BellKind::Plus;
  };

  std::uint64_t passes = analysis::count_trials(
      trials, base.substream(0),
      [&](std::uint64_t, RngStream& rng) { return check_block(rng); }, policy);

  std::uint64_t detected = analysis::count_trials(
      trials, base.substream(1),
      [&](std::uint64_t, RngStream& rng) {
        for (std::size_t b = 0; b < cfg.n_blocks; ++b)
          if (!check_block(rng)) return true;
        return false;
      },
      policy);

  return NoCardResult{DetectionStats::from_counts(passes, trials),
                      DetectionStats::from_counts(detected, trials)};
}

CardStealResult attack_with_stolen_card(const CardStealPassword& pw,
                                        const protocol::ProtocolConfig& cfg,
                                        std::uint64_t trials,
                                        const RngStream& base,
                                        analysis::ParallelPolicy policy) {
  StrategyHandle strategy(AttackKind::CardSteal);
  (void)strategy;
  cfg.validate();
  if (trials == 0)
    throw std::invalid_argument("attack_with_stolen_card: zero trials");

  const primitives::LockUnitary lock = primitives::build_lock_unitary(cfg.params);
  const StateVector plain = primitives::make_bell(BellKind::Plus);
  const StateVector locked = primitives::make_locked_pair(cfg.params);

  // E holds the card, so the genuine halves fly and only the password qubit
  // is forged; the verifier sees a plain (pwd, card, store) triple.
  auto check_block = [&](RngStream& rng) {
    StateVector pair = draw_enrolled_pair(cfg.params, plain, locked, rng);
    StateVector joint = qcore::tensor(pw.sample_ket(rng), pair);
    return unlock_and_verify(lock, joint, 0, 1, 2, rng).outcome == BellKind::Plus;
  };

  std::uint64_t block_detected = analysis::count_trials(
      trials, base.substream(0),
      [&](std::uint64_t, RngStream& rng) { return !check_block(rng); }, policy);

  std::uint64_t session_detected = analysis::count_trials(
      trials, base.substream(1),
      [&](std::uint64_t, RngStream& rng) {
        for (std::size_t b = 0; b < cfg.n_blocks; ++b)
          if (!check_block(rng)) return true;
        return false;
      },
      policy);

  return CardStealResult{DetectionStats::from_counts(block_detected, trials),
                         DetectionStats::from_counts(session_detected, trials)};
}

MitmResult attack_mitm(const ForgedInput& forged,
                       const protocol::ProtocolConfig& cfg, std::uint64_t trials,
                       const RngStream& base, analysis::ParallelPolicy policy) {
  StrategyHandle strategy(AttackKind::ManInTheMiddle);
  (void)strategy;
  cfg.validate();
  if (trials == 0) throw std::invalid_argument("attack_mitm: zero trials");

  const primitives::LockUnitary lock = primitives::build_lock_unitary(cfg.params);
  const StateVector psi = forged.state();
  const StateVector plain = primitives::make_bell(BellKind::Plus);
  const StateVector locked = primitives::make_locked_pair(cfg.params);

  // E banks the genuine qubits and forwards forgeries. The banked card half
  // stays entangled with the store as a spectator (position 2), which makes
  // the verifier's statistics those of the no-card forgery.
  std::uint64_t detected = analysis::count_trials(
      trials, base.substream(0),
      [&](std::uint64_t, RngStream& rng) {
        for (std::size_t b = 0; b < cfg.n_blocks; ++b) {
          StateVector pair = draw_enrolled_pair(cfg.params, plain, locked, rng);
          StateVector joint = qcore::tensor(psi, pair);
          if (unlock_and_verify(lock, joint, 0, 1, 3, rng).outcome !=
              BellKind::Plus)
            return true;
        }
        return false;
      },
      policy);

  MitmResult out;
  out.session_detection = DetectionStats::from_counts(detected, trials);
  out.qubits_banked_per_session = 2 * cfg.n_blocks;
  return out;
}

protocol::SessionTranscript attack_mitm_absorb(
    const protocol::ProtocolConfig& cfg, RngStream& rng) {
  StrategyHandle strategy(AttackKind::ManInTheMiddle);
  (void)strategy;
  protocol::Enrollment enr = protocol::enroll(cfg, rng);
  protocol::QuantumTap tap;
  tap.intercept = [](protocol::FlyingQubit&) {
    return protocol::QuantumTap::Decision{protocol::QuantumTap::Action::Absorb,
                                          std::nullopt};
  };
  protocol::AdversaryHooks hooks;
  hooks.quantum_tap = &tap;
  return cfg.mode == protocol::Mode::Basic
             ? protocol::run_basic_session(enr, cfg, rng, &hooks)
             : protocol::run_extended_session(enr, cfg, rng, &hooks);
}

InterceptResult attack_intercept_resend(const InterceptPolicy& policy,
                                        const protocol::ProtocolConfig& cfg,
                                        std::uint64_t trials,
                                        const RngStream& base,
                                        analysis::ParallelPolicy par) {
  StrategyHandle strategy(AttackKind::InterceptResend);
  (void)strategy;
  cfg.validate();
  if (cfg.mode != protocol::Mode::Extended)
    throw std::invalid_argument(
        "attack_intercept_resend: decoy screening runs in extended mode");
  if (trials == 0)
    throw std::invalid_argument("attack_intercept_resend: zero trials");

  static const double kCos8 = std::cos(0.39269908169872415481);  // pi/8
  static const double kSin8 = std::sin(0.39269908169872415481);
  const qcore::ProjectiveBasis breidbart = qcore::ProjectiveBasis::from_states(
      {StateVector({qcore::cplx{kCos8, 0.0}, qcore::cplx{kSin8, 0.0}}),
       StateVector({qcore::cplx{-kSin8, 0.0}, qcore::cplx{kCos8, 0.0}})},
      {"0", "1"});

  // acc = {decoy mismatches, decoys checked, decoy-stage rejects, any reject}
  std::vector<std::uint64_t> acc = analysis::sum_trials(
      trials, 4, base,
      [&](std::uint64_t, RngStream& rng, std::vector<std::uint64_t>& out) {
        RngStream session_rng = rng.substream(0);
        RngStream tap_rng = rng.substream(1);
        protocol::Enrollment enr = protocol::enroll(cfg, session_rng);
        protocol::QuantumTap tap;
        tap.intercept = [&](protocol::FlyingQubit& q) {
          const qcore::ProjectiveBasis* b = nullptr;
          switch (policy.basis) {
            case InterceptPolicy::Basis::RandomZX:
              b = tap_rng.uniform_int(2) != 0 ? &primitives::decoy_x_basis()
                                              : &primitives::decoy_z_basis();
              break;
            case InterceptPolicy::Basis::FixedZ:
              b = &primitives::decoy_z_basis();
              break;
            case InterceptPolicy::Basis::FixedX:
              b = &primitives::decoy_x_basis();
              break;
            case InterceptPolicy::Basis::Breidbart:
              b = &breidbart;
              break;
          }
          q.measure_in(*b, tap_rng);
          return protocol::QuantumTap::Decision{};
        };
        protocol::AdversaryHooks hooks;
        hooks.quantum_tap = &tap;
        protocol::SessionTranscript t =
            protocol::run_extended_session(enr, cfg, session_rng, &hooks);
        for (bool ok : t.decoy_ok) {
          out[1] += 1;
          out[0] += ok ? 0u : 1u;
        }
        out[2] += t.verdict == protocol::Verdict::RejectedAtDecoy ? 1u : 0u;
        out[3] += t.verdict != protocol::Verdict::Accepted ? 1u : 0u;
      },
      par);

  InterceptResult out;
  out.per_decoy_flag = DetectionStats::from_counts(acc[0], acc[1]);
  out.decoy_stage_detection = DetectionStats::from_counts(acc[2], trials);
  out.total_detection = DetectionStats::from_counts(acc[3], trials);
  return out;
}

AccumulateReport attack_accumulate_discards(
    const protocol::ProtocolConfig& cfg, std::uint64_t rounds,
    const std::vector<std::uint64_t>& checkpoints, std::uint64_t trials,
    const RngStream& base, analysis::ParallelPolicy policy) {
  StrategyHandle strategy(AttackKind::AccumulateDiscards);
  (void)strategy;
  cfg.validate();
  if (trials == 0 || rounds == 0)
    throw std::invalid_argument("attack_accumulate_discards: empty run");
  if (checkpoints.empty())
    throw std::invalid_argument("attack_accumulate_discards: no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || checkpoints[i] > rounds ||
        (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
      throw std::invalid_argument(
          "attack_accumulate_discards: checkpoints must be increasing and "
          "within rounds");
  }

  const HelstromMeasurement meas = helstrom_for(cfg.params);
  const double c = std::cos(meas.theta), s = std::sin(meas.theta);
  const qcore::ProjectiveBasis helstrom_basis =
      qcore::ProjectiveBasis::from_states(
          {StateVector({qcore::cplx{c, 0.0}, qcore::cplx{s, 0.0}}),
           StateVector({qcore::cplx{-s, 0.0}, qcore::cplx{c, 0.0}})},
          {"0", "1"});
  const double eps = 1e-12;
  const double l1 = std::log(std::max(meas.p1_given_bit1, eps) /
                             std::max(meas.p1_given_bit0, eps));
  const double l0 = std::log(std::max(1.0 - meas.p1_given_bit1, eps) /
                             std::max(1.0 - meas.p1_given_bit0, eps));

  // per checkpoint: how many bits were guessed right, summed over trials
  std::vector<std::uint64_t> correct = analysis::sum_trials(
      trials, checkpoints.size(), base,
      [&](std::uint64_t, RngStream& rng, std::vector<std::uint64_t>& out) {
        RngStream session_rng = rng.substream(0);
        RngStream meter_rng = rng.substream(1);
        protocol::Enrollment enr = protocol::enroll(cfg, session_rng);
        std::vector<std::uint64_t> ones(cfg.n_blocks, 0);
        protocol::AdversaryHooks hooks;
        hooks.discard_tap = [&](std::size_t block, const StateVector& q) {
          ones[block] +=
              qcore::measure(q, helstrom_basis, meter_rng).index;
        };
        std::size_t next_cp = 0;
        for (std::uint64_t r = 1; r <= rounds; ++r) {
          protocol::SessionTranscript t =
              cfg.mode == protocol::Mode::Basic
                  ? protocol::run_basic_session(enr, cfg, session_rng, &hooks)
                  : protocol::run_extended_session(enr, cfg, session_rng,
                                                   &hooks);
          if (t.verdict != protocol::Verdict::Accepted)
            throw std::runtime_error(
                "attack_accumulate_discards: honest round rejected");
          if (next_cp < checkpoints.size() && r == checkpoints[next_cp]) {
            for (std::size_t b = 0; b < cfg.n_blocks; ++b) {
              double llr = static_cast<double>(ones[b]) * l1 +
                           static_cast<double>(r - ones[b]) * l0;
              int guess = llr > 0.0 ? 1 : 0;
              out[next_cp] += guess == enr.password.bits[b] ? 1u : 0u;
            }
            ++next_cp;
          }
        }
      },
      policy);

  AccumulateReport rep;
  rep.checkpoints = checkpoints;
  rep.measurement = meas;
  rep.trials = trials;
  rep.bits_per_trial = cfg.n_blocks;
  rep.accuracy.reserve(checkpoints.size());
  for (std::uint64_t k : correct)
    rep.accuracy.push_back(static_cast<double>(k) /
                           (static_cast<double>(trials) *
                            static_cast<double>(cfg.n_blocks)));
  return rep;
}

}  // namespace qpass::adversary
