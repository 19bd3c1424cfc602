#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "qpass/adversary/attacks.hpp"
#include "qpass/analysis/formulas.hpp"
#include "qpass/qcore/ops.hpp"

using namespace qpass;
using adversary::CardStealPassword;
using adversary::ForgedInput;
using qcore::cplx;
using qcore::RngStream;
using qcore::StateVector;

namespace {

protocol::ProtocolConfig cfg_basic(std::size_t blocks = 4) {
  protocol::ProtocolConfig cfg;
  cfg.mode = protocol::Mode::Basic;
  cfg.n_blocks = blocks;
  cfg.n_decoys = 0;
  cfg.params = primitives::ProtocolParams::from_alpha_xi(0.5, 0.5);
  return cfg;
}

protocol::ProtocolConfig cfg_extended(std::size_t blocks, std::size_t decoys) {
  protocol::ProtocolConfig cfg = cfg_basic(blocks);
  cfg.mode = protocol::Mode::Extended;
  cfg.n_decoys = decoys;
  return cfg;
}

}  // namespace

TEST_SUITE("adversary") {

TEST_CASE("access policy blocks the forbidden sites") {
  using adversary::AccessSite;
  adversary::enforce_access_policy(
      {AccessSite::QuantumChannel, AccessSite::ClassicalChannel,
       AccessSite::VerifierDiscards});
  CHECK_THROWS_AS(adversary::enforce_access_policy({AccessSite::UserRegion}),
                  adversary::PolicyError);
  CHECK_THROWS_AS(
      adversary::enforce_access_policy({AccessSite::VerifierQuantumInternals}),
      adversary::PolicyError);

  // every shipped strategy passes the screen...
  for (adversary::AttackKind k :
       {adversary::AttackKind::NoCardForgery, adversary::AttackKind::CardSteal,
        adversary::AttackKind::ManInTheMiddle,
        adversary::AttackKind::InterceptResend,
        adversary::AttackKind::AccumulateDiscards})
    adversary::StrategyHandle{k};
  // ...but asking for extra reach does not
  CHECK_THROWS_AS(
      adversary::StrategyHandle(adversary::AttackKind::NoCardForgery,
                                {AccessSite::VerifierQuantumInternals}),
      adversary::PolicyError);
}

TEST_CASE("attack kind labels") {
  CHECK(std::string(adversary::attack_kind_label(
            adversary::AttackKind::InterceptResend)) == "intercept-resend");
  CHECK(adversary::required_sites(adversary::AttackKind::AccumulateDiscards)[0] ==
        adversary::AccessSite::VerifierDiscards);
}

TEST_CASE("forged inputs") {
  ForgedInput f = ForgedInput::computational(2);
  CHECK(f.amps[2] == cplx{1.0, 0.0});
  CHECK(f.state().num_qubits() == 2);
  CHECK_THROWS_AS(ForgedInput::computational(4), std::invalid_argument);
  CHECK_THROWS_AS(ForgedInput::from_amps({cplx{1.0, 0.0}, cplx{1.0, 0.0},
                                          cplx{0.0, 0.0}, cplx{0.0, 0.0}}),
                  std::invalid_argument);
  RngStream rng(3, 3);
  for (int i = 0; i < 10; ++i) {
    ForgedInput r = ForgedInput::random(rng);
    double n2 = 0.0;
    for (const cplx& a : r.amps) n2 += std::norm(a);
    CHECK(std::abs(n2 - 1.0) < 1e-12);
  }
}

TEST_CASE("card-steal password forgery lives on the Bloch ball") {
  CHECK_THROWS_AS(CardStealPassword::make(1.2, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CardStealPassword::make(0.5, 0.5, 0.1), std::invalid_argument);
  CardStealPassword pure = CardStealPassword::make(0.5, 0.5, 0.0);
  CHECK(pure.pure());
  CardStealPassword mixed = CardStealPassword::make(0.5, 0.2, 0.1);
  CHECK(!mixed.pure());

  qcore::DensityMatrix rho = mixed.rho();
  CHECK(std::abs(rho(0, 0) - cplx{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(rho(0, 1) - cplx{0.2, 0.1}) < 1e-15);

  primitives::ProtocolParams p = primitives::ProtocolParams::from_alpha_xi(0.5, 0.5);
  CardStealPassword opt = CardStealPassword::optimal(p);
  CHECK(opt.r == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(opt.x == doctest::Approx(p.beta / 2).epsilon(1e-15));
  CHECK(opt.y == 0.0);
  CHECK(opt.pure());
}

TEST_CASE("sampled kets reproduce the forged density matrix") {
  RngStream rng(5, 1);
  for (const CardStealPassword& pw :
       {CardStealPassword::make(0.7, 0.3, 0.2), CardStealPassword::make(0.4, 0.0, 0.0),
        CardStealPassword::make(0.5, 0.3, -0.2)}) {
    qcore::CMatrix avg(2, 2);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      StateVector k = pw.sample_ket(rng);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) avg(r, c) += k[r] * std::conj(k[c]);
    }
    avg = (cplx{1.0 / n, 0.0}) * avg;
    // mixing weights are sampled, so agreement is statistical
    CHECK(avg.max_abs_diff(pw.rho().matrix()) < 0.02);
  }
  // pure forgeries need no sampling at all
  CardStealPassword pure = CardStealPassword::make(0.5, 0.5, 0.0);
  StateVector k = pure.sample_ket(rng);
  qcore::CMatrix outer(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) outer(r, c) = k[r] * std::conj(k[c]);
  CHECK(outer.max_abs_diff(pure.rho().matrix()) < 1e-12);
}

TEST_CASE("intercept basis labels roundtrip") {
  using adversary::InterceptPolicy;
  for (InterceptPolicy::Basis b :
       {InterceptPolicy::Basis::RandomZX, InterceptPolicy::Basis::FixedZ,
        InterceptPolicy::Basis::FixedX, InterceptPolicy::Basis::Breidbart})
    CHECK(adversary::intercept_basis_from_label(
              adversary::intercept_basis_label(b)) == b);
  CHECK_THROWS_AS(adversary::intercept_basis_from_label("diagonal"),
                  std::invalid_argument);
}

TEST_CASE("helstrom discrimination hits the two-state optimum") {
  primitives::ProtocolParams p = primitives::ProtocolParams::from_alpha_xi(0.5, 0.5);
  adversary::HelstromMeasurement m = adversary::helstrom_for(p);
  // optimal success for |0> vs alpha|0>+beta|1>: (1 + beta)/2
  CHECK(std::abs(m.single_round_success - oracle::kHelstromDefault) < 1e-9);
  CHECK(m.p1_given_bit1 > m.p1_given_bit0);
  // response probabilities are consistent with the angle
  CHECK(m.p1_given_bit0 ==
        doctest::Approx(std::sin(m.theta) * std::sin(m.theta)).epsilon(1e-12));
  double hit1 = p.beta * std::cos(m.theta) - p.alpha * std::sin(m.theta);
  CHECK(m.p1_given_bit1 == doctest::Approx(hit1 * hit1).epsilon(1e-12));

  for (double a : {0.2, 0.6, 0.9}) {
    primitives::ProtocolParams q = primitives::ProtocolParams::from_alpha_xi(a, 0.5);
    adversary::HelstromMeasurement mq = adversary::helstrom_for(q);
    CHECK(std::abs(mq.single_round_success - (1.0 + q.beta) / 2.0) < 1e-9);
  }
}

TEST_CASE("no-card forgery statistics match the closed form") {
  protocol::ProtocolConfig cfg = cfg_basic(4);
  ForgedInput forged = ForgedInput::computational(0);
  const std::uint64_t trials = 4000;
  adversary::NoCardResult r =
      adversary::attack_no_card(forged, cfg, trials, RngStream(900, 0));
  double ps = analysis::ps_closed_form(forged, cfg.params);
  CHECK(ps == doctest::Approx(oracle::kPsForged00).epsilon(1e-12));
  CHECK(std::abs(r.block_pass.estimate - ps) < oracle::four_sigma(ps, trials));
  double want_session = oracle::session_detection(1.0 - ps, 4);
  CHECK(std::abs(r.session_detection.estimate - want_session) <
        oracle::four_sigma(want_session, trials));
  CHECK_THROWS_AS(adversary::attack_no_card(forged, cfg, 0, RngStream(0, 0)),
                  std::invalid_argument);
}

TEST_CASE("card-steal statistics match the closed form at the optimum") {
  protocol::ProtocolConfig cfg = cfg_basic(4);
  CardStealPassword pw = CardStealPassword::optimal(cfg.params);
  const std::uint64_t trials = 4000;
  adversary::CardStealResult r =
      adversary::attack_with_stolen_card(pw, cfg, trials, RngStream(901, 0));
  CHECK(std::abs(r.block_detection.estimate - oracle::kDefaultPn) <
        oracle::four_sigma(oracle::kDefaultPn, trials));
  double want_session = oracle::session_detection(oracle::kDefaultPn, 4);
  CHECK(std::abs(r.session_detection.estimate - want_session) <
        oracle::four_sigma(want_session, trials));
}

TEST_CASE("mitm relay is detected like a no-card forgery") {
  protocol::ProtocolConfig cfg = cfg_basic(3);
  ForgedInput forged = ForgedInput::computational(0);
  const std::uint64_t trials = 4000;
  adversary::MitmResult r =
      adversary::attack_mitm(forged, cfg, trials, RngStream(902, 0));
  CHECK(r.qubits_banked_per_session == 6);
  double ps = analysis::ps_closed_form(forged, cfg.params);
  double want = oracle::session_detection(1.0 - ps, 3);
  CHECK(std::abs(r.session_detection.estimate - want) <
        oracle::four_sigma(want, trials));

  RngStream rng(903, 0);
  protocol::SessionTranscript t = adversary::attack_mitm_absorb(cfg, rng);
  CHECK(t.verdict == protocol::Verdict::Aborted);
  CHECK(t.abort_reason == "receive-timeout");
}

TEST_CASE("intercept-resend flags random-basis decoys at one quarter") {
  protocol::ProtocolConfig cfg = cfg_extended(2, 8);
  adversary::InterceptPolicy policy;  // random-zx
  const std::uint64_t trials = 2500;
  adversary::InterceptResult r =
      adversary::attack_intercept_resend(policy, cfg, trials, RngStream(904, 0));
  // per-decoy flag rate: trials * 8 observations
  double n_obs = static_cast<double>(r.per_decoy_flag.trials);
  CHECK(n_obs == trials * 8.0);
  CHECK(std::abs(r.per_decoy_flag.estimate - 0.25) < oracle::four_sigma(0.25, n_obs));
  double want_stage = oracle::session_detection(0.25, 8);
  CHECK(std::abs(r.decoy_stage_detection.estimate - want_stage) <
        oracle::four_sigma(want_stage, trials));
  // the screen can only do better once bell checks join in
  CHECK(r.total_detection.estimate >= r.decoy_stage_detection.estimate);

  protocol::ProtocolConfig basic = cfg_basic(2);
  CHECK_THROWS_AS(
      adversary::attack_intercept_resend(policy, basic, 10, RngStream(0, 0)),
      std::invalid_argument);
}

TEST_CASE("fixed-basis interception is caught more often than random") {
  protocol::ProtocolConfig cfg = cfg_extended(1, 8);
  const std::uint64_t trials = 1500;
  adversary::InterceptPolicy fixed_z;
  fixed_z.basis = adversary::InterceptPolicy::Basis::FixedZ;
  adversary::InterceptResult r =
      adversary::attack_intercept_resend(fixed_z, cfg, trials, RngStream(905, 0));
  // X-basis decoys get scrambled half the time, Z ones never: flag rate 1/4
  CHECK(std::abs(r.per_decoy_flag.estimate - 0.25) <
        oracle::four_sigma(0.25, static_cast<double>(r.per_decoy_flag.trials)));

  adversary::InterceptPolicy breid;
  breid.basis = adversary::InterceptPolicy::Basis::Breidbart;
  adversary::InterceptResult rb =
      adversary::attack_intercept_resend(breid, cfg, trials, RngStream(906, 0));
  // Breidbart disturbs every decoy: flag rate sin^2(pi/8) = 0.1464466
  double want = 0.5 - 0.25 * 1.4142135623730951;
  want = 0.5 + want;  // 1/2 (1 - cos(pi/4)) ... keep the arithmetic visible
  want = 0.5 * (1.0 - 0.7071067811865476);
  CHECK(std::abs(rb.per_decoy_flag.estimate - want) <
        oracle::four_sigma(want, static_cast<double>(rb.per_decoy_flag.trials)));
}

TEST_CASE("accumulating discards reads the password in basic mode") {
  protocol::ProtocolConfig cfg = cfg_basic(4);
  const std::uint64_t rounds = 16, trials = 25;
  adversary::AccumulateReport rep = adversary::attack_accumulate_discards(
      cfg, rounds, {1, 4, 16}, trials, RngStream(907, 0));
  REQUIRE(rep.accuracy.size() == 3);
  CHECK(rep.bits_per_trial == 4);
  CHECK(rep.trials == trials);
  // single round is already the helstrom success rate; 16 rounds is nearly sure
  CHECK(rep.accuracy[0] > 0.8);
  CHECK(rep.accuracy[2] > 0.95);
  CHECK(rep.accuracy[2] >= rep.accuracy[0]);
}

TEST_CASE("the round pad blinds the accumulating attacker in extended mode") {
  protocol::ProtocolConfig cfg = cfg_extended(4, 2);
  const std::uint64_t rounds = 8, trials = 40;
  adversary::AccumulateReport rep = adversary::attack_accumulate_discards(
      cfg, rounds, {8}, trials, RngStream(908, 0));
  // 160 guessed bits at coin-flip accuracy
  double sigma = 0.5 / std::sqrt(static_cast<double>(trials * 4));
  CHECK(std::abs(rep.accuracy[0] - 0.5) < 4.0 * sigma);
}

TEST_CASE("accumulate rejects malformed checkpoint lists") {
  protocol::ProtocolConfig cfg = cfg_basic(2);
  RngStream base(909, 0);
  CHECK_THROWS_AS(
      adversary::attack_accumulate_discards(cfg, 10, {}, 5, base),
      std::invalid_argument);
  CHECK_THROWS_AS(
      adversary::attack_accumulate_discards(cfg, 10, {4, 2}, 5, base),
      std::invalid_argument);
  CHECK_THROWS_AS(
      adversary::attack_accumulate_discards(cfg, 10, {4, 11}, 5, base),
      std::invalid_argument);
  CHECK_THROWS_AS(
      adversary::attack_accumulate_discards(cfg, 10, {0, 4}, 5, base),
      std::invalid_argument);
}

}  // TEST_SUITE
