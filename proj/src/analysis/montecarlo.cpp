#include "qpass/analysis/montecarlo.hpp"

#include <stdexcept>

namespace qpass::analysis {

using qcore::RngStream;

namespace {

constexpr std::uint64_t kScenarioStream = 0x73636e;  // draw domain separator
constexpr std::uint64_t kHaarStream = 0x686172;

[[noreturn]] void unknown(const ScenarioSpec& sc) {
  throw std::invalid_argument("monte_carlo: unknown scenario " + sc.name());
}

}  // namespace

DetectionStats monte_carlo(const ScenarioSpec& sc, std::uint64_t trials,
                           std::uint64_t seed, ParallelPolicy policy) {
  sc.cfg.validate();
  if (trials == 0) throw std::invalid_argument("monte_carlo: zero trials");
  RngStream base(seed, kScenarioStream);

  if (sc.attack == "honest") {
    if (sc.stage != "session") unknown(sc);
    std::uint64_t rejected = count_trials(
        trials, base,
        [&](std::uint64_t, RngStream& rng) {
          protocol::Enrollment enr = protocol::enroll(sc.cfg, rng);
          protocol::SessionTranscript t =
              sc.cfg.mode == protocol::Mode::Basic
                  ? protocol::run_basic_session(enr, sc.cfg, rng)
                  : protocol::run_extended_session(enr, sc.cfg, rng);
          return t.verdict != protocol::Verdict::Accepted;
        },
        policy);
    return DetectionStats::from_counts(rejected, trials);
  }

  if (sc.attack == "no-card") {
    adversary::ForgedInput forged = sc.forged;
    if (sc.forged_haar) {
      RngStream hr(seed, kHaarStream);
      forged = adversary::ForgedInput::random(hr);
    }
    adversary::NoCardResult r =
        adversary::attack_no_card(forged, sc.cfg, trials, base, policy);
    if (sc.stage == "block")
      return DetectionStats::from_counts(trials - r.block_pass.detections,
                                         trials);
    if (sc.stage == "session") return r.session_detection;
    unknown(sc);
  }

  if (sc.attack == "card-steal") {
    adversary::CardStealPassword pw =
        sc.pw_optimal ? adversary::CardStealPassword::optimal(sc.cfg.params)
                      : sc.pw;
    adversary::CardStealResult r =
        adversary::attack_with_stolen_card(pw, sc.cfg, trials, base, policy);
    if (sc.stage == "block") return r.block_detection;
    if (sc.stage == "session") return r.session_detection;
    unknown(sc);
  }

  if (sc.attack == "mitm") {
    if (sc.stage != "session") unknown(sc);
    adversary::ForgedInput forged = sc.forged;
    if (sc.forged_haar) {
      RngStream hr(seed, kHaarStream);
      forged = adversary::ForgedInput::random(hr);
    }
    return adversary::attack_mitm(forged, sc.cfg, trials, base, policy)
        .session_detection;
  }

  if (sc.attack == "intercept-resend") {
    adversary::InterceptResult r = adversary::attack_intercept_resend(
        sc.intercept, sc.cfg, trials, base, policy);
    if (sc.stage == "decoy") return r.per_decoy_flag;
    if (sc.stage == "session") return r.decoy_stage_detection;
    if (sc.stage == "total") return r.total_detection;
    unknown(sc);
  }

  unknown(sc);
}

nlohmann::json scenario_to_json(const ScenarioSpec& sc) {
  nlohmann::json forged = nlohmann::json::array();
  for (const qcore::cplx& a : sc.forged.amps)
    forged.push_back({a.real(), a.imag()});
  return nlohmann::json{
      {"schema", "qpass-scenario/1"},
      {"attack", sc.attack},
      {"stage", sc.stage},
      {"mode", protocol::mode_label(sc.cfg.mode)},
      {"blocks", sc.cfg.n_blocks},
      {"decoys", sc.cfg.n_decoys},
      {"decoy_error_budget", sc.cfg.decoy_error_budget},
      {"alpha", sc.cfg.params.alpha},
      {"delta", sc.cfg.params.delta},
      {"forged", forged},
      {"forged_haar", sc.forged_haar},
      {"pw", {{"r", sc.pw.r}, {"x", sc.pw.x}, {"y", sc.pw.y}}},
      {"pw_optimal", sc.pw_optimal},
      {"intercept_basis", adversary::intercept_basis_label(sc.intercept.basis)},
  };
}

ScenarioSpec scenario_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "qpass-scenario/1")
    throw std::invalid_argument("scenario_from_json: bad schema tag");
  ScenarioSpec sc;
  sc.attack = j.at("attack").get<std::string>();
  sc.stage = j.at("stage").get<std::string>();
  sc.cfg.mode = protocol::mode_from_label(j.at("mode").get<std::string>());
  sc.cfg.n_blocks = j.at("blocks").get<std::size_t>();
  sc.cfg.n_decoys = j.at("decoys").get<std::size_t>();
  sc.cfg.decoy_error_budget = j.value("decoy_error_budget", std::size_t{0});
  sc.cfg.params = primitives::ProtocolParams::from_alpha_delta(
      j.at("alpha").get<double>(), j.at("delta").get<double>());
  if (j.contains("forged")) {
    std::array<qcore::cplx, 4> a;
    const nlohmann::json& f = j.at("forged");
    if (!f.is_array() || f.size() != 4)
      throw std::invalid_argument("scenario_from_json: forged needs 4 amps");
    for (std::size_t i = 0; i < 4; ++i)
      a[i] = qcore::cplx{f[i].at(0).get<double>(), f[i].at(1).get<double>()};
    sc.forged = adversary::ForgedInput::from_amps(a);
  }
  sc.forged_haar = j.value("forged_haar", false);
  if (j.contains("pw")) {
    const nlohmann::json& w = j.at("pw");
    sc.pw = adversary::CardStealPassword::make(w.at("r").get<double>(),
                                               w.at("x").get<double>(),
                                               w.at("y").get<double>());
  }
  sc.pw_optimal = j.value("pw_optimal", true);
  sc.intercept.basis = adversary::intercept_basis_from_label(
      j.value("intercept_basis", "random-zx"));
  return sc;
}

}  // namespace qpass::analysis
