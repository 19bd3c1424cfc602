#include "qpass/cli/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpass/adversary/attacks.hpp"
#include "qpass/analysis/formulas.hpp"
#include "qpass/analysis/montecarlo.hpp"
#include "qpass/analysis/optimize.hpp"
#include "qpass/analysis/reporting.hpp"
#include "qpass/protocol/session.hpp"

namespace qpass::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kMissingFixture = 3;
constexpr int kWriteError = 4;
constexpr int kVerifyFailed = 5;

// One logical option that may be registered on several subcommands; only the
// parsed subcommand ever has a nonzero count, so "was it given" is a scan.
struct Opt {
  std::vector<CLI::Option*> regs;
  void operator+=(CLI::Option* o) { regs.push_back(o); }
  bool given() const {
    return std::any_of(regs.begin(), regs.end(),
                       [](CLI::Option* o) { return o->count() > 0; });
  }
};

// Flag staging area; values land here from CLI11, precedence is
// flag > config file > built-in default.
struct Raw {
  std::string config_path;
  std::string out_dir;
  double alpha = 0.5;
  double delta = 0.0;
  double xi = 0.5;
  std::string mode = "basic";
  std::size_t blocks = 8;
  std::size_t decoys = 32;
  std::size_t decoy_budget = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100000;
  std::uint64_t rounds = 1;
  std::string out_file;
  std::string fixture;
  std::string save_fixture;
  std::string kind;
  std::string stage;
  std::string basis = "random-zx";
  std::size_t forged_basis = 0;
  bool forged_haar = false;
  double pw_r = 0.0, pw_x = 0.0, pw_y = 0.0;
  std::string checkpoints;
  std::size_t grid = 9;
  std::size_t forgeries = 100;
  std::size_t starts = 64;
  std::uint64_t budget = 600000;
  std::string dump_lock;

  Opt o_out_dir, o_alpha, o_delta, o_xi, o_mode, o_blocks, o_decoys,
      o_decoy_budget, o_seed, o_trials, o_rounds, o_out_file, o_fixture,
      o_kind, o_stage, o_basis, o_forged_basis, o_forged_haar, o_pw_r, o_pw_x,
      o_pw_y, o_checkpoints, o_grid, o_forgeries, o_starts, o_budget;
};

// every key the config file may carry; anything else is a typo we refuse
const std::vector<std::string> kTopKeys = {
    "schema", "out_dir", "alpha",  "delta",  "xi",
    "mode",   "blocks",  "decoys", "decoy_error_budget",
    "seed",   "trials",  "rounds", "fixture", "out",
    "attack", "verify"};
const std::vector<std::string> kAttackKeys = {
    "kind",        "stage", "basis",       "forged_basis",
    "forged_haar", "pw",    "checkpoints", "rounds"};
const std::vector<std::string> kVerifyKeys = {"grid", "forgeries", "starts",
                                              "budget"};

json load_config(const std::string& path, std::vector<std::string>& errs) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) {
    errs.push_back("config file not readable: " + path);
    return json::object();
  }
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    errs.push_back(std::string("config parse error: ") + e.what());
    return json::object();
  }
  if (!j.is_object()) {
    errs.push_back("config root must be an object");
    return json::object();
  }
  if (j.value("schema", "") != "qpass-config/1")
    errs.push_back("config schema must be \"qpass-config/1\"");
  auto complain = [&](const json& obj, const std::vector<std::string>& known,
                      const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (std::find(known.begin(), known.end(), it.key()) == known.end())
        errs.push_back(std::string("unknown config key ") + where + it.key());
  };
  complain(j, kTopKeys, "");
  if (j.contains("attack") && j["attack"].is_object())
    complain(j["attack"], kAttackKeys, "attack.");
  if (j.contains("verify") && j["verify"].is_object())
    complain(j["verify"], kVerifyKeys, "verify.");
  return j;
}

template <class T>
T pick(const Opt& opt, const T& flag_value, const json& cfg, const char* key,
       const T& fallback, std::vector<std::string>* errs = nullptr) {
  if (opt.given()) return flag_value;
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const std::exception&) {
      if (errs)
        errs->push_back(std::string("config value for ") + key +
                        " has the wrong type");
    }
  }
  return fallback;
}

// the merged, validated inputs a command actually runs on
struct Effective {
  std::string out_dir;
  protocol::ProtocolConfig cfg;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t rounds = 1;
  std::string out_file;
  std::string fixture;
  bool fixture_given = false;
  json file;  // raw config file content
  json echo;  // provenance blob embedded in every output
};

std::optional<primitives::ProtocolParams> merge_params(
    const Raw& r, const json& cfg, std::vector<std::string>& errs) {
  const bool f_delta = r.o_delta.given(), f_xi = r.o_xi.given();
  const bool c_delta = cfg.contains("delta"), c_xi = cfg.contains("xi");
  if (f_delta && f_xi) {
    errs.push_back("--delta and --xi are mutually exclusive");
    return std::nullopt;
  }
  if (c_delta && c_xi && !f_delta && !f_xi) {
    errs.push_back("config sets both delta and xi; keep one");
    return std::nullopt;
  }
  double alpha = pick(r.o_alpha, r.alpha, cfg, "alpha", 0.5, &errs);
  try {
    if (f_delta)
      return primitives::ProtocolParams::from_alpha_delta(alpha, r.delta);
    if (f_xi) return primitives::ProtocolParams::from_alpha_xi(alpha, r.xi);
    if (c_delta)
      return primitives::ProtocolParams::from_alpha_delta(
          alpha, cfg.at("delta").get<double>());
    if (c_xi)
      return primitives::ProtocolParams::from_alpha_xi(
          alpha, cfg.at("xi").get<double>());
    return primitives::ProtocolParams::from_alpha_xi(alpha, 0.5);
  } catch (const std::exception& e) {
    errs.push_back(std::string("bad protocol parameters: ") + e.what());
    return std::nullopt;
  }
}

std::optional<Effective> merge_common(const Raw& r, bool needs_seed,
                                      const char* command) {
  std::vector<std::string> errs;
  json cfg = load_config(r.config_path, errs);

  Effective e;
  e.file = cfg;
  if (r.o_out_dir.given())
    e.out_dir = r.out_dir;
  else if (cfg.contains("out_dir"))
    e.out_dir = cfg.at("out_dir").get<std::string>();
  else if (const char* env = std::getenv("QPASS_OUT_DIR"); env && *env)
    e.out_dir = env;
  else
    e.out_dir = ".";

  auto params = merge_params(r, cfg, errs);

  std::string mode =
      pick(r.o_mode, r.mode, cfg, "mode", std::string("basic"), &errs);
  try {
    e.cfg.mode = protocol::mode_from_label(mode);
  } catch (const std::exception& ex) {
    errs.push_back(ex.what());
  }
  e.cfg.n_blocks =
      pick(r.o_blocks, r.blocks, cfg, "blocks", std::size_t{8}, &errs);
  e.cfg.n_decoys =
      pick(r.o_decoys, r.decoys, cfg, "decoys", std::size_t{32}, &errs);
  if (e.cfg.mode == protocol::Mode::Basic && !r.o_decoys.given() &&
      !cfg.contains("decoys"))
    e.cfg.n_decoys = 0;  // basic mode carries no decoys unless asked
  e.cfg.decoy_error_budget = pick(r.o_decoy_budget, r.decoy_budget, cfg,
                                  "decoy_error_budget", std::size_t{0}, &errs);
  e.trials =
      pick(r.o_trials, r.trials, cfg, "trials", std::uint64_t{100000}, &errs);
  e.rounds = pick(r.o_rounds, r.rounds, cfg, "rounds", std::uint64_t{1}, &errs);
  e.out_file = pick(r.o_out_file, r.out_file, cfg, "out", std::string());
  e.fixture = pick(r.o_fixture, r.fixture, cfg, "fixture", std::string());
  e.fixture_given = r.o_fixture.given() || cfg.contains("fixture");

  if (r.o_seed.given() || cfg.contains("seed")) {
    e.seed = pick(r.o_seed, r.seed, cfg, "seed", std::uint64_t{0}, &errs);
  } else if (needs_seed) {
    errs.push_back("seed is required (--seed or config \"seed\")");
  }

  if (params) {
    e.cfg.params = *params;
    e.cfg.seed = e.seed;
    try {
      e.cfg.validate();
    } catch (const std::exception& ex) {
      errs.push_back(ex.what());
    }
  }

  if (!errs.empty()) {
    std::cerr << "config error (" << command << "):\n";
    for (const std::string& s : errs) std::cerr << "  - " << s << "\n";
    return std::nullopt;
  }

  e.echo = json{{"schema", "qpass-config/1"},
                {"command", command},
                {"out_dir", e.out_dir},
                {"mode", protocol::mode_label(e.cfg.mode)},
                {"blocks", e.cfg.n_blocks},
                {"decoys", e.cfg.n_decoys},
                {"decoy_error_budget", e.cfg.decoy_error_budget},
                {"alpha", e.cfg.params.alpha},
                {"delta", e.cfg.params.delta},
                {"xi", e.cfg.params.xi},
                {"seed", e.seed},
                {"trials", e.trials},
                {"rounds", e.rounds}};
  return e;
}

fs::path out_path(const Effective& e, const std::string& name) {
  return fs::path(e.out_dir) / (e.out_file.empty() ? name : e.out_file);
}

bool ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) std::cerr << "cannot create " << dir << ": " << ec.message() << "\n";
  return !ec;
}

bool write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
  os.flush();
  if (!os.good()) {
    std::cerr << "write failed: " << p.string() << "\n";
    return false;
  }
  return true;
}

bool write_json_file(const fs::path& p, const json& j) {
  return write_file(p, j.dump(2) + "\n");
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& s,
                                             std::uint64_t rounds) {
  std::vector<std::uint64_t> cps;
  if (s.empty()) {
    for (std::uint64_t c = 1; c < rounds; c *= 2) cps.push_back(c);
    if (cps.empty() || cps.back() != rounds) cps.push_back(rounds);
    return cps;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) cps.push_back(std::stoull(tok));
  return cps;
}

int cmd_enroll(const Raw& r) {
  auto e = merge_common(r, /*needs_seed=*/true, "enroll");
  if (!e) return kConfigError;
  if (!ensure_out_dir(e->out_dir)) return kWriteError;
  qcore::RngStream rng(e->seed, 0x656e726c);
  protocol::Enrollment enr = protocol::enroll(e->cfg, rng);
  json j = protocol::enrollment_to_json(enr);
  j["config"] = e->echo;
  fs::path p = out_path(*e, "enrollment.json");
  if (!write_json_file(p, j)) return kWriteError;
  std::cout << "enrolled " << e->cfg.n_blocks << " blocks -> " << p.string()
            << "\n";
  return kOk;
}

int cmd_run(const Raw& r) {
  auto e = merge_common(r, /*needs_seed=*/true, "run");
  if (!e) return kConfigError;
  if (!ensure_out_dir(e->out_dir)) return kWriteError;

  qcore::RngStream rng(e->seed, 0x73657373);
  protocol::Enrollment enr;
  if (e->fixture_given) {
    std::ifstream in(e->fixture);
    if (!in) {
      std::cerr << "fixture not found: " << e->fixture << "\n";
      return kMissingFixture;
    }
    json j;
    try {
      in >> j;
      enr = protocol::enrollment_from_json(j);
    } catch (const std::exception& ex) {
      std::cerr << "fixture unreadable: " << ex.what() << "\n";
      return kMissingFixture;
    }
  } else {
    enr = protocol::enroll(e->cfg, rng);
  }

  json transcripts = json::array();
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < e->rounds; ++i) {
    protocol::SessionTranscript t =
        e->cfg.mode == protocol::Mode::Basic
            ? protocol::run_basic_session(enr, e->cfg, rng)
            : protocol::run_extended_session(enr, e->cfg, rng);
    accepted += t.verdict == protocol::Verdict::Accepted ? 1 : 0;
    transcripts.push_back(t.to_json());
  }

  json out{{"schema", "qpass-transcripts/1"},
           {"config", e->echo},
           {"accepted", accepted},
           {"rounds", e->rounds},
           {"transcripts", std::move(transcripts)}};
  fs::path p = out_path(*e, "transcripts.json");
  if (!write_json_file(p, out)) return kWriteError;

  if (e->fixture_given) {
    // the fixture holds live credential state; persist the updated blocks
    json fx = protocol::enrollment_to_json(enr);
    fx["config"] = e->echo;
    if (!write_json_file(fs::path(e->fixture), fx)) return kWriteError;
  } else if (!r.save_fixture.empty()) {
    json fx = protocol::enrollment_to_json(enr);
    fx["config"] = e->echo;
    if (!write_json_file(fs::path(e->out_dir) / r.save_fixture, fx))
      return kWriteError;
  }

  std::cout << "rounds=" << e->rounds << " accepted=" << accepted << " -> "
            << p.string() << "\n";
  return kOk;
}

int cmd_attack(const Raw& r) {
  auto e = merge_common(r, /*needs_seed=*/true, "attack");
  if (!e) return kConfigError;

  json acfg = e->file.value("attack", json::object());
  std::string kind = pick(r.o_kind, r.kind, acfg, "kind", std::string());
  if (kind.empty()) {
    std::cerr << "config error (attack):\n  - attack kind is required "
                 "(--kind or config attack.kind)\n";
    return kConfigError;
  }
  std::string default_stage = kind == "intercept-resend"
                                  ? std::string("decoy")
                                  : std::string("session");
  std::string stage = pick(r.o_stage, r.stage, acfg, "stage", default_stage);
  e->echo["attack"] = {{"kind", kind}, {"stage", stage}};
  if (!ensure_out_dir(e->out_dir)) return kWriteError;

  try {
    if (kind == "accumulate") {
      std::uint64_t rounds =
          pick(r.o_rounds, r.rounds, acfg, "rounds", std::uint64_t{200});
      std::vector<std::uint64_t> cps;
      if (!r.o_checkpoints.given() && acfg.contains("checkpoints"))
        cps = acfg.at("checkpoints").get<std::vector<std::uint64_t>>();
      else
        cps = parse_checkpoints(r.checkpoints, rounds);
      e->echo["attack"]["rounds"] = rounds;
      e->echo["attack"]["checkpoints"] = cps;
      qcore::RngStream base(e->seed, 0x616363);
      adversary::AccumulateReport rep = adversary::attack_accumulate_discards(
          e->cfg, rounds, cps, e->trials, base);
      std::ostringstream csv;
      csv << "# " << e->echo.dump() << "\n";
      csv << "checkpoint,accuracy,trials,bits_per_trial\n";
      for (std::size_t i = 0; i < rep.checkpoints.size(); ++i)
        csv << rep.checkpoints[i] << ',' << rep.accuracy[i] << ','
            << rep.trials << ',' << rep.bits_per_trial << "\n";
      fs::path p = out_path(*e, "attack-accumulate.csv");
      if (!write_file(p, csv.str())) return kWriteError;
      json meta{{"schema", "qpass-accumulate/1"},
                {"config", e->echo},
                {"checkpoints", rep.checkpoints},
                {"accuracy", rep.accuracy},
                {"measurement",
                 {{"theta", rep.measurement.theta},
                  {"p1_given_bit0", rep.measurement.p1_given_bit0},
                  {"p1_given_bit1", rep.measurement.p1_given_bit1},
                  {"single_round_success",
                   rep.measurement.single_round_success}}}};
      if (!write_json_file(fs::path(e->out_dir) / "attack-accumulate.json",
                           meta))
        return kWriteError;
      std::cout << "accuracy at " << rep.checkpoints.back()
                << " rounds: " << rep.accuracy.back() << " -> " << p.string()
                << "\n";
      return kOk;
    }

    analysis::ScenarioSpec sc;
    sc.attack = kind;
    sc.stage = stage;
    sc.cfg = e->cfg;
    sc.forged = adversary::ForgedInput::computational(
        pick(r.o_forged_basis, r.forged_basis, acfg, "forged_basis",
             std::size_t{0}));
    sc.forged_haar =
        pick(r.o_forged_haar, r.forged_haar, acfg, "forged_haar", false);
    const bool pw_flags =
        r.o_pw_r.given() || r.o_pw_x.given() || r.o_pw_y.given();
    if (pw_flags) {
      sc.pw = adversary::CardStealPassword::make(r.pw_r, r.pw_x, r.pw_y);
      sc.pw_optimal = false;
    } else if (acfg.contains("pw")) {
      const json& w = acfg.at("pw");
      sc.pw = adversary::CardStealPassword::make(w.at("r").get<double>(),
                                                 w.at("x").get<double>(),
                                                 w.at("y").get<double>());
      sc.pw_optimal = false;
    }
    sc.intercept.basis = adversary::intercept_basis_from_label(
        pick(r.o_basis, r.basis, acfg, "basis", std::string("random-zx")));
    e->echo["attack"]["scenario"] = analysis::scenario_to_json(sc);

    analysis::DetectionStats st =
        analysis::monte_carlo(sc, e->trials, e->seed);

    // exact reference value where one exists
    double target = 0.0;
    bool has_target = false;
    const primitives::ProtocolParams& pp = e->cfg.params;
    if ((kind == "no-card" || kind == "mitm") && !sc.forged_haar) {
      double ps = analysis::ps_closed_form(sc.forged, pp);
      target = sc.stage == "block"
                   ? 1.0 - ps
                   : analysis::total_detection(1.0 - ps, e->cfg.n_blocks);
      has_target = true;
    } else if (kind == "card-steal" && sc.pw_optimal) {
      double pn = analysis::pn_closed_form(pp);
      target = sc.stage == "block"
                   ? pn
                   : analysis::total_detection(pn, e->cfg.n_blocks);
      has_target = true;
    } else if (kind == "intercept-resend" &&
               sc.intercept.basis ==
                   adversary::InterceptPolicy::Basis::RandomZX) {
      if (sc.stage == "decoy") {
        target = 0.25;
        has_target = true;
      } else if (sc.stage == "session") {
        target = analysis::total_detection(0.25, e->cfg.n_decoys);
        has_target = true;
      }
    }

    std::ostringstream csv;
    csv << "# " << e->echo.dump() << "\n";
    analysis::write_stats_csv(csv, {{sc.name(), st, target, has_target}});
    fs::path p = out_path(*e, "attack-" + kind + "-stats.csv");
    if (!write_file(p, csv.str())) return kWriteError;
    json meta{{"schema", "qpass-attack/1"},
              {"config", e->echo},
              {"scenario", sc.name()},
              {"stats", analysis::detection_stats_to_json(st)}};
    if (has_target) meta["target"] = target;
    if (!write_json_file(fs::path(e->out_dir) / ("attack-" + kind + ".json"),
                         meta))
      return kWriteError;
    std::cout << sc.name() << ": estimate=" << st.estimate << " ci=["
              << st.ci_lo << "," << st.ci_hi << "]";
    if (has_target) std::cout << " reference=" << target;
    std::cout << " -> " << p.string() << "\n";
    return kOk;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "config error (attack):\n  - " << ex.what() << "\n";
    return kConfigError;
  }
}

int cmd_verify_bounds(const Raw& r) {
  auto e = merge_common(r, /*needs_seed=*/false, "verify-bounds");
  if (!e) return kConfigError;
  if (!ensure_out_dir(e->out_dir)) return kWriteError;

  json vcfg = e->file.value("verify", json::object());
  analysis::VerifyBoundsOptions o;
  o.grid = pick(r.o_grid, r.grid, vcfg, "grid", std::size_t{9});
  o.forgeries =
      pick(r.o_forgeries, r.forgeries, vcfg, "forgeries", std::size_t{100});
  o.optimizer_starts =
      pick(r.o_starts, r.starts, vcfg, "starts", std::size_t{64});
  o.optimizer_budget =
      pick(r.o_budget, r.budget, vcfg, "budget", std::uint64_t{600000});
  if (r.o_seed.given() || e->file.contains("seed")) o.seed = e->seed;
  o.headline_alpha = e->cfg.params.alpha;
  o.headline_xi = e->cfg.params.xi;
  e->echo["verify"] = {{"grid", o.grid},
                       {"forgeries", o.forgeries},
                       {"starts", o.optimizer_starts},
                       {"budget", o.optimizer_budget},
                       {"seed", o.seed}};

  std::vector<analysis::BoundCheckReport> reports;
  try {
    reports = analysis::verify_bounds(o);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "config error (verify-bounds):\n  - " << ex.what() << "\n";
    return kConfigError;
  }
  for (const analysis::BoundCheckReport& b : reports)
    std::cout << (b.pass ? "[ok]   " : "[FAIL] ") << b.name
              << "  discrepancy=" << b.discrepancy << "  tol=" << b.tolerance
              << "\n";

  json j = analysis::reports_to_json(reports);
  j["config"] = e->echo;
  if (!write_json_file(out_path(*e, "bounds.json"), j)) return kWriteError;
  std::ostringstream csv;
  csv << "# " << e->echo.dump() << "\n";
  analysis::write_reports_csv(csv, reports);
  if (!write_file(fs::path(e->out_dir) / "bounds.csv", csv.str()))
    return kWriteError;

  if (!r.dump_lock.empty()) {
    json lj =
        analysis::lock_to_json(primitives::build_lock_unitary(e->cfg.params));
    lj["config"] = e->echo;
    if (!write_json_file(fs::path(e->out_dir) / r.dump_lock, lj))
      return kWriteError;
  }

  return analysis::all_pass(reports) ? kOk : kVerifyFailed;
}

int cmd_report(const Raw& r) {
  auto e = merge_common(r, /*needs_seed=*/false, "report");
  if (!e) return kConfigError;
  if (!ensure_out_dir(e->out_dir)) return kWriteError;

  const primitives::ProtocolParams& pp = e->cfg.params;
  const double pn = analysis::pn_closed_form(pp);
  analysis::PsMaxResult mx = analysis::ps_maximize(pp);
  adversary::HelstromMeasurement hm = adversary::helstrom_for(pp);

  json curves = json::array();
  for (std::uint64_t n : {1u, 2u, 4u, 8u, 16u, 32u})
    curves.push_back(
        {{"n", n},
         {"card_steal", analysis::total_detection(pn, n)},
         {"no_card_floor", 1.0 - std::pow(0.5, static_cast<double>(n))}});

  // sweep whatever artifacts earlier commands left in the output directory
  json inputs = json::array();
  for (const fs::directory_entry& de : fs::directory_iterator(e->out_dir)) {
    if (!de.is_regular_file()) continue;
    const std::string name = de.path().filename().string();
    const std::string ext = de.path().extension().string();
    if (ext == ".csv") {
      std::ifstream in(de.path());
      std::string line;
      std::size_t rows = 0;
      bool header = false;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
          header = true;
          continue;
        }
        ++rows;
      }
      inputs.push_back({{"file", name}, {"rows", rows}});
    } else if (ext == ".json" && name != "summary.json") {
      std::ifstream in(de.path());
      json j;
      try {
        in >> j;
      } catch (const std::exception&) {
        continue;
      }
      inputs.push_back({{"file", name}, {"schema", j.value("schema", "?")}});
    }
  }

  json summary{{"schema", "qpass-summary/1"},
               {"config", e->echo},
               {"headline",
                {{"alpha", pp.alpha},
                 {"xi", pp.xi},
                 {"pn", pn},
                 {"ps_bound", 0.5},
                 {"ps_optimizer_best", mx.value},
                 {"ps_bound_satisfied", mx.value <= 0.5 + 1e-9},
                 {"helstrom_single_round", hm.single_round_success}}},
               {"curves", std::move(curves)},
               {"inputs", std::move(inputs)}};
  if (!write_json_file(out_path(*e, "summary.json"), summary))
    return kWriteError;

  std::ostringstream csv;
  csv << "# " << e->echo.dump() << "\n";
  csv << "quantity,n,value\n";
  csv << "pn,," << pn << "\n";
  csv << "ps_bound,,0.5\n";
  csv << "ps_optimizer_best,," << mx.value << "\n";
  csv << "helstrom_single_round,," << hm.single_round_success << "\n";
  for (std::uint64_t n : {1u, 2u, 4u, 8u, 16u, 32u}) {
    csv << "card_steal_detection," << n << ','
        << analysis::total_detection(pn, n) << "\n";
    csv << "no_card_floor," << n << ','
        << 1.0 - std::pow(0.5, static_cast<double>(n)) << "\n";
  }
  if (!write_file(fs::path(e->out_dir) / "summary.csv", csv.str()))
    return kWriteError;
  std::cout << "pn=" << pn << " ps_best=" << mx.value << " -> "
            << out_path(*e, "summary.json").string() << "\n";
  return kOk;
}

void add_param_flags(CLI::App* sub, Raw& r) {
  r.o_alpha += sub->add_option("--alpha", r.alpha, "password amplitude alpha");
  r.o_delta +=
      sub->add_option("--delta", r.delta, "lock rotation angle (radians)");
  r.o_xi += sub->add_option("--xi", r.xi, "cos(delta), excludes --delta");
  r.o_mode += sub->add_option("--mode", r.mode, "basic | extended");
  r.o_blocks +=
      sub->add_option("--blocks,--N", r.blocks, "password length in blocks");
  r.o_decoys += sub->add_option("--decoys", r.decoys, "decoy count");
  r.o_decoy_budget += sub->add_option("--decoy-budget", r.decoy_budget,
                                      "tolerated decoy mismatches");
  sub->add_option("--config,-c", r.config_path, "JSON config file");
  r.o_out_dir += sub->add_option("--out-dir", r.out_dir,
                                 "output directory (env QPASS_OUT_DIR)");
}

}  // namespace

int run_cli(int argc, char** argv) {
  Raw r;
  CLI::App app{"bell-pair password authentication sandbox"};
  app.require_subcommand(1);

  CLI::App* enroll =
      app.add_subcommand("enroll", "create a credential fixture");
  add_param_flags(enroll, r);
  r.o_seed += enroll->add_option("--seed", r.seed, "rng seed (required)");
  r.o_out_file += enroll->add_option("--out", r.out_file, "fixture file name");

  CLI::App* run = app.add_subcommand("run", "run honest sessions");
  add_param_flags(run, r);
  r.o_seed += run->add_option("--seed", r.seed, "rng seed (required)");
  r.o_rounds += run->add_option("--rounds", r.rounds, "sessions to run");
  r.o_fixture += run->add_option("--fixture", r.fixture, "enrollment fixture");
  run->add_option("--save-fixture", r.save_fixture,
                  "also write the (fresh) enrollment here");
  r.o_out_file += run->add_option("--out", r.out_file, "transcripts file name");

  CLI::App* attack = app.add_subcommand("attack", "run an attack scenario");
  add_param_flags(attack, r);
  r.o_seed += attack->add_option("--seed", r.seed, "rng seed (required)");
  r.o_trials += attack->add_option("--trials", r.trials, "Monte Carlo trials");
  r.o_kind += attack->add_option(
      "--kind", r.kind,
      "no-card | card-steal | mitm | intercept-resend | accumulate");
  r.o_stage +=
      attack->add_option("--stage", r.stage, "block | session | decoy | total");
  r.o_basis += attack->add_option(
      "--basis", r.basis, "random-zx | fixed-z | fixed-x | breidbart");
  r.o_forged_basis += attack->add_option("--forged-basis", r.forged_basis,
                                         "computational forged state index");
  r.o_forged_haar += attack->add_flag("--forged-haar", r.forged_haar,
                                      "draw the forged state Haar-randomly");
  r.o_pw_r += attack->add_option("--pw-r", r.pw_r, "forged password Bloch r");
  r.o_pw_x += attack->add_option("--pw-x", r.pw_x, "forged password Bloch x");
  r.o_pw_y += attack->add_option("--pw-y", r.pw_y, "forged password Bloch y");
  r.o_rounds +=
      attack->add_option("--rounds", r.rounds, "accumulate: rounds per trial");
  r.o_checkpoints += attack->add_option("--checkpoints", r.checkpoints,
                                        "accumulate: comma list of rounds");
  r.o_out_file += attack->add_option("--out", r.out_file, "stats file name");

  CLI::App* verify =
      app.add_subcommand("verify-bounds", "closed-form vs oracle battery");
  add_param_flags(verify, r);
  r.o_seed += verify->add_option("--seed", r.seed, "battery seed");
  r.o_grid += verify->add_option("--grid", r.grid, "params grid side");
  r.o_forgeries +=
      verify->add_option("--forgeries", r.forgeries, "random forged states");
  r.o_starts += verify->add_option("--starts", r.starts, "optimizer starts");
  r.o_budget +=
      verify->add_option("--budget", r.budget, "optimizer eval budget");
  verify->add_option("--dump-lock", r.dump_lock,
                     "also write the lock unitary JSON here");
  r.o_out_file += verify->add_option("--out", r.out_file, "report file name");

  CLI::App* report =
      app.add_subcommand("report", "aggregate outputs into a summary");
  add_param_flags(report, r);
  r.o_out_file += report->add_option("--out", r.out_file, "summary file name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int rc = app.exit(ex);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (enroll->parsed()) return cmd_enroll(r);
    if (run->parsed()) return cmd_run(r);
    if (attack->parsed()) return cmd_attack(r);
    if (verify->parsed()) return cmd_verify_bounds(r);
    if (report->parsed()) return cmd_report(r);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace qpass::cli
