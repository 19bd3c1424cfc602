#include <cmath>
#include <stdexcept>

#include "qpass/protocol/types.hpp"
#include "qpass/qcore/ops.hpp"

namespace qpass::protocol {

const char* mode_label(Mode m) {
  return m == Mode::Basic ? "basic" : "extended";
}

Mode mode_from_label(const std::string& s) {
  if (s == "basic") return Mode::Basic;
  if (s == "extended") return Mode::Extended;
  throw std::invalid_argument("unknown mode: " + s);
}

const char* verdict_label(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::RejectedAtDecoy: return "rejected-at-decoy";
    case Verdict::RejectedAtBell: return "rejected-at-bell";
    case Verdict::Aborted: return "aborted";
  }
  throw std::invalid_argument("verdict_label: bad verdict");
}

void ProtocolConfig::validate() const {
  if (n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
  if (mode == Mode::Extended && n_decoys < 1)
    throw std::invalid_argument("extended mode requires n_decoys >= 1");
  if (mode == Mode::Basic && n_decoys != 0)
    throw std::invalid_argument("basic mode carries no decoys");
  // params may have been aggregate-initialized by hand; re-check the
  // relations the factory functions guarantee
  const primitives::ProtocolParams& p = params;
  if (!(p.alpha > 0.0 && p.alpha < 1.0 && p.xi > 0.0 && p.xi < 1.0))
    throw std::invalid_argument("params out of range");
  if (std::abs(p.beta - std::sqrt(1.0 - p.alpha * p.alpha)) > 1e-12 ||
      std::abs(p.xi - std::cos(p.delta)) > 1e-12 ||
      std::abs(p.eta - std::sin(p.delta)) > 1e-12 ||
      std::abs(p.d - std::sqrt(1.0 - p.alpha * p.alpha * p.xi * p.xi)) > 1e-12)
    throw std::invalid_argument("params fields are inconsistent");
}

qcore::DensityMatrix SmartCard::qubit(std::size_t block) const {
  return qcore::reduced_state(enr->pairs.at(block), {0});
}

qcore::DensityMatrix VerifierStore::qubit(std::size_t block) const {
  return qcore::reduced_state(enr->pairs.at(block), {1});
}

nlohmann::json state_to_json(const qcore::StateVector& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (std::size_t i = 0; i < s.dim(); ++i)
    amps.push_back({s[i].real(), s[i].imag()});
  return {{"n_qubits", s.num_qubits()}, {"amps", std::move(amps)}};
}

qcore::StateVector state_from_json(const nlohmann::json& j) {
  const auto& amps = j.at("amps");
  std::vector<qcore::cplx> a;
  a.reserve(amps.size());
  for (const auto& pair : amps)
    a.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  qcore::StateVector s(std::move(a));
  if (s.num_qubits() != j.at("n_qubits").get<std::size_t>())
    throw std::invalid_argument("state_from_json: qubit count mismatch");
  return s;
}

nlohmann::json SessionTranscript::to_json() const {
  nlohmann::json events = nlohmann::json::array();
  for (const TranscriptEvent& ev : log)
    events.push_back({{"phase", ev.phase},
                      {"classical", ev.classical},
                      {"message", ev.message}});
  nlohmann::json j{{"schema", "qpass-transcript/1"},
                   {"round", round_id},
                   {"mode", mode_label(mode)},
                   {"verdict", verdict_label(verdict)},
                   {"bell_outcomes", bell_outcomes},
                   {"log", std::move(events)}};
  j["abort_reason"] =
      verdict == Verdict::Aborted ? nlohmann::json(abort_reason) : nullptr;
  nlohmann::json decoys = nlohmann::json::array();
  for (bool ok : decoy_ok) decoys.push_back(ok);
  j["decoy_ok"] = std::move(decoys);
  return j;
}

nlohmann::json enrollment_to_json(const Enrollment& e) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const qcore::StateVector& s : e.pairs) pairs.push_back(state_to_json(s));
  nlohmann::json bits = nlohmann::json::array();
  for (std::uint8_t b : e.password.bits) bits.push_back(static_cast<int>(b));
  return {{"schema", "qpass-enrollment/1"},
          {"alpha", e.params.alpha},
          {"delta", e.params.delta},
          {"password", std::move(bits)},
          {"next_round_id", e.next_round_id},
          {"disturbed", e.disturbed},
          {"pairs", std::move(pairs)}};
}

Enrollment enrollment_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != "qpass-enrollment/1")
    throw std::invalid_argument("unrecognized enrollment schema");
  Enrollment e;
  e.params = primitives::ProtocolParams::from_alpha_delta(
      j.at("alpha").get<double>(), j.at("delta").get<double>());
  for (const auto& b : j.at("password"))
    e.password.bits.push_back(static_cast<std::uint8_t>(b.get<int>()));
  e.next_round_id = j.at("next_round_id").get<std::uint64_t>();
  e.disturbed = j.at("disturbed").get<bool>();
  for (const auto& s : j.at("pairs")) {
    qcore::StateVector sv = state_from_json(s);
    if (sv.num_qubits() != 2)
      throw std::invalid_argument("enrollment pair is not a 2-qubit state");
    e.pairs.push_back(std::move(sv));
  }
  if (e.pairs.size() != e.password.bits.size())
    throw std::invalid_argument("enrollment pair/password length mismatch");
  return e;
}

}  // namespace qpass::protocol
