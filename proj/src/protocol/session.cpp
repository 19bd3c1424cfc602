#include "qpass/protocol/session.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "qpass/qcore/ops.hpp"

namespace qpass::protocol {

using primitives::BellKind;
using qcore::CMatrix;
using qcore::RngStream;
using qcore::StateVector;

// ---------------------------------------------------------------------------
// FlyingQubit

FlyingQubit::FlyingQubit(StateVector own) : own_(std::move(own)) {
  if (own_->num_qubits() != 1)
    throw std::invalid_argument("FlyingQubit: single qubits only");
}

FlyingQubit::FlyingQubit(StateVector* joint, std::size_t pos)
    : joint_(joint), pos_(pos) {
  if (joint_ == nullptr || pos_ >= joint_->num_qubits())
    throw std::invalid_argument("FlyingQubit: bad joint position");
}

std::size_t FlyingQubit::measure_in(const qcore::ProjectiveBasis& basis,
                                    RngStream& rng) {
  if (basis.dim() != 2)
    throw std::invalid_argument("measure_in: need a single-qubit basis");
  if (joint_ != nullptr) {
    qcore::MeasureResult r =
        qcore::measure(*joint_, basis.lifted(joint_->num_qubits(), {pos_}), rng);
    *joint_ = std::move(r.post);
    return r.index;
  }
  qcore::MeasureResult r = qcore::measure(*own_, basis, rng);
  own_ = std::move(r.post);
  return r.index;
}

void FlyingQubit::transform(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2)
    throw std::invalid_argument("transform: need a single-qubit unitary");
  if (joint_ != nullptr) {
    *joint_ = qcore::apply(qcore::embed(u, joint_->num_qubits(), {pos_}), *joint_);
  } else {
    own_ = qcore::apply(u, *own_);
  }
}

const StateVector& FlyingQubit::state() const {
  if (!standalone())
    throw std::logic_error("FlyingQubit::state: qubit is entangled with its block");
  return *own_;
}

// ---------------------------------------------------------------------------
// session helpers

namespace {

struct Sink {
  SessionTranscript* t;
  const AdversaryHooks* hooks;
  void emit(const char* phase, bool classical, nlohmann::json msg) {
    TranscriptEvent ev{phase, classical, std::move(msg)};
    if (classical && hooks != nullptr && hooks->classical_tap)
      hooks->classical_tap(ev);
    t->log.push_back(std::move(ev));
  }
};

struct Delivery {
  enum class Kind { Original, Standalone, Lost };
  Kind kind = Kind::Lost;
  std::optional<StateVector> state;  // engaged iff kind == Standalone
};

Delivery send_one(FlyingQubit q, const AdversaryHooks* hooks) {
  if (hooks != nullptr && hooks->quantum_tap != nullptr &&
      hooks->quantum_tap->intercept) {
    QuantumTap::Decision d = hooks->quantum_tap->intercept(q);
    if (d.action == QuantumTap::Action::Absorb)
      return {Delivery::Kind::Lost, std::nullopt};
    if (d.action == QuantumTap::Action::Replace) {
      if (!d.replacement || d.replacement->num_qubits() != 1)
        throw std::invalid_argument("tap replacement must be one qubit");
      return {Delivery::Kind::Standalone, std::move(d.replacement)};
    }
  }
  if (q.standalone()) return {Delivery::Kind::Standalone, q.state()};
  return {Delivery::Kind::Original, std::nullopt};
}

// Bell basis lifted to act on (pa, pb) of an n-qubit system. Basis
// construction re-verifies completeness, which is not free, so cache per
// shape; per-thread to stay safe inside parallel trial loops.
const qcore::ProjectiveBasis& lifted_bell(std::size_t n, std::size_t pa,
                                          std::size_t pb) {
  thread_local std::deque<
      std::tuple<std::size_t, std::size_t, std::size_t, qcore::ProjectiveBasis>>
      cache;
  for (const auto& entry : cache)
    if (std::get<0>(entry) == n && std::get<1>(entry) == pa &&
        std::get<2>(entry) == pb)
      return std::get<3>(entry);
  cache.emplace_back(n, pa, pb, primitives::bell_basis().lifted(n, {pa, pb}));
  return std::get<3>(cache.back());
}

struct BlockWork {
  StateVector joint;
  std::size_t pk, pa, pb;
  // true when joint is exactly (password, card, store) with nothing extra
  bool plain3;
};

bool verify_blocks(std::vector<BlockWork>& work,
                   const primitives::LockUnitary& lock, SessionTranscript& t,
                   RngStream& rng) {
  bool all_plus = true;
  for (BlockWork& w : work) {
    VerifyStep step = unlock_and_verify(lock, w.joint, w.pk, w.pa, w.pb, rng);
    t.bell_outcomes.push_back(primitives::bell_label(step.outcome));
    all_plus &= step.outcome == BellKind::Plus;
    w.joint = std::move(step.post);
  }
  return all_plus;
}

// Re-lock every block, split off the password qubit, feed it to the discard
// tap and put the freed pair back into the enrollment. Returns false if any
// block refuses to come apart as (qubit) x (pair) - in that case the
// enrollment slot is left stale and the caller latches `disturbed`.
bool relock_and_discard(std::vector<BlockWork>& work,
                        const primitives::LockUnitary& lock, Enrollment& enr,
                        const AdversaryHooks* hooks) {
  bool clean = true;
  for (std::size_t i = 0; i < work.size(); ++i) {
    BlockWork& w = work[i];
    StateVector relocked = relock(lock, w.joint, w.pk, w.pa, w.pb);
    if (!w.plain3) {
      clean = false;
      continue;
    }
    std::optional<qcore::SplitResult> sp = qcore::split_product(relocked, 1);
    if (!sp) {
      clean = false;
      continue;
    }
    if (hooks != nullptr && hooks->discard_tap) hooks->discard_tap(i, sp->front);
    enr.pairs[i] = std::move(sp->back);
  }
  return clean;
}

bool enrollment_matches(const Enrollment& enr, const ProtocolConfig& cfg) {
  return enr.pairs.size() == cfg.n_blocks &&
         enr.password.bits.size() == cfg.n_blocks &&
         std::abs(enr.params.alpha - cfg.params.alpha) <= 1e-12 &&
         std::abs(enr.params.delta - cfg.params.delta) <= 1e-12;
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface

Enrollment enroll(const ProtocolConfig& cfg, RngStream& rng) {
  cfg.validate();
  Enrollment e;
  e.params = cfg.params;
  const CMatrix r_lock =
      qcore::embed(primitives::make_rotation(cfg.params), 2, {0});
  for (std::size_t i = 0; i < cfg.n_blocks; ++i) {
    std::uint8_t bit = static_cast<std::uint8_t>(rng.uniform_int(2));
    e.password.bits.push_back(bit);
    StateVector pair = primitives::make_bell(BellKind::Plus);
    if (bit != 0) pair = qcore::apply(r_lock, pair);
    e.pairs.push_back(std::move(pair));
  }
  return e;
}

VerifyStep unlock_and_verify(const primitives::LockUnitary& lock,
                             const StateVector& joint, std::size_t pos_k,
                             std::size_t pos_a, std::size_t pos_b,
                             RngStream& rng) {
  const std::size_t n = joint.num_qubits();
  if (n < 3 || pos_k >= n || pos_a >= n || pos_b >= n || pos_k == pos_a ||
      pos_k == pos_b || pos_a == pos_b)
    throw std::invalid_argument("unlock_and_verify: bad qubit positions");
  StateVector after =
      (n == 3 && pos_k == 0 && pos_a == 1 && pos_b == 2)
          ? qcore::apply(lock.matrix, joint)
          : qcore::apply(qcore::embed(lock.matrix, n, {pos_k, pos_a, pos_b}),
                         joint);
  qcore::MeasureResult mr =
      qcore::measure(after, lifted_bell(n, pos_a, pos_b), rng);
  return VerifyStep{static_cast<BellKind>(mr.index), std::move(mr.post)};
}

StateVector relock(const primitives::LockUnitary& lock, const StateVector& joint,
                   std::size_t pos_k, std::size_t pos_a, std::size_t pos_b) {
  const std::size_t n = joint.num_qubits();
  if (n < 3 || pos_k >= n || pos_a >= n || pos_b >= n || pos_k == pos_a ||
      pos_k == pos_b || pos_a == pos_b)
    throw std::invalid_argument("relock: bad qubit positions");
  const CMatrix inv = lock.matrix.adjoint();
  if (n == 3 && pos_k == 0 && pos_a == 1 && pos_b == 2)
    return qcore::apply(inv, joint);
  return qcore::apply(qcore::embed(inv, n, {pos_k, pos_a, pos_b}), joint);
}

qcore::DensityMatrix reduced_card_state(const Enrollment& enr,
                                        std::size_t block) {
  return qcore::reduced_state(enr.pairs.at(block), {0});
}

qcore::DensityMatrix reduced_store_state(const Enrollment& enr,
                                         std::size_t block) {
  return qcore::reduced_state(enr.pairs.at(block), {1});
}

SessionTranscript run_basic_session(Enrollment& enr, const ProtocolConfig& cfg,
                                    RngStream& rng,
                                    const AdversaryHooks* hooks) {
  if (cfg.mode != Mode::Basic)
    throw std::invalid_argument("run_basic_session: config is not basic mode");
  cfg.validate();

  SessionTranscript t;
  t.mode = Mode::Basic;
  t.round_id = enr.next_round_id++;
  Sink sink{&t, hooks};

  if (enr.disturbed) {
    t.verdict = Verdict::Aborted;
    t.abort_reason = "enrollment-disturbed";
    sink.emit("verdict", true, {{"result", "aborted"}, {"reason", t.abort_reason}});
    return t;
  }
  if (!enrollment_matches(enr, cfg)) {
    t.verdict = Verdict::Aborted;
    t.abort_reason = "config-mismatch";
    sink.emit("verdict", true, {{"result", "aborted"}, {"reason", t.abort_reason}});
    return t;
  }

  const primitives::LockUnitary lock = primitives::build_lock_unitary(enr.params);
  const std::size_t n = cfg.n_blocks;
  sink.emit("announce-start", true,
            {{"round", t.round_id},
             {"mode", "basic"},
             {"blocks", n},
             {"transit_qubits", 2 * n}});

  // one password qubit and one card half per block, password first
  std::vector<Delivery> pwd(n), card(n);
  std::size_t received = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pwd[i] = send_one(
        FlyingQubit(primitives::make_password_ket(enr.params,
                                                  enr.password.bits[i])),
        hooks);
    card[i] = send_one(FlyingQubit(&enr.pairs[i], 0), hooks);
    received += (pwd[i].kind != Delivery::Kind::Lost) +
                (card[i].kind != Delivery::Kind::Lost);
  }
  sink.emit("transmit", false, {{"expected", 2 * n}, {"received", received}});
  if (received != 2 * n) {
    enr.disturbed = true;
    t.verdict = Verdict::Aborted;
    t.abort_reason = "receive-timeout";
    sink.emit("verdict", true, {{"result", "aborted"}, {"reason", t.abort_reason}});
    return t;
  }

  std::vector<BlockWork> work;
  work.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (card[i].kind == Delivery::Kind::Original) {
      work.push_back(
          {qcore::tensor(*pwd[i].state, enr.pairs[i]), 0, 1, 2, true});
    } else {
      // substituted card: the enrolled pair still holds the eavesdropper's
      // copy at position 2 and the verifier half at 3
      work.push_back({qcore::tensor(qcore::tensor(*pwd[i].state, *card[i].state),
                                    enr.pairs[i]),
                      0, 1, 3, false});
    }
  }

  bool all_plus = verify_blocks(work, lock, t, rng);
  sink.emit("verify", false, {{"outcomes", t.bell_outcomes}});
  if (!all_plus) {
    enr.disturbed = true;
    t.verdict = Verdict::RejectedAtBell;
    sink.emit("verdict", true, {{"result", "rejected-at-bell"}});
    return t;
  }

  bool clean = relock_and_discard(work, lock, enr, hooks);
  sink.emit("relock-discard", false, {{"discarded", n}});
  sink.emit("return-card", false, {{"qubits", n}});
  if (!clean) enr.disturbed = true;
  t.verdict = Verdict::Accepted;
  sink.emit("verdict", true, {{"result", "accepted"}});
  return t;
}

SessionTranscript run_extended_session(Enrollment& enr,
                                       const ProtocolConfig& cfg,
                                       RngStream& rng,
                                       const AdversaryHooks* hooks) {
  if (cfg.mode != Mode::Extended)
    throw std::invalid_argument(
        "run_extended_session: config is not extended mode");
  cfg.validate();

  SessionTranscript t;
  t.mode = Mode::Extended;
  t.round_id = enr.next_round_id++;
  Sink sink{&t, hooks};

  if (enr.disturbed) {
    t.verdict = Verdict::Aborted;
    t.abort_reason = "enrollment-disturbed";
    sink.emit("verdict", true, {{"result", "aborted"}, {"reason", t.abort_reason}});
    return t;
  }
  if (!enrollment_matches(enr, cfg)) {
    t.verdict = Verdict::Aborted;
    t.abort_reason = "config-mismatch";
    sink.emit("verdict", true, {{"result", "aborted"}, {"reason", t.abort_reason}});
    return t;
  }

  const primitives::LockUnitary lock = primitives::build_lock_unitary(enr.params);
  const std::size_t n = cfg.n_blocks;
  const std::size_t nd = cfg.n_decoys;
  const std::size_t total = n + nd;
  sink.emit("announce-start", true,
            {{"round", t.round_id},
             {"mode", "extended"},
             {"blocks", n},
             {"transit_qubits", n + total}});

  // user side: swap the card lock from the password onto a fresh round pad,
  // so nothing in transit depends on the long-term password
  const CMatrix rot = qcore::embed(primitives::make_rotation(enr.params), 2, {0});
  const CMatrix rot_inv =
      qcore::embed(primitives::make_rotation_inverse(enr.params), 2, {0});
  for (std::size_t i = 0; i < n; ++i)
    if (enr.password.bits[i] != 0) enr.pairs[i] = qcore::apply(rot_inv, enr.pairs[i]);
  std::vector<std::uint8_t> pad(n);
  for (std::size_t i = 0; i < n; ++i) {
    pad[i] = static_cast<std::uint8_t>(rng.uniform_int(2));
    if (pad[i] != 0) enr.pairs[i] = qcore::apply(rot, enr.pairs[i]);
  }
  sink.emit("swap-lock", false, {{"note", "card re-locked under round pad"}});

  // decoys and their hiding places among the password stream
  std::vector<primitives::DecoySymbol> syms(nd);
  for (std::size_t j = 0; j < nd; ++j)
    syms[j] =
        primitives::decoy_symbol_from_wire(2 + static_cast<int>(rng.uniform_int(4)));
  std::vector<std::size_t> slots(total);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  for (std::size_t j = 0; j < nd; ++j) {
    std::size_t k = j + rng.uniform_int(total - j);
    std::swap(slots[j], slots[k]);
  }
  std::vector<std::size_t> dpos(slots.begin(),
                                slots.begin() + static_cast<std::ptrdiff_t>(nd));
  std::sort(dpos.begin(), dpos.end());
  std::vector<int> slot_decoy(total, -1);
  for (std::size_t j = 0; j < nd; ++j) slot_decoy[dpos[j]] = static_cast<int>(j);

  // transmit: card halves first, then the password/decoy stream in slot order
  std::vector<Delivery> card(n), stream(total);
  std::size_t received = 0;
  for (std::size_t i = 0; i < n; ++i) {
    card[i] = send_one(FlyingQubit(&enr.pairs[i], 0), hooks);
    received += card[i].kind != Delivery::Kind::Lost;
  }
  std::size_t pw_next = 0;
  for (std::size_t s = 0; s < total; ++s) {
    if (slot_decoy[s] >= 0) {
      stream[s] = send_one(
          FlyingQubit(primitives::decoy_encode(
              syms[static_cast<std::size_t>(slot_decoy[s])])),
          hooks);
    } else {
      stream[s] = send_one(
          FlyingQubit(primitives::make_password_ket(enr.params, pad[pw_next])),
          hooks);
      ++pw_next;
    }
    received += stream[s].kind != Delivery::Kind::Lost;
  }
  sink.emit("transmit", false, {{"expected", n + total}, {"received", received}});
  if (received != n + total) {
    enr.disturbed = true;
    t.verdict = Verdict::Aborted;
    t.abort_reason = "receive-timeout";
    sink.emit("verdict", true, {{"result", "aborted"}, {"reason", t.abort_reason}});
    return t;
  }

  // only after everything is delivered do the decoy positions and symbols go
  // over the public channel
  {
    nlohmann::json positions = nlohmann::json::array();
    nlohmann::json symbols = nlohmann::json::array();
    for (std::size_t j = 0; j < nd; ++j) {
      positions.push_back(dpos[j]);
      symbols.push_back(primitives::decoy_wire_value(syms[j]));
    }
    sink.emit("announce-decoys", true,
              {{"positions", std::move(positions)}, {"symbols", std::move(symbols)}});
  }

  std::size_t mismatches = 0;
  for (std::size_t j = 0; j < nd; ++j) {
    const Delivery& del = stream[dpos[j]];
    int bit = primitives::decoy_measure(*del.state,
                                        primitives::decoy_basis_of(syms[j]), rng);
    bool ok = bit == primitives::decoy_expected_bit(syms[j]);
    t.decoy_ok.push_back(ok);
    mismatches += ok ? 0u : 1u;
  }
  sink.emit("decoy-check", false, {{"mismatches", mismatches}});
  if (mismatches > cfg.decoy_error_budget) {
    enr.disturbed = true;
    t.verdict = Verdict::RejectedAtDecoy;
    sink.emit("verdict", true, {{"result", "rejected-at-decoy"}});
    return t;
  }

  std::vector<BlockWork> work;
  work.reserve(n);
  std::size_t block = 0;
  for (std::size_t s = 0; s < total; ++s) {
    if (slot_decoy[s] >= 0) continue;
    if (card[block].kind == Delivery::Kind::Original) {
      work.push_back(
          {qcore::tensor(*stream[s].state, enr.pairs[block]), 0, 1, 2, true});
    } else {
      work.push_back(
          {qcore::tensor(qcore::tensor(*stream[s].state, *card[block].state),
                         enr.pairs[block]),
           0, 1, 3, false});
    }
    ++block;
  }

  bool all_plus = verify_blocks(work, lock, t, rng);
  sink.emit("verify", false, {{"outcomes", t.bell_outcomes}});
  if (!all_plus) {
    enr.disturbed = true;
    t.verdict = Verdict::RejectedAtBell;
    sink.emit("verdict", true, {{"result", "rejected-at-bell"}});
    return t;
  }

  bool clean = relock_and_discard(work, lock, enr, hooks);
  sink.emit("relock-discard", false, {{"discarded", n}});
  sink.emit("return-card", false, {{"qubits", n}});

  // user side: pad off, password lock back on
  for (std::size_t i = 0; i < n; ++i)
    if (pad[i] != 0) enr.pairs[i] = qcore::apply(rot_inv, enr.pairs[i]);
  for (std::size_t i = 0; i < n; ++i)
    if (enr.password.bits[i] != 0) enr.pairs[i] = qcore::apply(rot, enr.pairs[i]);
  sink.emit("restore-lock", false, {{"note", "card lock carries the password again"}});

  if (!clean) enr.disturbed = true;
  t.verdict = Verdict::Accepted;
  sink.emit("verdict", true, {{"result", "accepted"}});
  return t;
}

}  // namespace qpass::protocol
