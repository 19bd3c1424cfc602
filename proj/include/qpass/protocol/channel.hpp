#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "qpass/qcore/matrix.hpp"
#include "qpass/qcore/measure.hpp"
#include "qpass/qcore/rng.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::protocol {

// A qubit in transit on the quantum channel. Standalone qubits carry their
// own state; a card qubit is entangled with its block, so the handle points
// into the block's joint state and operations act on the relevant position.
// Whoever holds the handle can measure or rotate the qubit but never sees
// amplitudes - that is the whole point of the interface.
class FlyingQubit {
 public:
  explicit FlyingQubit(qcore::StateVector own);
  FlyingQubit(qcore::StateVector* joint, std::size_t pos);

  // measure in a single-qubit basis; collapses the underlying state
  std::size_t measure_in(const qcore::ProjectiveBasis& basis,
                         qcore::RngStream& rng);
  // apply a single-qubit unitary in place
  void transform(const qcore::CMatrix& u);

  bool standalone() const { return joint_ == nullptr; }
  // only valid for standalone qubits (used by the receiver to take delivery)
  const qcore::StateVector& state() const;

 private:
  std::optional<qcore::StateVector> own_;
  qcore::StateVector* joint_ = nullptr;
  std::size_t pos_ = 0;
};

// Eavesdropper's hook on the quantum channel between the two parties.
//   Pass:    deliver the (possibly disturbed) qubit
//   Replace: keep the original, deliver `replacement` instead
//   Absorb:  keep the original, deliver nothing
struct QuantumTap {
  enum class Action { Pass, Replace, Absorb };
  struct Decision {
    Action action = Action::Pass;
    std::optional<qcore::StateVector> replacement;
  };
  std::function<Decision(FlyingQubit&)> intercept;
};

}  // namespace qpass::protocol
