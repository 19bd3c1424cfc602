#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qpass/adversary/policy.hpp"
#include "qpass/primitives/params.hpp"
#include "qpass/qcore/rng.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::adversary {

enum class AttackKind {
  NoCardForgery,
  CardSteal,
  ManInTheMiddle,
  InterceptResend,
  AccumulateDiscards,
};

const char* attack_kind_label(AttackKind k);
const std::vector<AccessSite>& required_sites(AttackKind k);

// Capability set validated against the access policy. Every attack entry
// point builds one of these first; construction throws PolicyError for any
// strategy that would need a forbidden site.
class StrategyHandle {
 public:
  explicit StrategyHandle(AttackKind kind);
  StrategyHandle(AttackKind kind, std::vector<AccessSite> extra_sites);
  AttackKind kind() const { return kind_; }

 private:
  AttackKind kind_;
};

// Joint 2-qubit state an impersonator fabricates for the (password, card)
// slots, big-endian: amps[2*b_pwd + b_card].
struct ForgedInput {
  std::array<qcore::cplx, 4> amps;

  static ForgedInput from_amps(const std::array<qcore::cplx, 4>& a);
  static ForgedInput computational(std::size_t index);
  static ForgedInput random(qcore::RngStream& rng);  // Haar via gaussians

  qcore::StateVector state() const;
};

// Forged password qubit of an adversary who stole the card but not the
// password. Bloch parametrization: <0|rho|0> = r, <0|rho|1> = x + i y, valid
// whenever x^2 + y^2 <= r(1-r) (equality = pure).
struct CardStealPassword {
  double r = 0.0;
  double x = 0.0;
  double y = 0.0;

  static CardStealPassword make(double r, double x, double y);
  // the forgery minimizing detection: r = (1+alpha)/2, x = beta/2, y = 0
  static CardStealPassword optimal(const primitives::ProtocolParams& p);

  qcore::DensityMatrix rho() const;
  bool pure(double tol = 1e-12) const;
  // draw a pure state from the spectral decomposition of rho
  qcore::StateVector sample_ket(qcore::RngStream& rng) const;
};

// Basis policy for measure-and-resend on the transit stream.
struct InterceptPolicy {
  enum class Basis { RandomZX, FixedZ, FixedX, Breidbart };
  Basis basis = Basis::RandomZX;
};

const char* intercept_basis_label(InterceptPolicy::Basis b);
InterceptPolicy::Basis intercept_basis_from_label(const std::string& s);

// Binary measurement for telling |0> from the bit-1 password state, found by
// brute-force sweep over analyzer angles (no closed form assumed). Outcome 1
// votes for bit 1; p1_given_* are the per-round response probabilities the
// accumulating attacker uses for maximum-likelihood decisions.
struct HelstromMeasurement {
  double theta = 0.0;
  double p1_given_bit0 = 0.0;
  double p1_given_bit1 = 0.0;
  double single_round_success = 0.0;
};

HelstromMeasurement helstrom_for(const primitives::ProtocolParams& p);

}  // namespace qpass::adversary
