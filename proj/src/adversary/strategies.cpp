#include "qpass/adversary/strategies.hpp"

#include <cmath>
#include <stdexcept>

namespace qpass::adversary {

const char* attack_kind_label(AttackKind k) {
  switch (k) {
    case AttackKind::NoCardForgery: return "no-card";
    case AttackKind::CardSteal: return "card-steal";
    case AttackKind::ManInTheMiddle: return "mitm";
    case AttackKind::InterceptResend: return "intercept-resend";
    case AttackKind::AccumulateDiscards: return "accumulate";
  }
  throw std::invalid_argument("attack_kind_label: bad kind");
}

const std::vector<AccessSite>& required_sites(AttackKind k) {
  static const std::vector<AccessSite> channel_only{
      AccessSite::QuantumChannel, AccessSite::ClassicalChannel};
  static const std::vector<AccessSite> discards{
      AccessSite::VerifierDiscards, AccessSite::ClassicalChannel};
  switch (k) {
    case AttackKind::NoCardForgery:
    case AttackKind::CardSteal:
    case AttackKind::ManInTheMiddle:
    case AttackKind::InterceptResend:
      return channel_only;
    case AttackKind::AccumulateDiscards:
      return discards;
  }
  throw std::invalid_argument("required_sites: bad kind");
}

StrategyHandle::StrategyHandle(AttackKind kind) : kind_(kind) {
  enforce_access_policy(required_sites(kind));
}

StrategyHandle::StrategyHandle(AttackKind kind,
                               std::vector<AccessSite> extra_sites)
    : kind_(kind) {
  std::vector<AccessSite> all = required_sites(kind);
  all.insert(all.end(), extra_sites.begin(), extra_sites.end());
  enforce_access_policy(all);
}

ForgedInput ForgedInput::from_amps(const std::array<qcore::cplx, 4>& a) {
  double n2 = 0.0;
  for (const qcore::cplx& v : a) n2 += std::norm(v);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-9)
    throw std::invalid_argument("ForgedInput: amplitudes not normalized");
  ForgedInput f;
  f.amps = a;
  double n1 = std::sqrt(n2);
  for (qcore::cplx& v : f.amps) v /= n1;
  return f;
}

ForgedInput ForgedInput::computational(std::size_t index) {
  if (index > 3) throw std::invalid_argument("ForgedInput: index out of range");
  std::array<qcore::cplx, 4> a{};
  a[index] = 1.0;
  ForgedInput f;
  f.amps = a;
  return f;
}

ForgedInput ForgedInput::random(qcore::RngStream& rng) {
  std::array<qcore::cplx, 4> a;
  double n2 = 0.0;
  for (qcore::cplx& v : a) {
    v = qcore::cplx{rng.normal(), rng.normal()};
    n2 += std::norm(v);
  }
  double n1 = std::sqrt(n2);
  for (qcore::cplx& v : a) v /= n1;
  ForgedInput f;
  f.amps = a;
  return f;
}

qcore::StateVector ForgedInput::state() const {
  return qcore::StateVector(std::vector<qcore::cplx>(amps.begin(), amps.end()));
}

CardStealPassword CardStealPassword::make(double r, double x, double y) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("CardStealPassword: r outside [0,1]");
  if (x * x + y * y > r * (1.0 - r) + 1e-12)
    throw std::invalid_argument(
        "CardStealPassword: coherences exceed the Bloch ball");
  CardStealPassword p;
  p.r = r;
  p.x = x;
  p.y = y;
  return p;
}

CardStealPassword CardStealPassword::optimal(
    const primitives::ProtocolParams& p) {
  return make((1.0 + p.alpha) / 2.0, p.beta / 2.0, 0.0);
}

qcore::DensityMatrix CardStealPassword::rho() const {
  qcore::CMatrix m(2, 2);
  m(0, 0) = r;
  m(0, 1) = qcore::cplx{x, y};
  m(1, 0) = qcore::cplx{x, -y};
  m(1, 1) = 1.0 - r;
  return qcore::DensityMatrix(std::move(m));
}

bool CardStealPassword::pure(double tol) const {
  return std::abs(x * x + y * y - r * (1.0 - r)) <= tol;
}

qcore::StateVector CardStealPassword::sample_ket(qcore::RngStream& rng) const {
  const qcore::cplx q{x, y};  // <0|rho|1>
  if (pure()) {
    if (r <= 0.0) return qcore::StateVector::basis(1, 1);
    // |K> = sqrt(r)|0> + ((x - i y)/sqrt(r))|1> reproduces rho exactly
    double sr = std::sqrt(r);
    return qcore::StateVector({qcore::cplx{sr, 0.0}, std::conj(q) / sr});
  }
  // mixed state: draw an eigenstate of rho
  double det = r * (1.0 - r) - (x * x + y * y);
  double s = std::sqrt(std::max(0.0, 1.0 - 4.0 * det));
  double lam_hi = (1.0 + s) / 2.0;
  if (std::abs(q) < 1e-15) {
    // diagonal: eigenstates are the basis states
    return rng.bernoulli(r) ? qcore::StateVector::basis(1, 0)
                            : qcore::StateVector::basis(1, 1);
  }
  double lam = rng.bernoulli(lam_hi) ? lam_hi : 1.0 - lam_hi;
  qcore::cplx v0 = q;
  qcore::cplx v1 = qcore::cplx{lam - r, 0.0};
  double n1 = std::sqrt(std::norm(v0) + std::norm(v1));
  return qcore::StateVector({v0 / n1, v1 / n1});
}

const char* intercept_basis_label(InterceptPolicy::Basis b) {
  switch (b) {
    case InterceptPolicy::Basis::RandomZX: return "random-zx";
    case InterceptPolicy::Basis::FixedZ: return "fixed-z";
    case InterceptPolicy::Basis::FixedX: return "fixed-x";
    case InterceptPolicy::Basis::Breidbart: return "breidbart";
  }
  throw std::invalid_argument("intercept_basis_label: bad basis");
}

InterceptPolicy::Basis intercept_basis_from_label(const std::string& s) {
  if (s == "random-zx") return InterceptPolicy::Basis::RandomZX;
  if (s == "fixed-z") return InterceptPolicy::Basis::FixedZ;
  if (s == "fixed-x") return InterceptPolicy::Basis::FixedX;
  if (s == "breidbart") return InterceptPolicy::Basis::Breidbart;
  throw std::invalid_argument("unknown intercept basis: " + s);
}

namespace {

double guess_success(double theta, double alpha, double beta) {
  double c = std::cos(theta), s = std::sin(theta);
  double hit1 = beta * c - alpha * s;  // <m1|password-1 state>
  return 0.5 * (c * c + hit1 * hit1);
}

}  // namespace

HelstromMeasurement helstrom_for(const primitives::ProtocolParams& p) {
  constexpr double kHalfPi = 1.57079632679489661923;
  double lo = -kHalfPi, hi = kHalfPi;
  double best_theta = 0.0, best = -1.0;
  // coarse sweep plus three zoom rounds; plenty for 1e-6 agreement
  for (int round = 0; round < 4; ++round) {
    const int steps = round == 0 ? 4000 : 400;
    for (int i = 0; i <= steps; ++i) {
      double th = lo + (hi - lo) * i / steps;
      double v = guess_success(th, p.alpha, p.beta);
      if (v > best) {
        best = v;
        best_theta = th;
      }
    }
    double span = (hi - lo) / steps * 4.0;
    lo = best_theta - span;
    hi = best_theta + span;
  }
  HelstromMeasurement m;
  m.theta = best_theta;
  double s = std::sin(best_theta), c = std::cos(best_theta);
  m.p1_given_bit0 = s * s;
  double hit1 = p.beta * c - p.alpha * s;
  m.p1_given_bit1 = hit1 * hit1;
  m.single_round_success = best;
  return m;
}

}  // namespace qpass::adversary
