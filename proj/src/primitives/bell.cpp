#include "qpass/primitives/bell.hpp"

#include <cmath>
#include <stdexcept>

#include "qpass/qcore/ops.hpp"

namespace qpass::primitives {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

const char* bell_label(BellKind k) {
  switch (k) {
    case BellKind::Plus: return "+";
    case BellKind::Minus: return "-";
    case BellKind::BPlus: return "B+";
    case BellKind::BMinus: return "B-";
  }
  throw std::invalid_argument("bell_label: bad kind");
}

qcore::StateVector make_bell(BellKind k) {
  std::vector<qcore::cplx> a(4);
  switch (k) {
    case BellKind::Plus: a[0] = kInvSqrt2; a[3] = kInvSqrt2; break;
    case BellKind::Minus: a[0] = kInvSqrt2; a[3] = -kInvSqrt2; break;
    case BellKind::BPlus: a[1] = kInvSqrt2; a[2] = kInvSqrt2; break;
    case BellKind::BMinus: a[1] = kInvSqrt2; a[2] = -kInvSqrt2; break;
  }
  return qcore::StateVector(std::move(a));
}

const qcore::ProjectiveBasis& bell_basis() {
  static const qcore::ProjectiveBasis basis = qcore::ProjectiveBasis::from_states(
      {make_bell(BellKind::Plus), make_bell(BellKind::Minus),
       make_bell(BellKind::BPlus), make_bell(BellKind::BMinus)},
      {"+", "-", "B+", "B-"});
  return basis;
}

qcore::StateVector make_password_ket(const ProtocolParams& p, int bit) {
  if (bit != 0 && bit != 1)
    throw std::invalid_argument("make_password_ket: bit must be 0 or 1");
  std::vector<qcore::cplx> a(2);
  if (bit == 0) {
    a[0] = 1.0;
  } else {
    a[0] = p.alpha;
    a[1] = p.beta;
  }
  return qcore::StateVector(std::move(a));
}

qcore::CMatrix make_rotation(const ProtocolParams& p) {
  qcore::CMatrix r(2, 2);
  r(0, 0) = qcore::cplx{p.xi, p.eta};
  r(1, 1) = qcore::cplx{p.xi, -p.eta};
  return r;
}

qcore::CMatrix make_rotation_inverse(const ProtocolParams& p) {
  qcore::CMatrix r(2, 2);
  r(0, 0) = qcore::cplx{p.xi, -p.eta};
  r(1, 1) = qcore::cplx{p.xi, p.eta};
  return r;
}

qcore::StateVector make_locked_pair(const ProtocolParams& p) {
  return qcore::apply(qcore::embed(make_rotation(p), 2, {0}),
                      make_bell(BellKind::Plus));
}

}  // namespace qpass::primitives
