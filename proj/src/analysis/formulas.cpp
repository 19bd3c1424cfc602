#include "qpass/analysis/formulas.hpp"

#include <cmath>
#include <stdexcept>

#include "qpass/primitives/bell.hpp"
#include "qpass/qcore/ops.hpp"

namespace qpass::analysis {

using qcore::cplx;
using qcore::CMatrix;
using qcore::DensityMatrix;
using qcore::StateVector;

double ps_closed_form(const adversary::ForgedInput& forged,
                      const primitives::ProtocolParams& p) {
  const cplx psi00 = forged.amps[0], psi01 = forged.amps[1];
  const cplx psi10 = forged.amps[2], psi11 = forged.amps[3];
  const cplx i{0.0, 1.0};
  const cplx ph{p.xi, p.eta};  // e^{i delta}
  const double bd = p.beta / p.d;
  const double ahd = p.alpha * p.eta / p.d;
  const cplx t2 = bd * std::conj(ph) * psi10 - i * ahd * psi00;
  const cplx t3 = bd * ph * psi11 + i * ahd * psi01;
  return 0.25 * (std::norm(psi00) + std::norm(psi01) + std::norm(t2) +
                 std::norm(t3));
}

namespace {

// <pair| rho |pair> for a 2-qubit rho
double sandwich(const CMatrix& rho, const StateVector& pair) {
  cplx acc{0.0, 0.0};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      acc += std::conj(pair[r]) * rho(r, c) * pair[c];
  return acc.real();
}

}  // namespace

double ps_direct(const adversary::ForgedInput& forged,
                 const primitives::LockUnitary& lock) {
  DensityMatrix in = qcore::tensor(DensityMatrix(forged.state()),
                                   DensityMatrix::maximally_mixed(1));
  DensityMatrix out = qcore::apply(lock.matrix, in);
  DensityMatrix pair = qcore::partial_trace(out, {1, 2});
  return sandwich(pair.matrix(), primitives::make_bell(primitives::BellKind::Plus));
}

double ps_direct(const adversary::ForgedInput& forged,
                 const primitives::ProtocolParams& p) {
  return ps_direct(forged, primitives::build_lock_unitary(p));
}

double delta_e_closed_form(const adversary::CardStealPassword& pw,
                           const primitives::ProtocolParams& p) {
  const double pref = 0.5 * (1.0 - p.xi * p.xi) / (p.d * p.d);
  return pref * (1.0 + p.alpha * p.alpha - 2.0 * p.alpha * p.alpha * pw.r -
                 2.0 * p.alpha * p.beta * pw.x);
}

double delta_e_direct(const adversary::CardStealPassword& pw,
                      const primitives::LockUnitary& lock) {
  const StateVector plus = primitives::make_bell(primitives::BellKind::Plus);
  const StateVector locked = primitives::make_locked_pair(lock.params);
  double detect = 0.0;
  for (const StateVector* pair : {&plus, &locked}) {
    DensityMatrix in = qcore::tensor(pw.rho(), DensityMatrix(*pair));
    DensityMatrix out = qcore::apply(lock.matrix, in);
    DensityMatrix reduced = qcore::partial_trace(out, {1, 2});
    detect += 0.5 * (1.0 - sandwich(reduced.matrix(), plus));
  }
  return detect;
}

double delta_e_direct(const adversary::CardStealPassword& pw,
                      const primitives::ProtocolParams& p) {
  return delta_e_direct(pw, primitives::build_lock_unitary(p));
}

double pn_closed_form(const primitives::ProtocolParams& p) {
  return 0.5 * (1.0 - p.xi * p.xi) / (p.d * p.d) * (1.0 - p.alpha);
}

PnMinimum pn_minimize_direct(const primitives::ProtocolParams& p) {
  // scan (r, f) with x = f * sqrt(r(1-r)), f in [-1, 1]; the change of
  // variable keeps every grid point inside the Bloch ball and puts the
  // boundary exactly on f = +-1
  auto value_at = [&](double r, double f) {
    double b = std::sqrt(std::max(0.0, r * (1.0 - r)));
    adversary::CardStealPassword pw = adversary::CardStealPassword::make(
        r, f * b, 0.0);
    return delta_e_closed_form(pw, p);
  };

  double r_lo = 0.0, r_hi = 1.0, f_lo = -1.0, f_hi = 1.0;
  const int steps = 320;
  PnMinimum best;
  best.value = 1e300;
  for (int round = 0; round < 3; ++round) {
    for (int ir = 0; ir <= steps; ++ir) {
      double r = r_lo + (r_hi - r_lo) * ir / steps;
      for (int jf = 0; jf <= steps; ++jf) {
        double f = f_lo + (f_hi - f_lo) * jf / steps;
        double v = value_at(r, f);
        if (v < best.value) {
          best.value = v;
          best.r = r;
          best.x = f * std::sqrt(std::max(0.0, r * (1.0 - r)));
        }
      }
    }
    double r_span = (r_hi - r_lo) / steps * 4.0;
    double f_span = (f_hi - f_lo) / steps * 4.0;
    double fb = std::sqrt(std::max(0.0, best.r * (1.0 - best.r)));
    double bf = fb > 0.0 ? best.x / fb : 0.0;
    r_lo = std::max(0.0, best.r - r_span);
    r_hi = std::min(1.0, best.r + r_span);
    f_lo = std::max(-1.0, bf - f_span);
    f_hi = std::min(1.0, bf + f_span);
  }
  return best;
}

double total_detection(double p, std::uint64_t n) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("total_detection: p outside [0,1]");
  if (n == 0) throw std::invalid_argument("total_detection: n must be >= 1");
  return 1.0 - std::pow(1.0 - p, static_cast<double>(n));
}

}  // namespace qpass::analysis
