#include "qpass/primitives/params.hpp"

#include <cmath>
#include <stdexcept>

namespace qpass::primitives {

namespace {
constexpr double kHalfPi = 1.57079632679489661923;
}

ProtocolParams ProtocolParams::from_alpha_delta(double alpha, double delta) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must lie strictly inside (0,1)");
  if (!(delta > 0.0) || !(delta < kHalfPi))
    throw std::invalid_argument("delta must lie strictly inside (0,pi/2)");
  ProtocolParams p;
  p.alpha = alpha;
  p.beta = std::sqrt(1.0 - alpha * alpha);
  p.delta = delta;
  p.xi = std::cos(delta);
  p.eta = std::sin(delta);
  p.d = std::sqrt(1.0 - alpha * alpha * p.xi * p.xi);
  return p;
}

ProtocolParams ProtocolParams::from_alpha_xi(double alpha, double xi) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must lie strictly inside (0,1)");
  if (!(xi > 0.0) || !(xi < 1.0))
    throw std::invalid_argument("xi must lie strictly inside (0,1)");
  // keep the caller's xi bit-exact; delta is the derived quantity here
  ProtocolParams p;
  p.alpha = alpha;
  p.beta = std::sqrt(1.0 - alpha * alpha);
  p.delta = std::acos(xi);
  p.xi = xi;
  p.eta = std::sqrt(1.0 - xi * xi);
  p.d = std::sqrt(1.0 - alpha * alpha * xi * xi);
  return p;
}

}  // namespace qpass::primitives
