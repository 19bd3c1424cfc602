#pragma once

namespace qpass::primitives {

// The two knobs of the scheme plus everything derived from them.
//   alpha in (0,1): amplitude of |0> in the password state for bit 1
//   delta in (0,pi/2): rotation angle of the card lock, xi = cos(delta),
//                      eta = sin(delta)
//   d = sqrt(1 - alpha^2 xi^2): normalization of the unlocked bit-1 branch
// Endpoints are rejected: alpha or xi at 0/1 degenerates the scheme (password
// states coincide or the lock becomes trivial).
struct ProtocolParams {
  double alpha;
  double beta;
  double delta;
  double xi;
  double eta;
  double d;

  static ProtocolParams from_alpha_delta(double alpha, double delta);
  static ProtocolParams from_alpha_xi(double alpha, double xi);
};

}  // namespace qpass::primitives
