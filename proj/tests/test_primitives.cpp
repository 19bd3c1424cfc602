#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "qpass/primitives/bell.hpp"
#include "qpass/primitives/decoy.hpp"
#include "qpass/primitives/lock.hpp"
#include "qpass/primitives/params.hpp"
#include "qpass/qcore/ops.hpp"

using namespace qpass;
using primitives::ProtocolParams;
using qcore::cplx;
using qcore::StateVector;

namespace {

double ket_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ProtocolParams grid_point(int i, int j, int side) {
  return ProtocolParams::from_alpha_xi(double(i) / (side + 1),
                                       double(j) / (side + 1));
}

}  // namespace

TEST_SUITE("primitives") {

TEST_CASE("params derive consistently from either knob") {
  ProtocolParams p = ProtocolParams::from_alpha_xi(0.5, 0.5);
  CHECK(p.xi == 0.5);  // the given knob stays bit-exact
  CHECK(p.alpha == 0.5);
  CHECK(std::abs(p.beta * p.beta + p.alpha * p.alpha - 1.0) < 1e-15);
  CHECK(std::abs(p.eta * p.eta + p.xi * p.xi - 1.0) < 1e-15);
  CHECK(std::abs(p.d - oracle::kDefaultD) < 1e-15);

  ProtocolParams q = ProtocolParams::from_alpha_delta(0.5, p.delta);
  CHECK(std::abs(q.xi - 0.5) < 1e-15);
  CHECK(std::abs(q.eta - p.eta) < 1e-15);

  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j) {
      ProtocolParams g = grid_point(i, j, 7);
      CHECK(std::abs(g.d * g.d - (1.0 - g.alpha * g.alpha * g.xi * g.xi)) < 1e-15);
      CHECK(std::abs(std::cos(g.delta) - g.xi) < 1e-12);
    }
}

TEST_CASE("params reject the degenerate endpoints") {
  CHECK_THROWS_AS(ProtocolParams::from_alpha_xi(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolParams::from_alpha_xi(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolParams::from_alpha_xi(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolParams::from_alpha_xi(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolParams::from_alpha_delta(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolParams::from_alpha_delta(0.5, 1.5707963267948966),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProtocolParams::from_alpha_delta(-0.1, 1.0), std::invalid_argument);
}

TEST_CASE("bell states are the standard orthonormal four") {
  using primitives::BellKind;
  StateVector plus = primitives::make_bell(BellKind::Plus);
  StateVector minus = primitives::make_bell(BellKind::Minus);
  StateVector bplus = primitives::make_bell(BellKind::BPlus);
  StateVector bminus = primitives::make_bell(BellKind::BMinus);
  const double r = 0.7071067811865476;
  CHECK(std::abs(plus[0] - cplx{r, 0.0}) < 1e-15);
  CHECK(std::abs(plus[3] - cplx{r, 0.0}) < 1e-15);
  CHECK(std::abs(minus[3] - cplx{-r, 0.0}) < 1e-15);
  CHECK(std::abs(bplus[1] - cplx{r, 0.0}) < 1e-15);
  CHECK(std::abs(bminus[2] - cplx{-r, 0.0}) < 1e-15);
  for (const StateVector* a : {&plus, &minus, &bplus, &bminus})
    for (const StateVector* b : {&plus, &minus, &bplus, &bminus})
      CHECK(std::abs(qcore::overlap(*a, *b) - (a == b ? 1.0 : 0.0)) < 1e-12);
  CHECK(std::string(primitives::bell_label(BellKind::BMinus)) == "B-");
  CHECK(primitives::bell_basis().size() == 4);
}

TEST_CASE("password kets") {
  ProtocolParams p = ProtocolParams::from_alpha_xi(0.5, 0.5);
  StateVector k0 = primitives::make_password_ket(p, 0);
  StateVector k1 = primitives::make_password_ket(p, 1);
  CHECK(ket_diff(k0, StateVector::basis(1, 0)) == 0.0);
  CHECK(std::abs(k1[0] - cplx{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(k1[1] - cplx{p.beta, 0.0}) < 1e-15);
}

TEST_CASE("card rotation and the locked pair") {
  ProtocolParams p = ProtocolParams::from_alpha_xi(0.5, 0.5);
  qcore::CMatrix r = primitives::make_rotation(p);
  CHECK(qcore::unitarity_residual(r) < 1e-15);
  CHECK(std::abs(r(0, 0) - std::polar(1.0, p.delta)) < 1e-15);
  CHECK(std::abs(r(1, 1) - std::polar(1.0, -p.delta)) < 1e-15);
  CHECK(std::abs(r(0, 1)) == 0.0);
  qcore::CMatrix rinv = primitives::make_rotation_inverse(p);
  CHECK((r * rinv).max_abs_diff(qcore::CMatrix::identity(2)) < 1e-15);

  StateVector locked = primitives::make_locked_pair(p);
  // equals (R (x) I)|Plus>
  StateVector direct = qcore::apply(qcore::embed(r, 2, {0}),
                                    primitives::make_bell(primitives::BellKind::Plus));
  CHECK(ket_diff(locked, direct) < 1e-15);
  // equals xi|Plus> + i eta|Minus>, amplitude e^{i delta}/sqrt2 on |00>
  CHECK(std::abs(locked[0] - oracle::kLockedPairAmp00) < 1e-15);
  CHECK(std::abs(locked[3] - std::conj(oracle::kLockedPairAmp00)) < 1e-15);
  CHECK(std::abs(locked[1]) == 0.0);
  CHECK(std::abs(locked[2]) == 0.0);
}

TEST_CASE("lock unitary: unitarity and pinned row across the grid") {
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      ProtocolParams p = grid_point(i, j, 5);
      primitives::LockUnitary lock = primitives::build_lock_unitary(p);
      CHECK(qcore::unitarity_residual(lock.matrix) < 1e-12);
      // restriction onto (|1,+>, |0,->, |1,->): extract M_0j and compare with
      // the closed-form pinned row
      const StateVector f0 = qcore::tensor(
          StateVector::basis(1, 1), primitives::make_bell(primitives::BellKind::Plus));
      const StateVector f1 = qcore::tensor(
          StateVector::basis(1, 0), primitives::make_bell(primitives::BellKind::Minus));
      const StateVector f2 = qcore::tensor(
          StateVector::basis(1, 1), primitives::make_bell(primitives::BellKind::Minus));
      const StateVector* fs[3] = {&f0, &f1, &f2};
      cplx want[3] = {cplx{p.beta * p.xi / p.d, 0.0},
                      cplx{0.0, -p.alpha * p.eta / p.d},
                      cplx{0.0, -p.beta * p.eta / p.d}};
      for (int c = 0; c < 3; ++c) {
        StateVector image = qcore::apply(lock.matrix, *fs[c]);
        CHECK(std::abs(qcore::inner(f0, image) - want[c]) < 1e-12);
      }
    }
}

TEST_CASE("lock pinned row at the canonical point") {
  ProtocolParams p = ProtocolParams::from_alpha_xi(0.5, 0.5);
  primitives::LockUnitary lock = primitives::build_lock_unitary(p);
  CHECK(std::abs(p.beta * p.xi / p.d - oracle::kRow0Abs0) < 1e-15);
  CHECK(std::abs(p.alpha * p.eta / p.d - oracle::kRow0Abs1) < 1e-15);
  CHECK(std::abs(p.beta * p.eta / p.d - oracle::kRow0Abs2) < 1e-15);
  CHECK(lock.completion.rows() == 2);
  CHECK(lock.completion.cols() == 3);
}

TEST_CASE("lock honest actions") {
  for (double alpha : {0.3, 0.5, 0.8})
    for (double xi : {0.2, 0.5, 0.9}) {
      ProtocolParams p = ProtocolParams::from_alpha_xi(alpha, xi);
      primitives::LockUnitary lock = primitives::build_lock_unitary(p);

      // bit 0: |0>|Plus> is fixed
      StateVector in0 = qcore::tensor(StateVector::basis(1, 0),
                                      primitives::make_bell(primitives::BellKind::Plus));
      CHECK(ket_diff(qcore::apply(lock.matrix, in0), in0) < 1e-12);

      // bit 1: password ket against the locked pair comes out as
      // (alpha xi |0> + d |1>) (x) |Plus>
      StateVector in1 = qcore::tensor(primitives::make_password_ket(p, 1),
                                      primitives::make_locked_pair(p));
      StateVector carrier({cplx{p.alpha * p.xi, 0.0}, cplx{p.d, 0.0}});
      StateVector want = qcore::tensor(carrier,
                                       primitives::make_bell(primitives::BellKind::Plus));
      CHECK(ket_diff(qcore::apply(lock.matrix, in1), want) < 1e-12);

      // swap sector is untouched
      for (primitives::BellKind k :
           {primitives::BellKind::BPlus, primitives::BellKind::BMinus})
        for (int b : {0, 1}) {
          StateVector in = qcore::tensor(StateVector::basis(1, std::size_t(b)),
                                         primitives::make_bell(k));
          CHECK(ket_diff(qcore::apply(lock.matrix, in), in) < 1e-12);
        }
    }
}

TEST_CASE("carrier amplitudes at the canonical point") {
  ProtocolParams p = ProtocolParams::from_alpha_xi(0.5, 0.5);
  CHECK(std::abs(p.alpha * p.xi - oracle::kCarrierAmp0) < 1e-15);
  CHECK(std::abs(p.d - oracle::kCarrierAmp1) < 1e-15);
  StateVector in1 = qcore::tensor(primitives::make_password_ket(p, 1),
                                  primitives::make_locked_pair(p));
  CHECK(std::abs(in1[0] - oracle::kBit1TripleAmp000) < 1e-15);
}

TEST_CASE("every completion order yields the same protocol action") {
  ProtocolParams p = ProtocolParams::from_alpha_xi(0.4, 0.7);
  primitives::LockUnitary def = primitives::build_lock_unitary(p);
  for (const std::array<int, 3>& ord :
       {std::array<int, 3>{0, 1, 2}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0}}) {
    primitives::LockUnitary alt = primitives::build_lock_unitary(p, ord);
    CHECK(qcore::unitarity_residual(alt.matrix) < 1e-12);
    // honest inputs cannot tell the completions apart
    StateVector in0 = qcore::tensor(StateVector::basis(1, 0),
                                    primitives::make_bell(primitives::BellKind::Plus));
    StateVector in1 = qcore::tensor(primitives::make_password_ket(p, 1),
                                    primitives::make_locked_pair(p));
    CHECK(ket_diff(qcore::apply(def.matrix, in0), qcore::apply(alt.matrix, in0)) < 1e-12);
    CHECK(ket_diff(qcore::apply(def.matrix, in1), qcore::apply(alt.matrix, in1)) < 1e-12);
  }
  CHECK_THROWS_AS(primitives::build_lock_unitary(p, {0, 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("unlock and relock are inverses") {
  ProtocolParams p = ProtocolParams::from_alpha_xi(0.6, 0.3);
  primitives::LockUnitary lock = primitives::build_lock_unitary(p);
  qcore::RngStream rng(17, 0);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<cplx> a(8);
    double n2 = 0.0;
    for (cplx& v : a) {
      v = cplx{rng.normal(), rng.normal()};
      n2 += std::norm(v);
    }
    for (cplx& v : a) v /= std::sqrt(n2);
    StateVector psi(a);
    StateVector round =
        primitives::apply_relock(lock, primitives::apply_unlock(lock, psi));
    CHECK(ket_diff(round, psi) < 1e-12);
  }
}

TEST_CASE("bell verification outcomes") {
  qcore::RngStream rng(23, 0);
  for (int i = 0; i < 10; ++i) {
    primitives::BellVerifyResult r =
        primitives::bell_verify(primitives::make_bell(primitives::BellKind::Plus), rng);
    CHECK(r.accepted);
    CHECK(r.outcome == primitives::BellKind::Plus);
  }
  for (int i = 0; i < 10; ++i) {
    primitives::BellVerifyResult r = primitives::bell_verify(
        primitives::make_bell(primitives::BellKind::BMinus), rng);
    CHECK(!r.accepted);
    CHECK(r.outcome == primitives::BellKind::BMinus);
  }
  // maximally mixed pair hits Plus a quarter of the time
  int hits = 0;
  const int n = 4000;
  qcore::DensityMatrix mm = qcore::DensityMatrix::maximally_mixed(2);
  for (int i = 0; i < n; ++i) hits += primitives::bell_verify(mm, rng).accepted;
  CHECK(std::abs(hits / double(n) - 0.25) < oracle::four_sigma(0.25, n));
}

TEST_CASE("decoy alphabet roundtrip and bases") {
  using primitives::DecoySymbol;
  for (int w : {2, 3, 4, 5}) {
    DecoySymbol s = primitives::decoy_symbol_from_wire(w);
    CHECK(primitives::decoy_wire_value(s) == w);
  }
  CHECK_THROWS_AS(primitives::decoy_symbol_from_wire(0), std::invalid_argument);
  CHECK_THROWS_AS(primitives::decoy_symbol_from_wire(6), std::invalid_argument);
  CHECK(primitives::decoy_basis_of(DecoySymbol::Z1) == primitives::DecoyBasis::Z);
  CHECK(primitives::decoy_basis_of(DecoySymbol::X0) == primitives::DecoyBasis::X);
  CHECK(primitives::decoy_expected_bit(DecoySymbol::Z1) == 1);
  CHECK(primitives::decoy_expected_bit(DecoySymbol::X0) == 0);
}

TEST_CASE("decoy measurement: matched basis is deterministic, crossed is 50/50") {
  using primitives::DecoySymbol;
  qcore::RngStream rng(29, 0);
  for (DecoySymbol s : {DecoySymbol::Z0, DecoySymbol::Z1, DecoySymbol::X0,
                        DecoySymbol::X1}) {
    for (int i = 0; i < 8; ++i) {
      int bit = primitives::decoy_measure(primitives::decoy_encode(s),
                                          primitives::decoy_basis_of(s), rng);
      CHECK(bit == primitives::decoy_expected_bit(s));
    }
  }
  int ones = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i)
    ones += primitives::decoy_measure(primitives::decoy_encode(DecoySymbol::Z0),
                                      primitives::DecoyBasis::X, rng);
  CHECK(std::abs(ones / double(n) - 0.5) < oracle::four_sigma(0.5, n));
}

}  // TEST_SUITE
