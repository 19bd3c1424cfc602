#include "qpass/primitives/lock.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qpass/qcore/measure.hpp"
#include "qpass/qcore/ops.hpp"

namespace qpass::primitives {

namespace {

using qcore::cplx;
using qcore::CMatrix;

using Vec3 = std::array<cplx, 3>;

cplx dot(const Vec3& a, const Vec3& b) {  // <a|b>
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const Vec3& a) { return dot(a, a).real(); }

// 8-dim basis vector |bit> (x) |bell>, amplitudes at 4*bit + pair index
std::array<cplx, 8> lifted(int bit, BellKind k) {
  std::array<cplx, 8> v{};
  const qcore::StateVector bell = make_bell(k);
  for (std::size_t i = 0; i < 4; ++i) v[4 * static_cast<std::size_t>(bit) + i] = bell[i];
  return v;
}

void add_outer(CMatrix& m, const std::array<cplx, 8>& ket,
               const std::array<cplx, 8>& bra) {
  for (std::size_t r = 0; r < 8; ++r) {
    if (ket[r] == cplx{}) continue;
    for (std::size_t c = 0; c < 8; ++c) m(r, c) += ket[r] * std::conj(bra[c]);
  }
}

}  // namespace

LockUnitary build_lock_unitary(const ProtocolParams& p) {
  return build_lock_unitary(p, {0, 1, 2});
}

LockUnitary build_lock_unitary(const ProtocolParams& p,
                               const std::array<int, 3>& order) {
  {
    bool seen[3] = {false, false, false};
    for (int o : order) {
      if (o < 0 || o > 2 || seen[o])
        throw std::invalid_argument("build_lock_unitary: order must permute 0..2");
      seen[o] = true;
    }
  }

  // The only pinned-down part of U off the trivial sector is how it acts on
  // span{|1,+>, |0,->, |1,->}. In that ordered basis the restriction is a 3x3
  // unitary whose first row is fixed by the protocol:
  //   ( beta xi / d,  -i alpha eta / d,  -i beta eta / d )
  // This row has unit norm for every valid parameter choice (that is exactly
  // d^2 = 1 - alpha^2 xi^2), so completing it to a unitary is always possible.
  const cplx mi{0.0, -1.0};
  Vec3 row0{cplx{p.beta * p.xi / p.d, 0.0}, mi * (p.alpha * p.eta / p.d),
            mi * (p.beta * p.eta / p.d)};

  // Gram-Schmidt the remaining two rows out of the coordinate candidates in
  // the requested order. A candidate collapsing under projection just gets
  // skipped; at least two of the three always survive (their residuals are
  // bounded below by 1 - alpha^2 and xi^2(1 - alpha^2) + alpha^2 eta^2).
  std::vector<Vec3> rows{row0};
  for (int oi = 0; oi < 3 && rows.size() < 3; ++oi) {
    Vec3 cand{};
    cand[static_cast<std::size_t>(order[static_cast<std::size_t>(oi)])] = 1.0;
    for (const Vec3& r : rows) {
      cplx proj = dot(r, cand);
      for (int i = 0; i < 3; ++i) cand[static_cast<std::size_t>(i)] -= proj * r[static_cast<std::size_t>(i)];
    }
    double n2 = norm2(cand);
    if (n2 < 1e-16) continue;
    double n1 = std::sqrt(n2);
    for (cplx& v : cand) v /= n1;
    rows.push_back(cand);
  }
  if (rows.size() != 3)
    throw std::runtime_error("build_lock_unitary: completion failed");

  // assemble the full 8x8 action
  const std::array<cplx, 8> e1p = lifted(1, BellKind::Plus);
  const std::array<cplx, 8> e0m = lifted(0, BellKind::Minus);
  const std::array<cplx, 8> e1m = lifted(1, BellKind::Minus);
  const std::array<const std::array<cplx, 8>*, 3> sub{&e1p, &e0m, &e1m};

  CMatrix u(8, 8);
  add_outer(u, lifted(0, BellKind::Plus), lifted(0, BellKind::Plus));
  for (int b = 0; b < 2; ++b) {
    add_outer(u, lifted(b, BellKind::BPlus), lifted(b, BellKind::BPlus));
    add_outer(u, lifted(b, BellKind::BMinus), lifted(b, BellKind::BMinus));
  }
  for (std::size_t j = 0; j < 3; ++j) {
    std::array<cplx, 8> image{};
    for (std::size_t i = 0; i < 3; ++i) {
      cplx coeff = rows[i][j];
      if (coeff == cplx{}) continue;
      for (std::size_t r = 0; r < 8; ++r) image[r] += coeff * (*sub[i])[r];
    }
    add_outer(u, image, *sub[j]);
  }

  LockUnitary lock;
  lock.params = p;
  lock.matrix = std::move(u);
  lock.completion = CMatrix(2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) lock.completion(i, j) = rows[i + 1][j];
  return lock;
}

qcore::StateVector apply_unlock(const LockUnitary& lock,
                                const qcore::StateVector& triple) {
  if (triple.dim() != 8)
    throw std::invalid_argument("apply_unlock: expected a 3-qubit state");
  return qcore::apply(lock.matrix, triple);
}

qcore::StateVector apply_relock(const LockUnitary& lock,
                                const qcore::StateVector& triple) {
  if (triple.dim() != 8)
    throw std::invalid_argument("apply_relock: expected a 3-qubit state");
  return qcore::apply(lock.matrix.adjoint(), triple);
}

BellVerifyResult bell_verify(const qcore::StateVector& pair,
                             qcore::RngStream& rng) {
  if (pair.dim() != 4)
    throw std::invalid_argument("bell_verify: expected a 2-qubit state");
  qcore::MeasureResult r = qcore::measure(pair, bell_basis(), rng);
  BellKind k = static_cast<BellKind>(r.index);
  return BellVerifyResult{k == BellKind::Plus, k};
}

BellVerifyResult bell_verify(const qcore::DensityMatrix& pair,
                             qcore::RngStream& rng) {
  if (pair.dim() != 4)
    throw std::invalid_argument("bell_verify: expected a 2-qubit state");
  qcore::MeasureResultDM r = qcore::measure(pair, bell_basis(), rng);
  BellKind k = static_cast<BellKind>(r.index);
  return BellVerifyResult{k == BellKind::Plus, k};
}

}  // namespace qpass::primitives
