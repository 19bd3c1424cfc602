#include "qpass/qcore/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace qpass::qcore {

namespace {

// scatter the low bits of `sub` (one per listed qubit, in list order) into a
// full big-endian basis index
std::size_t scatter(std::size_t sub, const std::vector<std::size_t>& qubits,
                    std::size_t n_qubits) {
  std::size_t idx = 0;
  for (std::size_t t = 0; t < qubits.size(); ++t) {
    std::size_t bit = (sub >> (qubits.size() - 1 - t)) & 1u;
    idx |= bit << (n_qubits - 1 - qubits[t]);
  }
  return idx;
}

void check_subset(const std::vector<std::size_t>& keep, std::size_t n) {
  if (keep.empty() || keep.size() >= n)
    throw std::invalid_argument("keep must be a non-empty proper subset");
  for (std::size_t t = 0; t < keep.size(); ++t) {
    if (keep[t] >= n) throw std::invalid_argument("keep: qubit out of range");
    if (t > 0 && keep[t] <= keep[t - 1])
      throw std::invalid_argument("keep must be strictly increasing");
  }
}

}  // namespace

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<cplx> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return StateVector(std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

StateVector apply(const CMatrix& u, const StateVector& psi) {
  if (u.rows() != u.cols() || u.rows() != psi.dim())
    throw std::invalid_argument("apply: shape mismatch");
  std::vector<cplx> out(psi.dim());
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < psi.dim(); ++c) s += u(r, c) * psi[c];
    out[r] = s;
  }
  return StateVector(std::move(out));
}

DensityMatrix apply(const CMatrix& u, const DensityMatrix& rho) {
  if (u.rows() != u.cols() || u.rows() != rho.dim())
    throw std::invalid_argument("apply: shape mismatch");
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& keep) {
  const std::size_t n = rho.num_qubits();
  check_subset(keep, n);
  std::vector<std::size_t> drop;
  for (std::size_t q = 0; q < n; ++q) {
    bool kept = false;
    for (std::size_t k : keep) kept |= (k == q);
    if (!kept) drop.push_back(q);
  }
  const std::size_t kd = 1ull << keep.size();
  const std::size_t dd = 1ull << drop.size();
  CMatrix out(kd, kd);
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) {
      cplx s = 0.0;
      for (std::size_t d = 0; d < dd; ++d) {
        std::size_t off = scatter(d, drop, n);
        s += rho(scatter(i, keep, n) | off, scatter(j, keep, n) | off);
      }
      out(i, j) = s;
    }
  return DensityMatrix(std::move(out));
}

DensityMatrix reduced_state(const StateVector& psi,
                            const std::vector<std::size_t>& keep) {
  const std::size_t n = psi.num_qubits();
  check_subset(keep, n);
  std::vector<std::size_t> drop;
  for (std::size_t q = 0; q < n; ++q) {
    bool kept = false;
    for (std::size_t k : keep) kept |= (k == q);
    if (!kept) drop.push_back(q);
  }
  const std::size_t kd = 1ull << keep.size();
  const std::size_t dd = 1ull << drop.size();
  CMatrix out(kd, kd);
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) {
      cplx s = 0.0;
      for (std::size_t d = 0; d < dd; ++d) {
        std::size_t off = scatter(d, drop, n);
        s += psi[scatter(i, keep, n) | off] * std::conj(psi[scatter(j, keep, n) | off]);
      }
      out(i, j) = s;
    }
  return DensityMatrix(std::move(out));
}

double born_probability(const StateVector& psi, const CMatrix& projector) {
  if (projector.rows() != projector.cols() || projector.rows() != psi.dim())
    throw std::invalid_argument("born_probability: shape mismatch");
  if (!is_hermitian(projector, 1e-12) ||
      (projector * projector).max_abs_diff(projector) > 1e-12)
    throw std::invalid_argument("born_probability: not a projector");
  cplx s = 0.0;
  for (std::size_t r = 0; r < psi.dim(); ++r)
    for (std::size_t c = 0; c < psi.dim(); ++c)
      s += std::conj(psi[r]) * projector(r, c) * psi[c];
  return s.real();
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

CMatrix embed(const CMatrix& u, std::size_t n_qubits,
              const std::vector<std::size_t>& targets) {
  const std::size_t k = targets.size();
  if (u.rows() != u.cols() || u.rows() != (1ull << k))
    throw std::invalid_argument("embed: unitary size does not match targets");
  for (std::size_t t = 0; t < k; ++t) {
    if (targets[t] >= n_qubits)
      throw std::invalid_argument("embed: target out of range");
    for (std::size_t s = t + 1; s < k; ++s)
      if (targets[t] == targets[s])
        throw std::invalid_argument("embed: duplicate target");
  }
  const std::size_t dim = 1ull << n_qubits;
  std::size_t target_mask = 0;
  for (std::size_t q : targets) target_mask |= 1ull << (n_qubits - 1 - q);
  CMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t rest = r & ~target_mask;
    std::size_t rsub = 0;
    for (std::size_t t = 0; t < k; ++t)
      rsub = (rsub << 1) | ((r >> (n_qubits - 1 - targets[t])) & 1u);
    for (std::size_t csub = 0; csub < (1ull << k); ++csub) {
      cplx v = u(rsub, csub);
      if (v == cplx{}) continue;
      out(r, rest | scatter(csub, targets, n_qubits)) = v;
    }
  }
  return out;
}

std::optional<SplitResult> split_product(const StateVector& psi,
                                         std::size_t n_front, double tol) {
  const std::size_t n = psi.num_qubits();
  if (n_front == 0 || n_front >= n)
    throw std::invalid_argument("split_product: bad front size");
  const std::size_t fd = 1ull << n_front;
  const std::size_t bd = 1ull << (n - n_front);

  // view psi as an fd x bd matrix; a product state has rank one
  std::size_t best = 0;
  double best_n2 = -1.0;
  for (std::size_t i = 0; i < fd; ++i) {
    double n2 = 0.0;
    for (std::size_t j = 0; j < bd; ++j) n2 += std::norm(psi[i * bd + j]);
    if (n2 > best_n2) {
      best_n2 = n2;
      best = i;
    }
  }
  std::vector<cplx> back(bd);
  double bn = std::sqrt(best_n2);
  for (std::size_t j = 0; j < bd; ++j) back[j] = psi[best * bd + j] / bn;
  std::vector<cplx> front(fd);
  for (std::size_t i = 0; i < fd; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < bd; ++j) s += std::conj(back[j]) * psi[i * bd + j];
    front[i] = s;
  }
  double err2 = 0.0;
  for (std::size_t i = 0; i < fd; ++i)
    for (std::size_t j = 0; j < bd; ++j)
      err2 += std::norm(psi[i * bd + j] - front[i] * back[j]);
  double residual = std::sqrt(err2);
  if (residual > tol) return std::nullopt;
  return SplitResult{StateVector(std::move(front)), StateVector(std::move(back)),
                     residual};
}

}  // namespace qpass::qcore
