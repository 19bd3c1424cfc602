#include "qpass/qcore/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "qpass/qcore/ops.hpp"

namespace qpass::qcore {

namespace {

void check_basis(const std::vector<CMatrix>& ps,
                 const std::vector<std::string>& labels) {
  if (ps.empty() || ps.size() != labels.size())
    throw std::invalid_argument("basis: projector/label count mismatch");
  const std::size_t dim = ps.front().rows();
  CMatrix sum(dim, dim);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const CMatrix& p = ps[i];
    if (p.rows() != dim || p.cols() != dim)
      throw std::invalid_argument("basis: projector shape mismatch");
    if (!is_hermitian(p, 1e-12))
      throw std::invalid_argument("basis: projector not Hermitian");
    for (std::size_t j = 0; j < ps.size(); ++j) {
      CMatrix prod = p * ps[j];
      double dev = (i == j) ? prod.max_abs_diff(p) : prod.max_abs();
      if (dev > 1e-12)
        throw std::invalid_argument("basis: projectors not orthogonal idempotents");
    }
    sum = sum + p;
  }
  if (sum.max_abs_diff(CMatrix::identity(dim)) > 1e-12)
    throw std::invalid_argument("basis: projectors do not sum to identity");
}

}  // namespace

ProjectiveBasis::ProjectiveBasis(std::vector<CMatrix> projectors,
                                 std::vector<std::string> labels)
    : projectors_(std::move(projectors)), labels_(std::move(labels)) {
  check_basis(projectors_, labels_);
}

ProjectiveBasis ProjectiveBasis::from_states(
    const std::vector<StateVector>& states, std::vector<std::string> labels) {
  std::vector<CMatrix> ps;
  ps.reserve(states.size());
  for (const StateVector& s : states) {
    CMatrix p(s.dim(), s.dim());
    for (std::size_t r = 0; r < s.dim(); ++r)
      for (std::size_t c = 0; c < s.dim(); ++c)
        p(r, c) = s[r] * std::conj(s[c]);
    ps.push_back(std::move(p));
  }
  return ProjectiveBasis(std::move(ps), std::move(labels));
}

ProjectiveBasis ProjectiveBasis::computational(std::size_t n_qubits) {
  const std::size_t dim = 1ull << n_qubits;
  std::vector<CMatrix> ps;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) {
    CMatrix p(dim, dim);
    p(i, i) = 1.0;
    ps.push_back(std::move(p));
    std::string bits;
    for (std::size_t q = 0; q < n_qubits; ++q)
      bits += ((i >> (n_qubits - 1 - q)) & 1u) ? '1' : '0';
    labels.push_back(bits);
  }
  return ProjectiveBasis(std::move(ps), std::move(labels));
}

ProjectiveBasis ProjectiveBasis::lifted(
    std::size_t n_qubits, const std::vector<std::size_t>& targets) const {
  ProjectiveBasis out;
  out.labels_ = labels_;
  out.projectors_.reserve(projectors_.size());
  for (const CMatrix& p : projectors_)
    out.projectors_.push_back(embed(p, n_qubits, targets));
  return out;
}

namespace {

std::size_t sample_outcome(std::vector<double> probs, RngStream& rng) {
  double total = 0.0;
  for (double& p : probs) {
    if (p < 1e-15) p = 0.0;
    total += p;
  }
  if (total <= 0.0)
    throw std::runtime_error("measure: all outcome probabilities vanish");
  double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t pick = probs.size() - 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc && probs[i] > 0.0) {
      pick = i;
      break;
    }
  }
  return pick;
}

}  // namespace

MeasureResult measure(const StateVector& psi, const ProjectiveBasis& basis,
                      RngStream& rng) {
  if (basis.dim() != psi.dim())
    throw std::invalid_argument("measure: basis dimension mismatch");
  std::vector<double> probs(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const CMatrix& p = basis.projector(i);
    cplx s = 0.0;
    for (std::size_t r = 0; r < psi.dim(); ++r)
      for (std::size_t c = 0; c < psi.dim(); ++c)
        s += std::conj(psi[r]) * p(r, c) * psi[c];
    probs[i] = s.real();
  }
  std::size_t pick = sample_outcome(probs, rng);
  const CMatrix& p = basis.projector(pick);
  std::vector<cplx> post(psi.dim());
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < psi.dim(); ++c) s += p(r, c) * psi[c];
    post[r] = s;
  }
  double n2 = 0.0;
  for (const cplx& a : post) n2 += std::norm(a);
  double n1 = std::sqrt(n2);
  for (cplx& a : post) a /= n1;
  return MeasureResult{pick, basis.label(pick), StateVector(std::move(post))};
}

MeasureResultDM measure(const DensityMatrix& rho, const ProjectiveBasis& basis,
                        RngStream& rng) {
  if (basis.dim() != rho.dim())
    throw std::invalid_argument("measure: basis dimension mismatch");
  std::vector<double> probs(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    probs[i] = (basis.projector(i) * rho.matrix()).trace().real();
  std::size_t pick = sample_outcome(probs, rng);
  const CMatrix& p = basis.projector(pick);
  CMatrix post = p * rho.matrix() * p;
  cplx tr = post.trace();
  post = (cplx{1.0} / tr) * post;
  return MeasureResultDM{pick, basis.label(pick), DensityMatrix(std::move(post))};
}

}  // namespace qpass::qcore
