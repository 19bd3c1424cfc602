#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qpass/qcore/matrix.hpp"
#include "qpass/qcore/rng.hpp"
#include "qpass/qcore/state.hpp"

namespace qpass::qcore {

// Complete set of orthogonal projectors with labels. Construction checks
// completeness (sum = I), Hermiticity and orthogonal idempotence to 1e-12.
class ProjectiveBasis {
 public:
  ProjectiveBasis(std::vector<CMatrix> projectors,
                  std::vector<std::string> labels);

  // rank-1 basis from orthonormal states
  static ProjectiveBasis from_states(const std::vector<StateVector>& states,
                                     std::vector<std::string> labels);
  static ProjectiveBasis computational(std::size_t n_qubits);

  // same basis acting on `targets` inside an n-qubit system
  ProjectiveBasis lifted(std::size_t n_qubits,
                         const std::vector<std::size_t>& targets) const;

  std::size_t size() const { return projectors_.size(); }
  std::size_t dim() const { return projectors_.front().rows(); }
  const CMatrix& projector(std::size_t i) const { return projectors_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

 private:
  ProjectiveBasis() = default;
  std::vector<CMatrix> projectors_;
  std::vector<std::string> labels_;
};

struct MeasureResult {
  std::size_t index;
  std::string label;
  StateVector post;
};

struct MeasureResultDM {
  std::size_t index;
  std::string label;
  DensityMatrix post;
};

// Sample one outcome by the Born rule (exactly one uniform draw per call) and
// collapse. Outcomes with probability < 1e-15 are never selected.
MeasureResult measure(const StateVector& psi, const ProjectiveBasis& basis,
                      RngStream& rng);
MeasureResultDM measure(const DensityMatrix& rho, const ProjectiveBasis& basis,
                        RngStream& rng);

}  // namespace qpass::qcore
