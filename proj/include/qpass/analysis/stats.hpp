#pragma once

#include <cstdint>
#include <string>

namespace qpass::analysis {

// Binomial estimate with a normal-approximation interval; the interval falls
// back to Wilson when the count sits on 0 or trials, where the normal width
// collapses to zero and would overstate certainty. z pinned at 95% two-sided.
struct DetectionStats {
  std::uint64_t trials = 0;
  std::uint64_t detections = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool wilson = false;

  static DetectionStats from_counts(std::uint64_t detections,
                                    std::uint64_t trials);
};

// |estimate - p| in units of the binomial standard error at p (the quoted
// sigma uses the reference p, not the estimate, so a zero count stays usable)
double sigma_distance(const DetectionStats& s, double p);

struct BoundCheckReport {
  std::string name;
  double closed_form = 0.0;  // target value (0 for pure residual checks)
  double oracle = 0.0;       // independently computed value
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

}  // namespace qpass::analysis
