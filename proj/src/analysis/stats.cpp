#include "qpass/analysis/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpass::analysis {

namespace {
constexpr double kZ = 1.959963984540054;  // two-sided 95%
}

DetectionStats DetectionStats::from_counts(std::uint64_t detections,
                                           std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("DetectionStats: zero trials");
  if (detections > trials)
    throw std::invalid_argument("DetectionStats: detections exceed trials");
  DetectionStats s;
  s.trials = trials;
  s.detections = detections;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(detections) / n;
  s.estimate = p;
  s.std_error = std::sqrt(p * (1.0 - p) / n);
  if (detections == 0 || detections == trials) {
    s.wilson = true;
    const double z2 = kZ * kZ;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half =
        kZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    s.ci_lo = std::max(0.0, centre - half);
    s.ci_hi = std::min(1.0, centre + half);
  } else {
    s.ci_lo = std::max(0.0, p - kZ * s.std_error);
    s.ci_hi = std::min(1.0, p + kZ * s.std_error);
  }
  return s;
}

double sigma_distance(const DetectionStats& s, double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("sigma_distance: reference outside [0,1]");
  if (s.trials == 0) throw std::invalid_argument("sigma_distance: no trials");
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(s.trials));
  if (se == 0.0)
    return s.estimate == p ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(s.estimate - p) / se;
}

}  // namespace qpass::analysis
