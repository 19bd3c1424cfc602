#pragma once

#include <cstdint>
#include <vector>

#include "qpass/qcore/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpass::analysis {

enum class ParallelPolicy { Serial, OpenMP };

inline ParallelPolicy default_policy() {
#ifdef _OPENMP
  return ParallelPolicy::OpenMP;
#else
  return ParallelPolicy::Serial;
#endif
}

// Run `trials` independent trials, each on its own derived stream, and count
// the ones that return true. Trial i always sees base.substream(i), so the
// count is identical under any schedule or thread count; the reduction is a
// plain integer sum.
template <class TrialFn>
std::uint64_t count_trials(std::uint64_t trials, const qcore::RngStream& base,
                           TrialFn&& fn, ParallelPolicy policy) {
#ifdef _OPENMP
  if (policy == ParallelPolicy::OpenMP) {
    std::uint64_t acc = 0;
    const std::int64_t n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (std::int64_t i = 0; i < n; ++i) {
      qcore::RngStream rng = base.substream(static_cast<std::uint64_t>(i));
      acc += fn(static_cast<std::uint64_t>(i), rng) ? 1u : 0u;
    }
    return acc;
  }
#else
  (void)policy;
#endif
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    qcore::RngStream rng = base.substream(i);
    acc += fn(i, rng) ? 1u : 0u;
  }
  return acc;
}

// Same scheme for trials that contribute a fixed-width vector of counts
// (e.g. flags, stage rejections, totals in one pass). fn(i, rng, acc) must
// only ever add into acc; vector addition commutes, so scheduling cannot
// change the result.
template <class TrialFn>
std::vector<std::uint64_t> sum_trials(std::uint64_t trials, std::size_t width,
                                      const qcore::RngStream& base, TrialFn&& fn,
                                      ParallelPolicy policy) {
  std::vector<std::uint64_t> total(width, 0);
#ifdef _OPENMP
  if (policy == ParallelPolicy::OpenMP) {
    const std::int64_t n = static_cast<std::int64_t>(trials);
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(width, 0);
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) {
        qcore::RngStream rng = base.substream(static_cast<std::uint64_t>(i));
        fn(static_cast<std::uint64_t>(i), rng, local);
      }
#pragma omp critical
      for (std::size_t k = 0; k < width; ++k) total[k] += local[k];
    }
    return total;
  }
#else
  (void)policy;
#endif
  for (std::uint64_t i = 0; i < trials; ++i) {
    qcore::RngStream rng = base.substream(i);
    fn(i, rng, total);
  }
  return total;
}

}  // namespace qpass::analysis
