#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpass/analysis/stats.hpp"
#include "qpass/primitives/lock.hpp"

namespace qpass::analysis {

struct VerifyBoundsOptions {
  std::size_t grid = 9;         // grid x grid interior points over (alpha, xi)
  std::size_t forgeries = 100;  // seeded random forged states for the oracles
  std::uint64_t optimizer_budget = 600000;  // per grid point
  std::size_t optimizer_starts = 64;
  std::uint64_t seed = 4242;
  // the single point the headline rows are evaluated at; the canonical
  // alpha = xi = 1/2 literals are checked regardless of this choice
  double headline_alpha = 0.5;
  double headline_xi = 0.5;
};

// The whole closed-form / oracle / optimizer cross-check battery. Every row
// is pass iff discrepancy <= tolerance; tolerances are pinned here, next to
// the check they belong to, and nowhere else.
std::vector<BoundCheckReport> verify_bounds(const VerifyBoundsOptions& o = {});

bool all_pass(const std::vector<BoundCheckReport>& reports);

nlohmann::json reports_to_json(const std::vector<BoundCheckReport>& reports);
void write_reports_csv(std::ostream& os,
                       const std::vector<BoundCheckReport>& reports);

nlohmann::json detection_stats_to_json(const DetectionStats& s);

// one CSV row per estimated scenario, with an optional reference value
struct StatsRow {
  std::string scenario;
  DetectionStats stats;
  double target = 0.0;
  bool has_target = false;
};
void write_stats_csv(std::ostream& os, const std::vector<StatsRow>& rows);

nlohmann::json lock_to_json(const primitives::LockUnitary& lock);

}  // namespace qpass::analysis
