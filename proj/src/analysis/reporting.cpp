#include "qpass/analysis/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "qpass/analysis/formulas.hpp"
#include "qpass/analysis/optimize.hpp"
#include "qpass/primitives/bell.hpp"
#include "qpass/qcore/ops.hpp"
#include "qpass/qcore/rng.hpp"

namespace qpass::analysis {

using adversary::CardStealPassword;
using adversary::ForgedInput;
using primitives::ProtocolParams;
using qcore::cplx;
using qcore::StateVector;

namespace {

BoundCheckReport row(std::string name, double target, double measured,
                     double discrepancy, double tol) {
  BoundCheckReport r;
  r.name = std::move(name);
  r.closed_form = target;
  r.oracle = measured;
  r.discrepancy = discrepancy;
  r.tolerance = tol;
  r.pass = discrepancy <= tol;
  return r;
}

BoundCheckReport diff_row(std::string name, double target, double measured,
                          double tol) {
  return row(std::move(name), target, measured, std::abs(measured - target),
             tol);
}

double ket_residual(const StateVector& got, const StateVector& want) {
  double m = 0.0;
  for (std::size_t i = 0; i < got.dim(); ++i)
    m = std::max(m, std::abs(got[i] - want[i]));
  return m;
}

}  // namespace

std::vector<BoundCheckReport> verify_bounds(const VerifyBoundsOptions& o) {
  std::vector<BoundCheckReport> out;
  const ProtocolParams defaults = ProtocolParams::from_alpha_xi(0.5, 0.5);

  std::vector<ProtocolParams> grid;
  for (std::size_t i = 1; i <= o.grid; ++i)
    for (std::size_t j = 1; j <= o.grid; ++j)
      grid.push_back(ProtocolParams::from_alpha_xi(
          static_cast<double>(i) / (o.grid + 1),
          static_cast<double>(j) / (o.grid + 1)));

  std::vector<ForgedInput> forgeries;
  {
    qcore::RngStream rng(o.seed, 1);
    forgeries.reserve(o.forgeries);
    for (std::size_t k = 0; k < o.forgeries; ++k)
      forgeries.push_back(ForgedInput::random(rng));
  }

  double unitarity = 0.0, honest = 0.0, bell_sector = 0.0, completion = 0.0;
  double ps_oracle = 0.0, ps_complinv = 0.0, ps_max = -1.0, ps_selfcons = 0.0;
  double de_oracle = 0.0, de_yspread = 0.0, pn_grid = 0.0;
  bool optimizer_settled = true;

  for (const ProtocolParams& p : grid) {
    const primitives::LockUnitary lock = primitives::build_lock_unitary(p);
    const primitives::LockUnitary alt =
        primitives::build_lock_unitary(p, {2, 0, 1});
    unitarity = std::max(unitarity, qcore::unitarity_residual(lock.matrix));

    // honest actions: bit 0 fixed point, bit 1 lands on (...)(x)|Plus>
    const StateVector plus = primitives::make_bell(primitives::BellKind::Plus);
    const StateVector locked = primitives::make_locked_pair(p);
    const StateVector in0 =
        qcore::tensor(StateVector::basis(1, 0), plus);
    honest = std::max(honest,
                      ket_residual(qcore::apply(lock.matrix, in0), in0));
    const StateVector pw = primitives::make_password_ket(p, 1);
    const StateVector in1 = qcore::tensor(pw, locked);
    const StateVector want1 = qcore::tensor(
        StateVector({cplx{p.alpha * p.xi, 0.0}, cplx{p.d, 0.0}}), plus);
    honest = std::max(
        honest, ket_residual(qcore::apply(lock.matrix, in1), want1));

    for (std::size_t b = 0; b < 2; ++b)
      for (primitives::BellKind k :
           {primitives::BellKind::BPlus, primitives::BellKind::BMinus}) {
        StateVector v =
            qcore::tensor(StateVector::basis(1, b), primitives::make_bell(k));
        bell_sector = std::max(
            bell_sector, ket_residual(qcore::apply(lock.matrix, v), v));
      }

    // orthonormality of the full 3x3 block: pinned row + the two chosen rows
    qcore::CMatrix m3(3, 3);
    m3(0, 0) = cplx{p.beta * p.xi / p.d, 0.0};
    m3(0, 1) = cplx{0.0, -p.alpha * p.eta / p.d};
    m3(0, 2) = cplx{0.0, -p.beta * p.eta / p.d};
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        m3(r + 1, c) = lock.completion(r, c);
    completion = std::max(completion, qcore::unitarity_residual(m3));

    for (const ForgedInput& f : forgeries) {
      double direct = ps_direct(f, lock);
      ps_oracle =
          std::max(ps_oracle, std::abs(direct - ps_closed_form(f, p)));
      ps_complinv =
          std::max(ps_complinv, std::abs(direct - ps_direct(f, alt)));
    }

    PsMaxResult mx =
        ps_maximize(p, o.optimizer_budget, o.optimizer_starts, o.seed);
    optimizer_settled = optimizer_settled && mx.converged;
    ps_max = std::max(ps_max, mx.value);
    ps_selfcons =
        std::max(ps_selfcons, std::abs(mx.value - ps_direct(mx.best, lock)));

    for (int ir = 0; ir <= 4; ++ir) {
      double r = 0.25 * ir;
      double radius = std::sqrt(std::max(0.0, r * (1.0 - r)));
      for (int jf = -2; jf <= 2; ++jf) {
        double x = 0.5 * jf * radius;
        double ymax = std::sqrt(std::max(0.0, r * (1.0 - r) - x * x));
        double lo = 1e300, hi = -1e300;
        for (int gy : {-1, 0, 1}) {
          CardStealPassword w = CardStealPassword::make(r, x, gy * ymax);
          double direct = delta_e_direct(w, lock);
          de_oracle = std::max(de_oracle,
                               std::abs(direct - delta_e_closed_form(w, p)));
          lo = std::min(lo, direct);
          hi = std::max(hi, direct);
        }
        de_yspread = std::max(de_yspread, hi - lo);
      }
    }

    pn_grid = std::max(
        pn_grid, std::abs(pn_minimize_direct(p).value - pn_closed_form(p)));
  }

  out.push_back(row("lock-unitarity", 0.0, unitarity, unitarity, 1e-12));
  out.push_back(row("lock-honest-action", 0.0, honest, honest, 1e-12));
  out.push_back(
      row("lock-bell-sector", 0.0, bell_sector, bell_sector, 1e-12));
  out.push_back(
      row("lock-completion-orthonormal", 0.0, completion, completion, 1e-12));
  out.push_back(row("ps-oracle-equivalence", 0.0, ps_oracle, ps_oracle, 1e-10));
  out.push_back(row("ps-completion-invariance", 0.0, ps_complinv, ps_complinv,
                    1e-10));
  out.push_back(row("ps-schwartz-bound", 0.5, ps_max,
                    std::max(0.0, ps_max - 0.5), 1e-9));
  out.push_back(row("ps-optimizer-consistency", 0.0, ps_selfcons, ps_selfcons,
                    1e-10));
  out.push_back(row("ps-optimizer-settled", 1.0, optimizer_settled ? 1.0 : 0.0,
                    optimizer_settled ? 0.0 : 1.0, 0.5));
  out.push_back(
      row("delta-e-oracle-equivalence", 0.0, de_oracle, de_oracle, 1e-10));
  out.push_back(
      row("delta-e-y-invariance", 0.0, de_yspread, de_yspread, 1e-10));
  out.push_back(row("pn-grid-vs-closed", 0.0, pn_grid, pn_grid, 1e-6));

  const ProtocolParams headline =
      ProtocolParams::from_alpha_xi(o.headline_alpha, o.headline_xi);
  out.push_back(diff_row("pn-headline", pn_closed_form(headline),
                         pn_minimize_direct(headline).value, 1e-6));
  out.push_back(diff_row("delta-e-optimal-is-pn", pn_closed_form(headline),
                         delta_e_closed_form(
                             CardStealPassword::optimal(headline), headline),
                         1e-12));

  out.push_back(
      diff_row("pn-canonical", 0.2, pn_closed_form(defaults), 1e-15));
  out.push_back(diff_row(
      "ps-forged-00", 0.3,
      ps_closed_form(ForgedInput::computational(0), defaults), 1e-12));
  out.push_back(diff_row(
      "ps-forged-10", 0.2,
      ps_closed_form(ForgedInput::computational(2), defaults), 1e-12));
  out.push_back(diff_row(
      "delta-e-forged-zero", 0.3,
      delta_e_closed_form(CardStealPassword::make(1.0, 0.0, 0.0), defaults),
      1e-12));
  out.push_back(
      diff_row("total-detection-arith", 0.8926258176,
               total_detection(0.2, 10), 1e-12));
  return out;
}

bool all_pass(const std::vector<BoundCheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const BoundCheckReport& r) { return r.pass; });
}

nlohmann::json reports_to_json(const std::vector<BoundCheckReport>& reports) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BoundCheckReport& r : reports)
    rows.push_back({{"name", r.name},
                    {"closed_form", r.closed_form},
                    {"oracle", r.oracle},
                    {"discrepancy", r.discrepancy},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  return nlohmann::json{{"schema", "qpass-bounds/1"},
                        {"all_pass", all_pass(reports)},
                        {"checks", std::move(rows)}};
}

namespace {

void csv_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_reports_csv(std::ostream& os,
                       const std::vector<BoundCheckReport>& reports) {
  os << "name,closed_form,oracle,discrepancy,tolerance,pass\n";
  for (const BoundCheckReport& r : reports) {
    os << r.name << ',';
    csv_double(os, r.closed_form);
    os << ',';
    csv_double(os, r.oracle);
    os << ',';
    csv_double(os, r.discrepancy);
    os << ',';
    csv_double(os, r.tolerance);
    os << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  }
}

nlohmann::json detection_stats_to_json(const DetectionStats& s) {
  return nlohmann::json{
      {"trials", s.trials},   {"detections", s.detections},
      {"estimate", s.estimate}, {"std_error", s.std_error},
      {"ci_lo", s.ci_lo},     {"ci_hi", s.ci_hi},
      {"wilson", s.wilson}};
}

void write_stats_csv(std::ostream& os, const std::vector<StatsRow>& rows) {
  os << "scenario,trials,detections,estimate,std_error,ci_lo,ci_hi,wilson,"
        "target\n";
  for (const StatsRow& r : rows) {
    os << r.scenario << ',' << r.stats.trials << ',' << r.stats.detections
       << ',';
    csv_double(os, r.stats.estimate);
    os << ',';
    csv_double(os, r.stats.std_error);
    os << ',';
    csv_double(os, r.stats.ci_lo);
    os << ',';
    csv_double(os, r.stats.ci_hi);
    os << ',' << (r.stats.wilson ? 1 : 0) << ',';
    if (r.has_target)
      csv_double(os, r.target);
    os << '\n';
  }
}

nlohmann::json lock_to_json(const primitives::LockUnitary& lock) {
  auto matrix_json = [](const qcore::CMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      nlohmann::json cols = nlohmann::json::array();
      for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(cols));
    }
    return rows;
  };
  return nlohmann::json{{"schema", "qpass-lock/1"},
                        {"alpha", lock.params.alpha},
                        {"delta", lock.params.delta},
                        {"xi", lock.params.xi},
                        {"eta", lock.params.eta},
                        {"d", lock.params.d},
                        {"matrix", matrix_json(lock.matrix)},
                        {"completion", matrix_json(lock.completion)}};
}

}  // namespace qpass::analysis
