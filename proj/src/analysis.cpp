#include "comb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "comb/walk1d.hpp"

namespace comb::analysis {

std::vector<SlopePoint> local_slopes(std::span<const SweepPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("local_slopes: need at least two points");
  std::vector<SlopePoint> out;
  out.reserve(points.size() - 1);
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const auto& a = points[k];
    const auto& b = points[k + 1];
    if (b.n <= a.n) throw std::invalid_argument("local_slopes: n must be strictly increasing");
    const double ln_a = std::log(static_cast<double>(a.n));
    const double ln_b = std::log(static_cast<double>(b.n));
    out.push_back({std::exp(0.5 * (ln_a + ln_b)),
                   (std::log(b.estimate.mean) - std::log(a.estimate.mean)) / (ln_b - ln_a)});
  }
  return out;
}

std::vector<RatioPoint> constant_ratio(std::span<const SweepPoint> points) {
  std::vector<RatioPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.n < 2) throw std::invalid_argument("constant_ratio: n must be >= 2");
    const double nd = static_cast<double>(p.n);
    const double scale = std::sqrt(nd) * std::log(nd);
    out.push_back({p.n, p.estimate.mean / scale, p.estimate.std_error / scale});
  }
  return out;
}

std::vector<RatioPoint> power_ratio(std::span<const SweepPoint> points, double exponent) {
  std::vector<RatioPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const double scale = std::pow(static_cast<double>(p.n), exponent);
    out.push_back({p.n, p.estimate.mean / scale, p.estimate.std_error / scale});
  }
  return out;
}

ScalingFit fit_scaling(std::vector<SweepPoint> points) {
  ScalingFit fit;
  fit.slopes = local_slopes(points);
  fit.ratios = constant_ratio(points);
  fit.ratio75 = power_ratio(points, 0.75);
  fit.points = std::move(points);
  return fit;
}

HypothesisReport hypothesis_report(const ScalingFit& fit) {
  const auto& pts = fit.points;
  if (pts.size() < 3) throw std::invalid_argument("hypothesis_report: need at least three sweep points");
  const double n_lo = static_cast<double>(pts.front().n);
  const double n_hi = static_cast<double>(pts.back().n);
  if (n_hi < 100.0 * n_lo * (1.0 - 1e-12)) {
    throw std::invalid_argument("hypothesis_report: sweep must span at least two decades");
  }

  HypothesisReport r;
  r.min_slope = std::numeric_limits<double>::infinity();
  r.max_slope = -std::numeric_limits<double>::infinity();
  for (const auto& s : fit.slopes) {
    r.min_slope = std::min(r.min_slope, s.slope);
    r.max_slope = std::max(r.max_slope, s.slope);
  }
  r.slopes_above_floor = r.min_slope > kSlopeFloor;
  r.slopes_below_threshold = r.max_slope < kSlopeRejectThreshold;

  r.ratio75_decreasing = true;
  for (std::size_t k = 0; k + 1 < fit.ratio75.size(); ++k) {
    if (!(fit.ratio75[k + 1].ratio < fit.ratio75[k].ratio)) r.ratio75_decreasing = false;
  }

  // Top two decades: n >= n_max / 100.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& q : fit.ratios) {
    if (static_cast<double>(q.n) * 100.0 * (1.0 + 1e-12) < n_hi) continue;
    lo = std::min(lo, q.ratio);
    hi = std::max(hi, q.ratio);
  }
  r.ratio_spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  r.ratios_stable = r.ratio_spread < kRatioSpreadLimit;

  r.supported = r.slopes_above_floor && r.slopes_below_threshold && r.ratio75_decreasing && r.ratios_stable;
  return r;
}

Lemma1Report lemma1_report(std::span<const std::uint64_t> n_list, ExperimentConfig cfg) {
  Lemma1Report report;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const std::uint64_t n : n_list) {
    if (n < 2) throw std::invalid_argument("lemma1_report: n must be >= 2");
    cfg.rule = StopRule::after_vertical_moves(n);
    const ExperimentResult res = run_experiment_all(cfg);

    Lemma1Row row;
    row.n = n;
    row.horizontal = res[Statistic::HorizontalMoves];
    row.horizontal_target = walk1d::expected_visits_origin(static_cast<std::int64_t>(n) - 1);
    const double diff = row.horizontal.mean - row.horizontal_target;
    row.z_score = row.horizontal.std_error > 0.0 ? diff / row.horizontal.std_error
                  : diff == 0.0                  ? 0.0
                                                 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    row.backbone = res[Statistic::BackboneSites];
    const double quarter = std::pow(static_cast<double>(n), 0.25);
    row.backbone_scaled = row.backbone.mean / quarter;
    row.backbone_scaled_error = row.backbone.std_error / quarter;
    lo = std::min(lo, row.backbone_scaled);
    hi = std::max(hi, row.backbone_scaled);
    report.rows.push_back(row);
  }
  report.backbone_band = report.rows.empty() ? 0.0 : hi / lo;
  return report;
}

std::vector<ReachRow> reach_sweep(std::uint64_t n, std::span<const std::int64_t> js, const ExperimentConfig& cfg) {
  std::vector<ReachRow> out;
  const double nd = static_cast<double>(n);
  const double envelope_scale = n >= 2 ? std::pow(nd, 0.25) * std::log(nd) : 1.0;
  for (const std::int64_t j : js) {
    ReachRow row;
    row.j = j;
    row.reach = estimate_u_j(n, j, cfg);
    row.scaled = row.reach.mean * static_cast<double>(std::abs(j) + 1);
    row.envelope = row.scaled / envelope_scale;
    out.push_back(row);
  }
  return out;
}

}  // namespace comb::analysis
