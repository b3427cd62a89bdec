#pragma once

// Scaling verdicts from sweeps of estimated ranges. Natural logarithms throughout.

#include <cstdint>
#include <span>
#include <vector>

#include "comb/estimator.hpp"

namespace comb::analysis {

/// 1/(2 sqrt(2 pi)), the constant in front of sqrt(n) log n.
inline constexpr double kRangeConstant = 0.19947114020071635;
/// Local slopes at or above this reject the n^{3/4} law.
inline constexpr double kSlopeRejectThreshold = 0.70;
/// Local slopes must stay above the pure square-root exponent.
inline constexpr double kSlopeFloor = 0.50;
/// Allowed max/min spread of mean/(sqrt(n) log n) over the top two decades.
inline constexpr double kRatioSpreadLimit = 1.5;

struct SweepPoint {
  std::uint64_t n = 0;
  Estimate estimate;
};

struct SlopePoint {
  double n_mid = 0.0;  // geometric mean of the two n
  double slope = 0.0;
};

struct RatioPoint {
  std::uint64_t n = 0;
  double ratio = 0.0;
  double uncertainty = 0.0;  // stderr scaled by the same normalisation
};

struct ScalingFit {
  std::vector<SweepPoint> points;
  std::vector<SlopePoint> slopes;
  std::vector<RatioPoint> ratios;   // mean / (sqrt(n) log n)
  std::vector<RatioPoint> ratio75;  // mean / n^{3/4}
};

/// Two-point slopes of log mean against log n. Throws std::invalid_argument
/// for fewer than two points or n not strictly increasing.
std::vector<SlopePoint> local_slopes(std::span<const SweepPoint> points);

/// mean / (sqrt(n) log n) with propagated uncertainty. Requires n >= 2.
std::vector<RatioPoint> constant_ratio(std::span<const SweepPoint> points);

/// mean / n^exponent with propagated uncertainty.
std::vector<RatioPoint> power_ratio(std::span<const SweepPoint> points, double exponent);

ScalingFit fit_scaling(std::vector<SweepPoint> points);

struct HypothesisReport {
  double min_slope = 0.0;
  double max_slope = 0.0;
  bool slopes_above_floor = false;     // every slope > 0.50
  bool slopes_below_threshold = false;  // every slope < 0.70
  bool ratio75_decreasing = false;     // mean / n^{3/4} strictly decreasing
  double ratio_spread = 0.0;           // max/min of mean/(sqrt(n) log n), top two decades
  bool ratios_stable = false;          // ratio_spread < 1.5
  bool supported = false;              // all four checks hold
};

/// Verdict on sqrt(n) log n against n^{3/4}. Requires at least three points
/// spanning at least two decades.
HypothesisReport hypothesis_report(const ScalingFit& fit);

struct Lemma1Row {
  std::uint64_t n = 0;
  Estimate horizontal;        // a
  double horizontal_target = 0.0;  // E[A_{n-1}]
  double z_score = 0.0;
  Estimate backbone;          // c
  double backbone_scaled = 0.0;         // mean c / n^{1/4}
  double backbone_scaled_error = 0.0;
};

struct Lemma1Report {
  std::vector<Lemma1Row> rows;
  double backbone_band = 0.0;  // max/min of backbone_scaled
};

/// Horizontal-move and backbone-site statistics of the walk stopped at the
/// n-th vertical move, for each n (>= 2). cfg.rule is overridden per n.
Lemma1Report lemma1_report(std::span<const std::uint64_t> n_list, ExperimentConfig cfg);

struct ReachRow {
  std::int64_t j = 0;
  Estimate reach;          // u_j
  double scaled = 0.0;     // u_j (|j| + 1)
  double envelope = 0.0;   // u_j (|j| + 1) / (n^{1/4} log n)
};

/// u_j for each j in the walk stopped at the n-th vertical move.
std::vector<ReachRow> reach_sweep(std::uint64_t n, std::span<const std::int64_t> js, const ExperimentConfig& cfg);

}  // namespace comb::analysis
