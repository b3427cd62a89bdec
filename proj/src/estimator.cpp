#include "comb/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "comb/errors.hpp"
#include "comb/walk1d.hpp"

namespace comb {

void RunningStats::add(double value) noexcept {
  if (count_ == 0) {
    min_ = max_ = value;
  } else {
    min_ = std::min(min_, value);
    max_ = std::max(max_, value);
  }
  ++count_;
  const double delta = value - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (value - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * (nb / n);
  m2_ += other.m2_ + delta * delta * (na * nb / n);
  count_ += other.count_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

Estimate RunningStats::estimate() const noexcept {
  Estimate e;
  e.replicates = count_;
  if (count_ == 0) return e;
  e.min = min_;
  e.max = max_;
  e.mean = std::clamp(mean_, min_, max_);
  e.std_error = std::sqrt(variance() / static_cast<double>(count_));
  return e;
}

Estimate with_binomial_error(Estimate e) {
  if (e.replicates > 0) {
    const double p = e.mean;
    e.std_error = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(e.replicates));
  }
  return e;
}

namespace {

constexpr std::array<std::string_view, kStatisticCount> kNames = {
    "visited_sites",     "steps_total", "vertical_moves",          "horizontal_moves",
    "backbone_sites",    "backbone_entries", "close_sites",         "intermediate_sites",
    "far_sites",         "final_tooth_intermediate", "target_reached",
};

using StatRow = std::array<double, kStatisticCount>;

StatRow to_row(const WalkStats& s, bool reached) {
  return {
      static_cast<double>(s.visited_sites),     static_cast<double>(s.steps_total),
      static_cast<double>(s.vertical_moves),    static_cast<double>(s.horizontal_moves),
      static_cast<double>(s.backbone_sites),    static_cast<double>(s.backbone_entries),
      static_cast<double>(s.classes.close),     static_cast<double>(s.classes.intermediate),
      static_cast<double>(s.classes.far),       static_cast<double>(s.final_tooth_intermediate),
      reached ? 1.0 : 0.0,
  };
}

int worker_count(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

// Runs `replicates` independent replicates in fixed blocks; `fold(acc, bits)`
// adds one replicate into a block accumulator. Blocks are merged in order.
template <typename Acc, typename Fold>
Acc run_blocks(std::uint64_t replicates, std::uint64_t master_seed, int threads, Fold fold) {
  const std::uint64_t blocks = (replicates + kReplicateBlock - 1) / kReplicateBlock;
  std::vector<Acc> partial(blocks);
  std::atomic<std::uint64_t> failed_at{std::numeric_limits<std::uint64_t>::max()};

#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count(threads))
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t first = static_cast<std::uint64_t>(b) * kReplicateBlock;
    const std::uint64_t last = std::min(replicates, first + kReplicateBlock);
    for (std::uint64_t i = first; i < last; ++i) {
      if (failed_at.load(std::memory_order_relaxed) != std::numeric_limits<std::uint64_t>::max()) break;
      try {
        BitStream bits(replicate_seed(master_seed, i));
        fold(partial[static_cast<std::size_t>(b)], bits);
      } catch (const std::bad_alloc&) {
        std::uint64_t expected = failed_at.load();
        while (i < expected && !failed_at.compare_exchange_weak(expected, i)) {
        }
      }
    }
  }
  const std::uint64_t failed = failed_at.load();
  if (failed != std::numeric_limits<std::uint64_t>::max()) {
    throw CapacityError("out of memory at replicate " + std::to_string(failed), failed);
  }

  Acc total{};
  for (const Acc& p : partial) total.merge(p);
  return total;
}

struct RowStats {
  std::array<RunningStats, kStatisticCount> stats{};

  void merge(const RowStats& other) {
    for (std::size_t k = 0; k < kStatisticCount; ++k) stats[k].merge(other.stats[k]);
  }
};

void validate(const ExperimentConfig& cfg) {
  if (cfg.replicates < 1) throw std::invalid_argument("experiment: replicates must be >= 1");
  if (cfg.rule.limit < 1) throw std::invalid_argument("experiment: rule limit must be >= 1");
}

}  // namespace

std::string_view statistic_name(Statistic s) { return kNames[static_cast<std::size_t>(s)]; }

std::optional<Statistic> statistic_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kStatisticCount; ++k) {
    if (kNames[k] == name) return static_cast<Statistic>(k);
  }
  return std::nullopt;
}

ExperimentResult run_experiment_all(const ExperimentConfig& cfg) {
  validate(cfg);
  const RowStats total = run_blocks<RowStats>(cfg.replicates, cfg.master_seed, cfg.threads,
                                              [&](RowStats& acc, BitStream& bits) {
                                                const auto [stats, reached] =
                                                    run_walk_with_target(cfg.rule, cfg.target, bits);
                                                const StatRow row = to_row(stats, reached);
                                                for (std::size_t k = 0; k < kStatisticCount; ++k) {
                                                  acc.stats[k].add(row[k]);
                                                }
                                              });
  ExperimentResult out;
  for (std::size_t k = 0; k < kStatisticCount; ++k) out.estimates[k] = total.stats[k].estimate();
  out.estimates[static_cast<std::size_t>(Statistic::TargetReached)] =
      with_binomial_error(out.estimates[static_cast<std::size_t>(Statistic::TargetReached)]);
  return out;
}

Estimate run_experiment(const ExperimentConfig& cfg, Statistic statistic) {
  return run_experiment_all(cfg)[statistic];
}

Estimate estimate_u_j(std::uint64_t n, std::int64_t j, ExperimentConfig cfg) {
  if (n < 1) throw std::invalid_argument("estimate_u_j: n must be >= 1");
  cfg.rule = StopRule::after_vertical_moves(n);
  cfg.target = Site{0, j};
  return run_experiment(cfg, Statistic::TargetReached);
}

Estimate estimate_ruin(std::int64_t j, std::uint64_t trials, std::uint64_t master_seed, int threads) {
  if (j < 1) throw std::invalid_argument("estimate_ruin: j must be >= 1");
  if (trials < 1) throw std::invalid_argument("estimate_ruin: trials must be >= 1");
  const RunningStats total = run_blocks<RunningStats>(
      trials, master_seed, threads,
      [j](RunningStats& acc, BitStream& bits) { acc.add(walk1d::simulate_ruin_trial(j, bits) ? 1.0 : 0.0); });
  return with_binomial_error(total.estimate());
}

Estimate estimate_range_1d(std::int64_t n, std::uint64_t replicates, std::uint64_t master_seed, int threads) {
  if (n < 0) throw std::invalid_argument("estimate_range_1d: n must be nonnegative");
  if (replicates < 1) throw std::invalid_argument("estimate_range_1d: replicates must be >= 1");
  const RunningStats total = run_blocks<RunningStats>(
      replicates, master_seed, threads,
      [n](RunningStats& acc, BitStream& bits) { acc.add(static_cast<double>(walk1d::simulate_range(n, bits))); });
  return total.estimate();
}

namespace reference {

Estimate run_experiment(const ExperimentConfig& cfg, Statistic statistic) {
  validate(cfg);
  RunningStats acc;
  for (std::uint64_t i = 0; i < cfg.replicates; ++i) {
    BitStream bits(replicate_seed(cfg.master_seed, i));
    Trajectory trajectory;
    const WalkStats stats = comb::reference::run_walk(cfg.rule, bits, &trajectory);
    bool reached = cfg.target == Site{};
    for (const auto& s : trajectory.steps) reached = reached || s.site == cfg.target;
    acc.add(to_row(stats, reached)[static_cast<std::size_t>(statistic)]);
  }
  Estimate e = acc.estimate();
  return statistic == Statistic::TargetReached ? with_binomial_error(e) : e;
}

}  // namespace reference

}  // namespace comb
