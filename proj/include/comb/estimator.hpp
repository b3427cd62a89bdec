#pragma once

// Deterministic parallel Monte Carlo over independent walks.
//
// Replicate i always draws its bits from BitStream(replicate_seed(master, i)),
// replicates are grouped into fixed-size blocks, and block summaries are
// merged in block order. The result is therefore bit-identical for any
// number of worker threads.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "comb/comb_model.hpp"
#include "comb/simulator.hpp"

namespace comb {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(replicates)
  std::uint64_t replicates = 0;
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// Single-pass mean / M2 accumulator with an associative merge (Chan et al.).
class RunningStats {
 public:
  void add(double value) noexcept;
  void merge(const RunningStats& other) noexcept;

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double m2() const noexcept { return m2_; }
  double variance() const noexcept { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }

  Estimate estimate() const noexcept;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// mix64(master ^ index * golden-ratio constant). The spread is injective in
/// index and mix64 is a bijection, so distinct indices never collide.
constexpr std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return mix64(master_seed ^ (index * 0x9E3779B97F4A7C15ULL));
}

enum class Statistic : std::uint8_t {
  VisitedSites,
  StepsTotal,
  VerticalMoves,
  HorizontalMoves,
  BackboneSites,
  BackboneEntries,
  CloseSites,
  IntermediateSites,
  FarSites,
  FinalToothIntermediate,
  TargetReached,
};

inline constexpr std::size_t kStatisticCount = 11;

std::string_view statistic_name(Statistic s);
std::optional<Statistic> statistic_from_name(std::string_view name);

struct ExperimentConfig {
  std::uint64_t master_seed = 0;
  std::uint64_t replicates = 1;
  StopRule rule{};
  // Site whose visit feeds Statistic::TargetReached; the origin when unset.
  Site target{};
  // 0 means all available workers. Results do not depend on this value.
  int threads = 0;
};

/// Summaries of every statistic from one pass over the replicates.
struct ExperimentResult {
  std::array<Estimate, kStatisticCount> estimates{};

  const Estimate& operator[](Statistic s) const { return estimates[static_cast<std::size_t>(s)]; }
};

/// Number of replicates folded serially before block summaries are merged.
inline constexpr std::uint64_t kReplicateBlock = 64;

ExperimentResult run_experiment_all(const ExperimentConfig& cfg);
Estimate run_experiment(const ExperimentConfig& cfg, Statistic statistic);

/// Fraction of AfterVerticalMoves(n) walks that visit (0, j), with binomial stderr.
Estimate estimate_u_j(std::uint64_t n, std::int64_t j, ExperimentConfig cfg);

/// Frequency of the gambler's-ruin event for `trials` independent trials,
/// with binomial stderr.
Estimate estimate_ruin(std::int64_t j, std::uint64_t trials, std::uint64_t master_seed, int threads = 0);

/// Monte Carlo E[B_n] for the 1D walk.
Estimate estimate_range_1d(std::int64_t n, std::uint64_t replicates, std::uint64_t master_seed, int threads = 0);

/// Binomial standard error sqrt(p(1-p)/count) replacing the sample one.
Estimate with_binomial_error(Estimate e);

namespace reference {

/// Serial single-pass loop over reference::run_walk. Same seeds and bits as
/// run_experiment; sums in a different order, so means agree to rounding.
Estimate run_experiment(const ExperimentConfig& cfg, Statistic statistic);

}  // namespace reference

}  // namespace comb
