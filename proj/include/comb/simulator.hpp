#pragma once

// Instrumented random walks on the comb.
//
// Two stopping rules: AfterSteps(n) is the plain n-step walk; AfterVerticalMoves(n)
// runs up to and including the n-th vertical move, so its length is n plus the
// number of horizontal moves taken on the way.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "comb/comb_model.hpp"
#include "comb/rng.hpp"
#include "comb/visited_range.hpp"

namespace comb {

enum class StopKind : std::uint8_t { AfterSteps, AfterVerticalMoves };

struct StopRule {
  StopKind kind = StopKind::AfterSteps;
  std::uint64_t limit = 1;

  static StopRule after_steps(std::uint64_t n) { return {StopKind::AfterSteps, n}; }
  static StopRule after_vertical_moves(std::uint64_t n) { return {StopKind::AfterVerticalMoves, n}; }

  friend constexpr bool operator==(const StopRule&, const StopRule&) = default;
};

enum class SiteClass : std::uint8_t { Close, Intermediate, Far };

/// Close if |j| < n^{1/4}, Far if |j| > 2 sqrt(n log n), Intermediate otherwise.
/// Requires n >= 2.
SiteClass classify_site(std::uint64_t n, std::int64_t j);

/// Distinct reached sites by class (backbone sites are Close). All zero when
/// the rule's limit is 1, where classification is undefined.
struct SiteClassCounts {
  std::int64_t close = 0;
  std::int64_t intermediate = 0;
  std::int64_t far = 0;

  friend constexpr bool operator==(const SiteClassCounts&, const SiteClassCounts&) = default;
};

struct WalkStats {
  std::uint64_t steps_total = 0;
  std::uint64_t vertical_moves = 0;
  std::uint64_t horizontal_moves = 0;  // a
  std::int64_t visited_sites = 1;      // V_n, or V'_n under AfterVerticalMoves
  std::int64_t backbone_sites = 1;     // c
  // d: moves from a tooth onto the backbone, counting the start at the origin
  // and not counting a final move that lands on the backbone.
  std::uint64_t backbone_entries = 1;
  Site final_site{};
  std::int64_t final_y = 0;  // Y'_n
  SiteClassCounts classes{};
  // Intermediate sites reached on the tooth holding the endpoint; 0 when the
  // endpoint is on the backbone (no final tooth).
  std::int64_t final_tooth_intermediate = 0;

  friend bool operator==(const WalkStats&, const WalkStats&) = default;
};

struct WalkResult {
  WalkStats stats;
  VisitedRange visited;
};

/// Simulates one walk from the origin, reading choices from `bits`.
WalkResult run_walk_tracked(StopRule rule, BitStream& bits);

WalkStats run_walk(StopRule rule, BitStream& bits);

/// run_walk plus whether `target` was visited at any time.
std::pair<WalkStats, bool> run_walk_with_target(StopRule rule, Site target, BitStream& bits);

/// Class counts and final-tooth diagnostic computed from a finished tracker.
void fill_site_classes(WalkStats& stats, const VisitedRange& visited, std::uint64_t n);

/// Opt-in recording of a trajectory: every step, plus the reduced projections
/// X' (values after each horizontal move) and Y' (after each vertical move).
struct Trajectory {
  struct Step {
    std::uint64_t index;  // 1-based
    StepKind kind;
    Site site;  // position after the step
  };
  std::vector<Step> steps;
  std::vector<std::int64_t> reduced_x{0};
  std::vector<std::int64_t> reduced_y{0};
};

/// Tab-separated audit dump, one line per step: step_index axis direction x y.
void write_audit(const Trajectory& trajectory, std::ostream& out);

namespace reference {

/// Step-by-step walk through comb::step with an explicit set of sites. Reads
/// the same bits in the same order as run_walk, so both produce identical
/// statistics from identical streams.
WalkStats run_walk(StopRule rule, BitStream& bits, Trajectory* record = nullptr);

}  // namespace reference

}  // namespace comb
