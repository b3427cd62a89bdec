#include "comb/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

#include "comb/step_tables.hpp"

namespace comb {

SiteClass classify_site(std::uint64_t n, std::int64_t j) {
  if (n < 2) throw std::invalid_argument("classify_site: n must be >= 2");
  const double nd = static_cast<double>(n);
  const double aj = std::abs(static_cast<double>(j));
  if (aj < std::pow(nd, 0.25)) return SiteClass::Close;
  if (aj > 2.0 * std::sqrt(nd) * std::sqrt(std::log(nd))) return SiteClass::Far;
  return SiteClass::Intermediate;
}

namespace {

// Integer thresholds consistent with classify_site at the boundaries:
// |j| <= close_max is Close, |j| >= far_min is Far.
struct ClassBounds {
  std::int64_t close_max;
  std::int64_t far_min;
};

ClassBounds class_bounds(std::uint64_t n) {
  const double nd = static_cast<double>(n);
  std::int64_t c = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(std::pow(nd, 0.25))) - 1);
  while (classify_site(n, c + 1) == SiteClass::Close) ++c;
  while (c > 0 && classify_site(n, c) != SiteClass::Close) --c;

  std::int64_t f = static_cast<std::int64_t>(std::floor(2.0 * std::sqrt(nd) * std::sqrt(std::log(nd)))) + 1;
  while (f > 1 && classify_site(n, f - 1) == SiteClass::Far) --f;
  while (classify_site(n, f) != SiteClass::Far) ++f;
  return {c, f};
}

// Tooth sites 1..extent on one side, split by class.
void add_side(SiteClassCounts& counts, std::int64_t extent, const ClassBounds& b) {
  const std::int64_t close = std::min(extent, b.close_max);
  const std::int64_t far = std::max<std::int64_t>(0, extent - b.far_min + 1);
  counts.close += close;
  counts.far += far;
  counts.intermediate += extent - close - far;
}

}  // namespace

void fill_site_classes(WalkStats& stats, const VisitedRange& visited, std::uint64_t n) {
  stats.classes = {};
  stats.final_tooth_intermediate = 0;
  if (n < 2) return;
  const ClassBounds bounds = class_bounds(n);
  stats.classes.close = visited.backbone_count();
  visited.for_each_tooth([&](std::int64_t, const ToothSpan& t) {
    add_side(stats.classes, t.pos_max, bounds);
    add_side(stats.classes, -t.neg_min, bounds);
  });
  if (stats.final_y != 0) {
    const ToothSpan t = visited.tooth_span(stats.final_site.x);
    SiteClassCounts final_tooth;
    add_side(final_tooth, t.pos_max, bounds);
    add_side(final_tooth, -t.neg_min, bounds);
    stats.final_tooth_intermediate = final_tooth.intermediate;
  }
}

WalkResult run_walk_tracked(StopRule rule, BitStream& bits) {
  if (rule.limit < 1) throw std::invalid_argument("run_walk: limit must be >= 1");
  const auto& table = detail::kByteSteps;
  const bool by_steps = rule.kind == StopKind::AfterSteps;

  WalkResult result;
  VisitedRange& visited = result.visited;
  std::int64_t x = 0, y = 0;
  std::uint64_t horizontal = 0, vertical = 0, entries = 1;
  bool last_was_entry = false;
  // Remaining steps (AfterSteps) or remaining vertical moves (AfterVerticalMoves).
  std::uint64_t budget = rule.limit;

  while (budget > 0) {
    // On the backbone.
    last_was_entry = false;
    const int choice = bits.two_bits();
    if (choice < 2) {
      x += choice == 0 ? 1 : -1;
      visited.extend_backbone(x);
      ++horizontal;
      if (by_steps) --budget;
      continue;
    }

    // Vertical move into the tooth at x; stay on it until back at y = 0 or out of budget.
    y = choice == 2 ? 1 : -1;
    ++vertical;
    --budget;
    ToothSpan& span = visited.tooth(x);
    std::int64_t lo = std::min(span.neg_min, y);
    std::int64_t hi = std::max(span.pos_max, y);
    std::uint64_t moves = 0;
    while (y != 0 && budget > 0) {
      if (bits.buffered() == 0) bits.refill();
      if (budget >= 8 && bits.buffered() >= 8) {
        const auto& s = table[bits.peek8()];
        // Take eight steps at once when none of them can reach the backbone.
        if (y > 0 ? y + s.min_prefix > 0 : y + s.max_prefix < 0) {
          bits.skip8();
          lo = std::min(lo, y + s.min_prefix);
          hi = std::max(hi, y + s.max_prefix);
          y += s.net;
          budget -= 8;
          moves += 8;
          continue;
        }
      }
      y += bits.bit() ? -1 : 1;
      lo = std::min(lo, y);
      hi = std::max(hi, y);
      --budget;
      ++moves;
    }
    span.neg_min = lo;
    span.pos_max = hi;
    vertical += moves;
    if (y == 0) {
      ++entries;
      last_was_entry = true;
    }
  }
  if (last_was_entry) --entries;

  WalkStats& st = result.stats;
  st.horizontal_moves = horizontal;
  st.vertical_moves = vertical;
  st.steps_total = horizontal + vertical;
  st.visited_sites = visited.count();
  st.backbone_sites = visited.backbone_count();
  st.backbone_entries = entries;
  st.final_site = {x, y};
  st.final_y = y;
  fill_site_classes(st, visited, rule.limit);
  return result;
}

WalkStats run_walk(StopRule rule, BitStream& bits) { return run_walk_tracked(rule, bits).stats; }

std::pair<WalkStats, bool> run_walk_with_target(StopRule rule, Site target, BitStream& bits) {
  WalkResult r = run_walk_tracked(rule, bits);
  const bool reached = r.visited.contains(target);
  return {r.stats, reached};
}

void write_audit(const Trajectory& trajectory, std::ostream& out) {
  for (const auto& s : trajectory.steps) {
    out << s.index << '\t' << (s.kind.axis == Axis::Horizontal ? 'H' : 'V') << '\t'
        << (s.kind.direction > 0 ? "+1" : "-1") << '\t' << s.site.x << '\t' << s.site.y << '\n';
  }
}

namespace reference {

WalkStats run_walk(StopRule rule, BitStream& bits, Trajectory* record) {
  if (rule.limit < 1) throw std::invalid_argument("run_walk: limit must be >= 1");
  std::set<Site> seen{Site{}};
  Site at{};
  WalkStats st;
  bool last_was_entry = false;

  const auto done = [&] {
    return rule.kind == StopKind::AfterSteps ? st.steps_total >= rule.limit : st.vertical_moves >= rule.limit;
  };
  while (!done()) {
    const int choice = at.on_backbone() ? bits.two_bits() : bits.bit();
    const StepResult next = comb::step(at, choice);
    if (next.kind.axis == Axis::Horizontal) {
      if (!at.on_backbone()) throw std::logic_error("horizontal move off the backbone");
      ++st.horizontal_moves;
    } else {
      ++st.vertical_moves;
    }
    ++st.steps_total;
    last_was_entry = !at.on_backbone() && next.site.on_backbone();
    if (last_was_entry) ++st.backbone_entries;
    at = next.site;
    seen.insert(at);
    if (record != nullptr) {
      record->steps.push_back({st.steps_total, next.kind, at});
      if (next.kind.axis == Axis::Horizontal) {
        record->reduced_x.push_back(at.x);
      } else {
        record->reduced_y.push_back(at.y);
      }
    }
  }
  if (last_was_entry) --st.backbone_entries;

  st.visited_sites = static_cast<std::int64_t>(seen.size());
  st.backbone_sites = 0;
  st.final_site = at;
  st.final_y = at.y;
  for (const Site& s : seen) {
    if (s.on_backbone()) ++st.backbone_sites;
  }
  if (rule.limit >= 2) {
    for (const Site& s : seen) {
      switch (classify_site(rule.limit, s.y)) {
        case SiteClass::Close: ++st.classes.close; break;
        case SiteClass::Intermediate:
          ++st.classes.intermediate;
          if (at.y != 0 && s.x == at.x && s.y != 0) ++st.final_tooth_intermediate;
          break;
        case SiteClass::Far: ++st.classes.far; break;
      }
    }
  }
  return st;
}

}  // namespace reference

}  // namespace comb
