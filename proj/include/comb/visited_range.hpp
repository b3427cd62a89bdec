#pragma once

#include <cstdint>
#include <deque>

#include "comb/comb_model.hpp"

namespace comb {

/// Visited sites on one tooth: {y : neg_min <= y <= -1} u {y : 1 <= y <= pos_max}.
struct ToothSpan {
  std::int64_t neg_min = 0;
  std::int64_t pos_max = 0;

  std::int64_t size() const noexcept { return pos_max - neg_min; }
  bool contains(std::int64_t y) const noexcept { return y != 0 && neg_min <= y && y <= pos_max; }

  friend constexpr bool operator==(const ToothSpan&, const ToothSpan&) = default;
};

/// Compressed visited set of a comb walk started at the origin. Every 1D
/// sub-walk is connected, so the backbone part is an interval and each tooth
/// is a signed span around its backbone site.
///
/// Invariants: backbone_min() <= 0 <= backbone_max(); every tooth with a
/// nonzero span sits inside the backbone interval.
class VisitedRange {
 public:
  VisitedRange() : teeth_(1) {}

  std::int64_t backbone_min() const noexcept { return min_; }
  std::int64_t backbone_max() const noexcept { return max_; }
  std::int64_t backbone_count() const noexcept { return max_ - min_ + 1; }

  /// Record a backbone visit at x, which must be inside or adjacent to the interval.
  void extend_backbone(std::int64_t x) {
    if (x > max_) {
      max_ = x;
      teeth_.emplace_back();
    } else if (x < min_) {
      min_ = x;
      teeth_.emplace_front();
    }
  }

  /// Mutable span of the tooth rooted at backbone site x. Requires x inside the
  /// backbone interval; the reference is invalidated by the next extend_backbone.
  ToothSpan& tooth(std::int64_t x) { return teeth_[static_cast<std::size_t>(x - min_)]; }

  ToothSpan tooth_span(std::int64_t x) const {
    if (x < min_ || x > max_) return {};
    return teeth_[static_cast<std::size_t>(x - min_)];
  }

  /// Record a visit to s, which must be adjacent to an already visited site.
  void visit(Site s) {
    if (s.y == 0) {
      extend_backbone(s.x);
      return;
    }
    ToothSpan& t = tooth(s.x);
    if (s.y > t.pos_max) t.pos_max = s.y;
    if (s.y < t.neg_min) t.neg_min = s.y;
  }

  bool contains(Site s) const {
    if (s.y == 0) return min_ <= s.x && s.x <= max_;
    return tooth_span(s.x).contains(s.y);
  }

  /// Number of distinct visited sites.
  std::int64_t count() const {
    std::int64_t total = backbone_count();
    for (const auto& t : teeth_) total += t.size();
    return total;
  }

  /// Calls f(x, span) for every tooth that has been entered, in increasing x.
  template <typename F>
  void for_each_tooth(F&& f) const {
    std::int64_t x = min_;
    for (const auto& t : teeth_) {
      if (t.size() != 0) f(x, t);
      ++x;
    }
  }

 private:
  std::int64_t min_ = 0;
  std::int64_t max_ = 0;
  std::deque<ToothSpan> teeth_;  // index x - min_
};

inline std::int64_t visited_count(const VisitedRange& v) { return v.count(); }

}  // namespace comb
