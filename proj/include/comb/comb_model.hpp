#pragma once

// The 2-dimensional comb: Z x Z with every horizontal edge off the x-axis
// removed. The graph is implicit; nothing here allocates.

#include <array>
#include <cassert>
#include <cstdint>
#include <compare>
#include <span>

namespace comb {

struct Site {
  std::int64_t x = 0;  // backbone coordinate
  std::int64_t y = 0;  // tooth coordinate

  bool on_backbone() const noexcept { return y == 0; }

  friend constexpr auto operator<=>(const Site&, const Site&) = default;
};

enum class Axis : std::uint8_t { Horizontal, Vertical };

struct StepKind {
  Axis axis = Axis::Vertical;
  std::int8_t direction = +1;

  friend constexpr bool operator==(const StepKind&, const StepKind&) = default;
};

constexpr int degree(Site s) noexcept { return s.y == 0 ? 4 : 2; }

/// Neighbors in the frozen enumeration order. Backbone: x+1, x-1, y+1, y-1.
/// Tooth: y+1, y-1. Only the first degree(s) entries are meaningful.
struct Neighbors {
  std::array<Site, 4> sites{};
  int count = 0;

  std::span<const Site> view() const noexcept { return {sites.data(), static_cast<std::size_t>(count)}; }
  auto begin() const noexcept { return sites.begin(); }
  auto end() const noexcept { return sites.begin() + count; }
};

constexpr Neighbors neighbors(Site s) noexcept {
  if (s.y == 0) {
    return {{Site{s.x + 1, 0}, Site{s.x - 1, 0}, Site{s.x, 1}, Site{s.x, -1}}, 4};
  }
  return {{Site{s.x, s.y + 1}, Site{s.x, s.y - 1}, Site{}, Site{}}, 2};
}

struct StepResult {
  Site site;
  StepKind kind;
};

/// Move to neighbor `choice` of `s`. Requires 0 <= choice < degree(s).
constexpr StepResult step(Site s, int choice) noexcept {
  assert(choice >= 0 && choice < degree(s));
  if (s.y == 0) {
    switch (choice) {
      case 0: return {{s.x + 1, 0}, {Axis::Horizontal, +1}};
      case 1: return {{s.x - 1, 0}, {Axis::Horizontal, -1}};
      case 2: return {{s.x, 1}, {Axis::Vertical, +1}};
      default: return {{s.x, -1}, {Axis::Vertical, -1}};
    }
  }
  if (choice == 0) return {{s.x, s.y + 1}, {Axis::Vertical, +1}};
  return {{s.x, s.y - 1}, {Axis::Vertical, -1}};
}

}  // namespace comb
