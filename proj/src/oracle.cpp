#include "comb/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "comb/errors.hpp"

namespace comb::oracle {

using boost::multiprecision::cpp_int;

namespace {

// ---------------------------------------------------------------------------
// Fixed-length paths. Every path weight is 2^{-k} with k <= 2n <= 28, so the
// weighted sums are integers over 2^{2n} and fit in 64 bits.

struct Enumerator {
  std::int64_t n;
  NeighborOrder order;
  std::array<Site, kStepLimit + 1> visited{};
  int distinct = 0;
  std::uint64_t weighted_count = 0;  // sum of count * 2^{2n-k}
  std::uint64_t weight = 0;          // sum of 2^{2n-k}
  std::uint64_t paths = 0;

  void walk(Site at, std::int64_t depth, int log_weight) {
    if (depth == n) {
      const std::uint64_t w = std::uint64_t{1} << (2 * n - log_weight);
      weighted_count += static_cast<std::uint64_t>(distinct) * w;
      weight += w;
      ++paths;
      return;
    }
    const bool backbone = at.on_backbone();
    const int deg = degree(at);
    const int extra = backbone ? 2 : 1;
    for (int k = 0; k < deg; ++k) {
      const int choice = backbone ? order.backbone[k] : order.tooth[k];
      const Site next = step(at, choice).site;
      const bool fresh = std::find(visited.begin(), visited.begin() + distinct, next) == visited.begin() + distinct;
      if (fresh) visited[distinct++] = next;
      walk(next, depth + 1, log_weight + extra);
      if (fresh) --distinct;
    }
  }
};

// ---------------------------------------------------------------------------
// Walk W, forward over merged states. A state holds the backbone interval and
// the entered teeth relative to the current x, the current y, and (only when
// a target is tracked) the absolute x. Weights are integer numerators over a
// fixed 2^D; a backbone step divides by 4, a tooth step by 2.

struct Tooth {
  int dx, neg, pos;
  friend bool operator==(const Tooth&, const Tooth&) = default;
  friend auto operator<=>(const Tooth&, const Tooth&) = default;
};

struct WState {
  int x = 0;  // absolute; kept at 0 when canonicalising
  int lo = 0, hi = 0, y = 0;
  std::vector<Tooth> teeth;  // sorted by dx, nonzero spans only

  std::vector<int> key() const {
    std::vector<int> k{x, lo, hi, y};
    k.reserve(4 + 3 * teeth.size());
    for (const auto& t : teeth) {
      k.push_back(t.dx);
      k.push_back(t.neg);
      k.push_back(t.pos);
    }
    return k;
  }

  static WState from_key(const std::vector<int>& k) {
    WState s;
    s.x = k[0];
    s.lo = k[1];
    s.hi = k[2];
    s.y = k[3];
    for (std::size_t i = 4; i + 2 < k.size(); i += 3) s.teeth.push_back({k[i], k[i + 1], k[i + 2]});
    return s;
  }

  std::int64_t count() const {
    std::int64_t c = hi - lo + 1;
    for (const auto& t : teeth) c += t.pos - t.neg;
    return c;
  }

  void move_horizontal(int dir) {
    x += dir;
    lo = std::min(lo - dir, 0);
    hi = std::max(hi - dir, 0);
    for (auto& t : teeth) t.dx -= dir;
  }

  void move_vertical(int dir) {
    y += dir;
    if (y == 0) return;
    auto it = std::lower_bound(teeth.begin(), teeth.end(), 0, [](const Tooth& t, int dx) { return t.dx < dx; });
    if (it == teeth.end() || it->dx != 0) it = teeth.insert(it, Tooth{0, 0, 0});
    it->neg = std::min(it->neg, y);
    it->pos = std::max(it->pos, y);
  }

  bool visits(Site target) const {
    const std::int64_t dx = target.x - x;
    if (target.y == 0) return lo <= dx && dx <= hi;
    for (const auto& t : teeth) {
      if (t.dx == dx) return t.neg <= target.y && target.y <= t.pos && target.y != 0;
    }
    return false;
  }
};

WState mirrored(WState s, bool flip_x, bool flip_y) {
  if (flip_x) {
    const int lo = s.lo;
    s.lo = -s.hi;
    s.hi = -lo;
    for (auto& t : s.teeth) t.dx = -t.dx;
    std::sort(s.teeth.begin(), s.teeth.end());
  }
  if (flip_y) {
    s.y = -s.y;
    for (auto& t : s.teeth) {
      const int neg = t.neg;
      t.neg = -t.pos;
      t.pos = -neg;
    }
  }
  return s;
}

struct KeyHash {
  std::size_t operator()(const std::vector<int>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int v : k) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using StateMap = std::unordered_map<std::vector<int>, cpp_int, KeyHash>;

class WalkW {
 public:
  explicit WalkW(bool canonical) : canonical_(canonical) {}

  void add(StateMap& into, WState s, const cpp_int& w) const {
    if (canonical_) s.x = 0;
    std::vector<int> best = s.key();
    if (canonical_) {
      for (int v = 1; v < 4; ++v) best = std::min(best, mirrored(s, v & 1, v & 2).key());
    }
    auto [it, inserted] = into.try_emplace(std::move(best), w);
    if (!inserted) it->second += w;
  }

  // Returns the states right after the n-th vertical move; accumulates the
  // numerator of truncated mass in `lost`.
  StateMap run(std::int64_t n, int exponent, cpp_int& lost) const {
    StateMap current;
    add(current, WState{}, cpp_int(1) << exponent);
    for (std::int64_t v = 0; v < n; ++v) {
      StateMap next;
      StateMap layer;
      for (const auto& [key, w] : current) {
        const WState s = WState::from_key(key);
        if (s.y != 0) {
          const cpp_int half = w >> 1;
          for (int dir : {+1, -1}) {
            WState t = s;
            t.move_vertical(dir);
            add(next, t, half);
          }
        } else {
          add(layer, s, w);
        }
      }
      // Horizontal runs from every backbone state, one layer per run length.
      for (int k = 0; k <= kRunTruncation && !layer.empty(); ++k) {
        StateMap following;
        for (const auto& [key, w] : layer) {
          const WState s = WState::from_key(key);
          const cpp_int quarter = w >> 2;
          for (int dir : {+1, -1}) {
            WState t = s;
            t.move_vertical(dir);
            add(next, t, quarter);
          }
          if (k == kRunTruncation) {
            lost += quarter << 1;
            continue;
          }
          for (int dir : {+1, -1}) {
            WState t = s;
            t.move_horizontal(dir);
            add(following, t, quarter);
          }
        }
        layer = std::move(following);
      }
      current = std::move(next);
    }
    return current;
  }

 private:
  bool canonical_;
};

int runs_bound(std::int64_t n) { return static_cast<int>((n + 1) / 2); }

// Fixed denominator exponent: every step halves or quarters, and a W path has
// at most n + r H steps.
int denominator_exponent(std::int64_t n) { return static_cast<int>(2 * (n + runs_bound(n) * kRunTruncation)); }

void check_vertical_limit(std::int64_t n) {
  if (n < 1 || n > kVerticalLimit) {
    throw SizeError("W oracle: n_vertical = " + std::to_string(n) + " outside [1, " +
                    std::to_string(kVerticalLimit) + "]");
  }
}

Rational over_power_of_two(const cpp_int& numerator, int exponent) {
  return Rational(numerator, cpp_int(1) << exponent);
}

}  // namespace

PathEnumeration enumerate_paths(std::int64_t n, const NeighborOrder& order) {
  if (n < 0 || n > kStepLimit) {
    throw SizeError("oracle: n = " + std::to_string(n) + " outside [0, " + std::to_string(kStepLimit) + "]");
  }
  Enumerator e{n, order};
  e.visited[0] = Site{};
  e.distinct = 1;
  e.walk(Site{}, 0, 0);
  const cpp_int denom = cpp_int(1) << (2 * n);
  return {Rational(cpp_int(e.weighted_count), denom), Rational(cpp_int(e.weight), denom), e.paths};
}

Rational exact_expected_visited(std::int64_t n) { return enumerate_paths(n).expected_visited; }

TruncatedValue exact_expected_visited_W(std::int64_t n_vertical) {
  check_vertical_limit(n_vertical);
  const int exponent = denominator_exponent(n_vertical);
  cpp_int lost = 0;
  const StateMap final_states = WalkW(true).run(n_vertical, exponent, lost);
  cpp_int total = 0;
  for (const auto& [key, w] : final_states) total += w * WState::from_key(key).count();

  const int r = runs_bound(n_vertical);
  const int h = kRunTruncation;
  TruncatedValue out;
  out.value = over_power_of_two(total, exponent);
  out.lost_mass = over_power_of_two(lost, exponent);
  out.error_bound = Rational(cpp_int(r) * (n_vertical + r + h + 2), cpp_int(1) << (h + 1));
  return out;
}

TruncatedValue exact_reach_probability_W(std::int64_t n_vertical, Site target) {
  check_vertical_limit(n_vertical);
  const int exponent = denominator_exponent(n_vertical);
  cpp_int lost = 0;
  const StateMap final_states = WalkW(false).run(n_vertical, exponent, lost);
  cpp_int hit = 0;
  for (const auto& [key, w] : final_states) {
    if (WState::from_key(key).visits(target)) hit += w;
  }
  TruncatedValue out;
  out.value = over_power_of_two(hit, exponent);
  out.lost_mass = over_power_of_two(lost, exponent);
  out.error_bound = Rational(cpp_int(runs_bound(n_vertical)), cpp_int(1) << (kRunTruncation + 1));
  return out;
}

std::map<std::int64_t, Rational> exact_position_distribution_1d(std::int64_t n) {
  if (n < 0 || n > kPositionLimit) {
    throw SizeError("oracle: n = " + std::to_string(n) + " outside [0, " + std::to_string(kPositionLimit) + "]");
  }
  // Row of Pascal's triangle: counts[k] paths end at 2k - n.
  std::vector<cpp_int> counts{1};
  for (std::int64_t m = 0; m < n; ++m) {
    std::vector<cpp_int> next(counts.size() + 1, 0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      next[k] += counts[k];
      next[k + 1] += counts[k];
    }
    counts = std::move(next);
  }
  std::map<std::int64_t, Rational> dist;
  const cpp_int denom = cpp_int(1) << n;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    dist.emplace(2 * static_cast<std::int64_t>(k) - n, Rational(counts[k], denom));
  }
  return dist;
}

std::string fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace comb::oracle
