#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "comb/comb_model.hpp"

using namespace comb;

TEST_CASE("degree is 4 on the backbone and 2 on teeth") {
  CHECK(degree({0, 0}) == 4);
  CHECK(degree({3, 2}) == 2);
  CHECK(degree({-7, 0}) == 4);
  CHECK(degree({5, -9}) == 2);
}

TEST_CASE("neighbors follow the frozen order") {
  const auto origin = neighbors({0, 0});
  REQUIRE(origin.count == 4);
  CHECK(origin.sites[0] == Site{1, 0});
  CHECK(origin.sites[1] == Site{-1, 0});
  CHECK(origin.sites[2] == Site{0, 1});
  CHECK(origin.sites[3] == Site{0, -1});

  const auto up = neighbors({3, 2});
  REQUIRE(up.count == 2);
  CHECK(up.sites[0] == Site{3, 3});
  CHECK(up.sites[1] == Site{3, 1});

  const auto down = neighbors({3, -1});
  REQUIRE(down.count == 2);
  CHECK(down.sites[0] == Site{3, 0});
  CHECK(down.sites[1] == Site{3, -2});
}

TEST_CASE("step returns the indexed neighbor and its kind") {
  const auto a = step({0, 0}, 2);
  CHECK(a.site == Site{0, 1});
  CHECK(a.kind == StepKind{Axis::Vertical, +1});

  const auto b = step({5, 0}, 1);
  CHECK(b.site == Site{4, 0});
  CHECK(b.kind == StepKind{Axis::Horizontal, -1});

  const auto c = step({5, 3}, 1);
  CHECK(c.site == Site{5, 2});
  CHECK(c.kind == StepKind{Axis::Vertical, -1});

  for (const Site s : {Site{0, 0}, Site{-4, 0}, Site{2, 7}, Site{2, -7}}) {
    const auto nb = neighbors(s);
    for (int k = 0; k < degree(s); ++k) CHECK(step(s, k).site == nb.sites[k]);
  }
}

TEST_CASE("adjacency is symmetric and degree-consistent") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  std::bernoulli_distribution on_axis(0.3);
  for (int t = 0; t < 20000; ++t) {
    const Site v{coord(gen), on_axis(gen) ? 0 : coord(gen)};
    const auto nb = neighbors(v);
    CHECK(nb.count == degree(v));
    for (const Site u : nb) {
      const auto back = neighbors(u);
      CHECK(std::find(back.begin(), back.end(), v) != back.end());
    }
  }
}

TEST_CASE("horizontal steps only leave the backbone") {
  for (std::int64_t y = -5; y <= 5; ++y) {
    const Site s{2, y};
    for (int k = 0; k < degree(s); ++k) {
      if (step(s, k).kind.axis == Axis::Horizontal) CHECK(y == 0);
    }
  }
}

TEST_CASE("induced subgraph on a finite box is a tree") {
  for (const std::int64_t k : {1, 5, 50}) {
    const auto inside = [k](Site s) { return s.x >= -k && s.x <= k && s.y >= -k && s.y <= k; };
    std::int64_t edges = 0;
    for (std::int64_t x = -k; x <= k; ++x) {
      for (std::int64_t y = -k; y <= k; ++y) {
        for (const Site u : neighbors({x, y})) {
          if (inside(u)) ++edges;
        }
      }
    }
    edges /= 2;
    const std::int64_t vertices = (2 * k + 1) * (2 * k + 1);

    std::set<Site> seen{Site{}};
    std::queue<Site> frontier;
    frontier.push(Site{});
    while (!frontier.empty()) {
      const Site s = frontier.front();
      frontier.pop();
      for (const Site u : neighbors(s)) {
        if (inside(u) && seen.insert(u).second) frontier.push(u);
      }
    }
    CHECK(static_cast<std::int64_t>(seen.size()) == vertices);  // connected
    CHECK(edges == vertices - 1);                               // hence acyclic
  }
}
