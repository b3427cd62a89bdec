#pragma once

// Exact expectations for tiny walks, by enumerating every path with its
// exact probability. Ground truth for the simulator at small n.

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "comb/comb_model.hpp"

namespace comb::oracle {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::int64_t kStepLimit = 14;
inline constexpr std::int64_t kVerticalLimit = 4;
inline constexpr std::int64_t kPositionLimit = 60;
/// Horizontal runs longer than this are cut from the W enumeration.
inline constexpr int kRunTruncation = 48;

/// Neighbor visiting order used by the enumerator; any permutation gives the
/// same exact answer.
struct NeighborOrder {
  std::array<int, 4> backbone{0, 1, 2, 3};
  std::array<int, 2> tooth{0, 1};
};

struct PathEnumeration {
  Rational expected_visited;
  Rational total_weight;  // always exactly 1
  std::uint64_t paths = 0;
};

/// Depth-first walk over every n-step path. Throws SizeError above kStepLimit.
PathEnumeration enumerate_paths(std::int64_t n, const NeighborOrder& order = {});

/// Exact E[V_n].
Rational exact_expected_visited(std::int64_t n);

struct TruncatedValue {
  Rational value;         // lower bound; the truncated paths are omitted
  Rational lost_mass;     // exact probability of the omitted paths
  Rational error_bound;   // value <= true value <= value + error_bound
};

/// Exact E[V'_n] for the walk stopped at its n-th vertical move, with
/// horizontal runs cut at kRunTruncation. Throws SizeError outside [1, kVerticalLimit].
///
/// Error bound: at most r = ceil(n/2) horizontal runs occur, each of
/// geometric length L with P(L = i) = 2^{-i-1}, and V'_n <= 1 + n + a. Summing
/// E[(1 + n + a) 1{L_k > H}] over runs gives r (n + r + H + 2) 2^{-(H+1)}.
TruncatedValue exact_expected_visited_W(std::int64_t n_vertical);

/// Exact probability (same truncation) that the walk stopped at its n-th
/// vertical move visits `target`; the error bound is r 2^{-(H+1)}.
TruncatedValue exact_reach_probability_W(std::int64_t n_vertical, Site target);

/// Exact distribution of the 1D walk after n steps by Pascal's rule.
std::map<std::int64_t, Rational> exact_position_distribution_1d(std::int64_t n);

/// "p/q" with q always present (1/1 for one).
std::string fraction_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace comb::oracle
