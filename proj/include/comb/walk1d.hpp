#pragma once

// Exact and closed-form quantities for the simple symmetric walk on Z.

#include <cstdint>
#include <vector>

#include "comb/rng.hpp"

namespace comb::walk1d {

/// Largest n for which p_exact uses exact integer binomials.
inline constexpr std::int64_t kExactBinomialLimit = 60;
/// Largest n accepted by the range dynamic program.
inline constexpr std::int64_t kRangeDpLimit = 2000;

/// P(S_n = i) for the walk started at 0: C(n, (n+i)/2) / 2^n, zero on parity
/// mismatch or |i| > n.
double p_exact(std::int64_t n, std::int64_t i);

/// Leading-order sqrt(2/pi)/sqrt(n). Requires n >= 1.
double p_asymptotic(std::int64_t n);

/// E[A_n] = sum_{m=0}^{n} P(S_m = 0), the expected number of visits to the
/// origin in steps 0..n.
double expected_visits_origin(std::int64_t n);

/// Exact E[B_n], the expected number of distinct integers visited in n steps.
/// Throws SizeError for n > kRangeDpLimit.
double expected_range_dp(std::int64_t n);

/// E[B_0], ..., E[B_n] from a single pass of the range dynamic program.
std::vector<double> expected_range_series(std::int64_t n);

/// r_j = 1/(2j), the probability of reaching j before returning to 0.
double ruin_probability(std::int64_t j);

/// One trial of the gambler's-ruin event behind ruin_probability. A first
/// step to -1 decides the trial (false), so every trial ends by the hitting
/// time of {0, j}.
bool simulate_ruin_trial(std::int64_t j, BitStream& bits);

/// Range B_n of one simulated n-step walk; steps are consumed eight at a time.
std::int64_t simulate_range(std::int64_t n, BitStream& bits);

namespace reference {

/// Serial scatter-form range dynamic program; same contract as
/// expected_range_series.
std::vector<double> expected_range_series(std::int64_t n);

}  // namespace reference

}  // namespace comb::walk1d
