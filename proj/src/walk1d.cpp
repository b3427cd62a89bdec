#include "comb/walk1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/binomial.hpp>

#include "comb/errors.hpp"
#include "comb/step_tables.hpp"

namespace comb::walk1d {

namespace {

std::uint64_t binomial_exact(std::int64_t n, std::int64_t k) {
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  // c * (n-k+i) = C(n-k+i, i) * i < 2^63 for n <= 60, so this stays exact.
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

}  // namespace

double p_exact(std::int64_t n, std::int64_t i) {
  if (n < 0) throw std::invalid_argument("p_exact: n must be nonnegative");
  if (i < -n || i > n || ((n + i) & 1) != 0) return 0.0;
  const std::int64_t k = (n + i) / 2;
  if (n <= kExactBinomialLimit) {
    return std::ldexp(static_cast<double>(binomial_exact(n, k)), static_cast<int>(-n));
  }
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), 0.5);
  return boost::math::pdf(dist, static_cast<double>(k));
}

double p_asymptotic(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("p_asymptotic: n must be >= 1");
  return std::sqrt(2.0 / std::numbers::pi) / std::sqrt(static_cast<double>(n));
}

double expected_visits_origin(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("expected_visits_origin: n must be nonnegative");
  // p_{m+2,0} = p_{m,0} (m+1)/(m+2); odd m contribute nothing.
  double p = 1.0;
  double sum = 0.0;
  double carry = 0.0;  // Kahan compensation
  for (std::int64_t m = 0; m <= n; m += 2) {
    const double y = p - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    p *= static_cast<double>(m + 1) / static_cast<double>(m + 2);
  }
  return sum;
}

std::vector<double> expected_range_series(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("expected_range_dp: n must be nonnegative");
  if (n > kRangeDpLimit) {
    throw SizeError("expected_range_dp: n = " + std::to_string(n) + " exceeds limit " +
                    std::to_string(kRangeDpLimit));
  }
  // State (a, b) = (pos - min, max - pos) stored by r = a + b in a triangle:
  // cell (r, a) lives at r(r+1)/2 + a.
  const auto tri = [](std::int64_t r) { return r * (r + 1) / 2; };
  const std::size_t cells = static_cast<std::size_t>(tri(n + 1));
  std::vector<double> cur(cells, 0.0), next(cells, 0.0);
  cur[0] = 1.0;

  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(n) + 1);
  double expected = 1.0;
  series.push_back(expected);

  for (std::int64_t m = 0; m < n; ++m) {
    // After m steps the range r is at most m.
    double fresh = 0.0;
    for (std::int64_t r = 0; r <= m; ++r) {
      fresh += 0.5 * (cur[tri(r) + r] + cur[tri(r)]);
    }
    expected += fresh;
    series.push_back(expected);

    const std::int64_t rmax = m + 1;
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r <= rmax; ++r) {
      const std::int64_t base = tri(r);
      for (std::int64_t a = 0; a <= r; ++a) {
        double v = 0.0;
        if (r <= m) {
          if (a >= 1) v += 0.5 * cur[base + a - 1];  // up move inside the range
          if (a + 1 <= r) v += 0.5 * cur[base + a + 1];  // down move inside the range
        }
        if (r >= 1) {
          const std::int64_t prev = tri(r - 1);
          if (a == r) v += 0.5 * cur[prev + r - 1];  // up move from the maximum
          if (a == 0) v += 0.5 * cur[prev];  // down move from the minimum
        }
        next[base + a] = v;
      }
    }
    std::swap(cur, next);
  }
  return series;
}

double expected_range_dp(std::int64_t n) { return expected_range_series(n).back(); }

double ruin_probability(std::int64_t j) {
  if (j < 1) throw std::invalid_argument("ruin_probability: j must be >= 1");
  return 1.0 / (2.0 * static_cast<double>(j));
}

bool simulate_ruin_trial(std::int64_t j, BitStream& bits) {
  if (j < 1) throw std::invalid_argument("simulate_ruin_trial: j must be >= 1");
  if (bits.bit() != 0) return false;
  std::int64_t pos = 1;
  while (pos != 0 && pos != j) pos += bits.bit() ? -1 : 1;
  return pos == j;
}

std::int64_t simulate_range(std::int64_t n, BitStream& bits) {
  const auto& table = detail::kByteSteps;
  std::int64_t pos = 0, lo = 0, hi = 0;
  std::int64_t remaining = n;
  while (remaining > 0) {
    if (bits.buffered() == 0) bits.refill();
    if (remaining >= 8 && bits.buffered() >= 8) {
      const auto& s = table[bits.peek8()];
      bits.skip8();
      lo = std::min(lo, pos + s.min_prefix);
      hi = std::max(hi, pos + s.max_prefix);
      pos += s.net;
      remaining -= 8;
    } else {
      pos += bits.bit() ? -1 : 1;
      lo = std::min(lo, pos);
      hi = std::max(hi, pos);
      --remaining;
    }
  }
  return hi - lo + 1;
}

namespace reference {

std::vector<double> expected_range_series(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("expected_range_dp: n must be nonnegative");
  if (n > kRangeDpLimit) throw SizeError("expected_range_dp: n exceeds limit");
  // prob[a][b] over a + b <= n, row-major with stride n + 1.
  const std::size_t w = static_cast<std::size_t>(n) + 1;
  std::vector<double> cur(w * w, 0.0), next(w * w, 0.0);
  cur[0] = 1.0;
  std::vector<double> series{1.0};
  double expected = 1.0;
  for (std::int64_t m = 0; m < n; ++m) {
    std::fill(next.begin(), next.end(), 0.0);
    double fresh = 0.0;
    for (std::size_t a = 0; a <= static_cast<std::size_t>(m); ++a) {
      for (std::size_t b = 0; a + b <= static_cast<std::size_t>(m); ++b) {
        const double p = cur[a * w + b];
        if (p == 0.0) continue;
        if (b == 0) {
          fresh += 0.5 * p;
          next[(a + 1) * w] += 0.5 * p;
        } else {
          next[(a + 1) * w + b - 1] += 0.5 * p;
        }
        if (a == 0) {
          fresh += 0.5 * p;
          next[b + 1] += 0.5 * p;
        } else {
          next[(a - 1) * w + b + 1] += 0.5 * p;
        }
      }
    }
    expected += fresh;
    series.push_back(expected);
    std::swap(cur, next);
  }
  return series;
}

}  // namespace reference

}  // namespace comb::walk1d
