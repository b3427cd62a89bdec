#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "comb/analysis.hpp"

using namespace comb;
using namespace comb::analysis;

namespace {

template <typename F>
std::vector<SweepPoint> synthetic(const std::vector<std::uint64_t>& ns, F law) {
  std::vector<SweepPoint> pts;
  for (const auto n : ns) {
    SweepPoint p;
    p.n = n;
    p.estimate.mean = law(static_cast<double>(n));
    p.estimate.replicates = 1;
    pts.push_back(p);
  }
  return pts;
}

const std::vector<std::uint64_t> kDecades{10000, 100000, 1000000, 10000000};

double sqrt_log(double n) { return std::sqrt(n) * std::log(n); }

}  // namespace

TEST_CASE("local slopes of exact laws") {
  const auto identity = synthetic({2, 10, 1000, 54321}, [](double n) { return n; });
  for (const auto& s : local_slopes(identity)) CHECK(s.slope == doctest::Approx(1.0).epsilon(1e-12));

  const auto pure = synthetic(kDecades, [](double n) { return std::pow(n, 0.75); });
  for (const auto& s : local_slopes(pure)) CHECK(std::abs(s.slope - 0.75) < 1e-12);

  for (const double alpha : {0.3, 0.5, 0.9, 1.7}) {
    const auto pts = synthetic({3, 17, 400, 90000, 5000000}, [alpha](double n) { return 4.2 * std::pow(n, alpha); });
    for (const auto& s : local_slopes(pts)) CHECK(std::abs(s.slope - alpha) < 1e-12);
  }

  const auto two = synthetic({10000, 1000000}, sqrt_log);
  const auto slopes = local_slopes(two);
  REQUIRE(slopes.size() == 1);
  CHECK(slopes[0].slope == doctest::Approx(0.5 + std::log(1.5) / std::log(100.0)).epsilon(1e-12));
  CHECK(slopes[0].slope == doctest::Approx(0.588).epsilon(1e-3));
  CHECK(slopes[0].n_mid == doctest::Approx(100000.0).epsilon(1e-12));
}

TEST_CASE("local slopes reject bad input") {
  CHECK_THROWS_AS(local_slopes(synthetic({10}, sqrt_log)), std::invalid_argument);
  CHECK_THROWS_AS(local_slopes(synthetic({10, 10, 100}, sqrt_log)), std::invalid_argument);
  CHECK_THROWS_AS(local_slopes(synthetic({100, 10, 1000}, sqrt_log)), std::invalid_argument);
}

TEST_CASE("constant ratio") {
  const auto fixed = synthetic(kDecades, [](double n) { return 0.19947 * sqrt_log(n); });
  for (const auto& r : constant_ratio(fixed)) CHECK(r.ratio == doctest::Approx(0.19947).epsilon(1e-12));

  const auto root = constant_ratio(synthetic(kDecades, [](double n) { return std::sqrt(n); }));
  for (std::size_t k = 1; k < root.size(); ++k) CHECK(root[k].ratio < root[k - 1].ratio);

  auto pts = synthetic({100}, sqrt_log);
  pts[0].estimate.std_error = 3.0;
  CHECK(constant_ratio(pts)[0].uncertainty == doctest::Approx(3.0 / sqrt_log(100.0)));
  CHECK_THROWS_AS(constant_ratio(synthetic({1}, sqrt_log)), std::invalid_argument);
}

TEST_CASE("uniform scaling leaves slopes unchanged and scales ratios") {
  const auto base = synthetic({50, 700, 9000, 120000}, [](double n) { return 1.3 * sqrt_log(n) + std::sqrt(n); });
  for (const double lambda : {0.5, 3.0, 1000.0}) {
    auto scaled = base;
    for (auto& p : scaled) p.estimate.mean *= lambda;
    const auto s0 = local_slopes(base);
    const auto s1 = local_slopes(scaled);
    for (std::size_t k = 0; k < s0.size(); ++k) CHECK(s1[k].slope == doctest::Approx(s0[k].slope).epsilon(1e-12));
    const auto r0 = constant_ratio(base);
    const auto r1 = constant_ratio(scaled);
    for (std::size_t k = 0; k < r0.size(); ++k) CHECK(r1[k].ratio == doctest::Approx(lambda * r0[k].ratio).epsilon(1e-14));
  }
}

TEST_CASE("hypothesis report: square root times log law") {
  const auto rep = hypothesis_report(fit_scaling(synthetic(kDecades, [](double n) { return 0.2 * sqrt_log(n); })));
  CHECK(rep.min_slope >= 0.56);
  CHECK(rep.max_slope <= 0.61);
  CHECK(rep.slopes_above_floor);
  CHECK(rep.slopes_below_threshold);
  CHECK(rep.ratio75_decreasing);
  CHECK(rep.ratio_spread == doctest::Approx(1.0));
  CHECK(rep.supported);
}

TEST_CASE("hypothesis report: three-quarter power law") {
  const auto fit = fit_scaling(synthetic(kDecades, [](double n) { return 0.5 * std::pow(n, 0.75); }));
  const auto rep = hypothesis_report(fit);
  CHECK(rep.min_slope == doctest::Approx(0.75));
  CHECK(rep.max_slope == doctest::Approx(0.75));
  CHECK_FALSE(rep.slopes_below_threshold);
  CHECK_FALSE(rep.ratio75_decreasing);
  for (std::size_t k = 1; k < fit.ratios.size(); ++k) CHECK(fit.ratios[k].ratio > fit.ratios[k - 1].ratio);
  CHECK_FALSE(rep.supported);
}

TEST_CASE("hypothesis report preconditions") {
  CHECK_THROWS_AS(hypothesis_report(fit_scaling(synthetic({10000, 1000000}, sqrt_log))), std::invalid_argument);
  CHECK_THROWS_AS(hypothesis_report(fit_scaling(synthetic({10000, 30000, 90000}, sqrt_log))), std::invalid_argument);
}

TEST_CASE("noisy square-root-log data is supported in at least 95 of 100 trials") {
  // Relative noise comparable to measured sweeps (1e4 replicates at 1e4..1e6, 1e3 at 1e7).
  const std::vector<double> rel_error{0.006, 0.006, 0.006, 0.02};
  int supported = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    std::mt19937_64 gen(trial);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<SweepPoint> pts = synthetic(kDecades, [](double n) { return 0.2 * sqrt_log(n); });
    for (std::size_t k = 0; k < pts.size(); ++k) {
      pts[k].estimate.std_error = rel_error[k] * pts[k].estimate.mean;
      pts[k].estimate.mean += noise(gen) * pts[k].estimate.std_error;
    }
    if (hypothesis_report(fit_scaling(pts)).supported) ++supported;
  }
  CHECK(supported >= 95);
}

TEST_CASE("lemma 1 report") {
  ExperimentConfig cfg;
  cfg.master_seed = 12;
  cfg.replicates = 20000;
  const std::vector<std::uint64_t> ns{2, 100, 1000};
  const auto rep = lemma1_report(ns, cfg);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].backbone.mean >= 1.0);
  CHECK(rep.rows[0].backbone.min >= 1.0);
  for (const auto& row : rep.rows) {
    CHECK(std::abs(row.z_score) < 4.0);
    CHECK(row.backbone_scaled > 0.0);
  }
  CHECK(rep.backbone_band >= 1.0);
  const std::vector<std::uint64_t> bad{1};
  CHECK_THROWS_AS(lemma1_report(bad, cfg), std::invalid_argument);
}

TEST_CASE("reach probabilities fall off with tooth height inside the envelope") {
  ExperimentConfig cfg;
  cfg.master_seed = 21;
  cfg.replicates = 20000;
  const std::vector<std::int64_t> js{10, 30, 100};
  const auto rows = reach_sweep(10000, js, cfg);
  REQUIRE(rows.size() == 3);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].reach.mean < rows[k - 1].reach.mean);
  for (const auto& r : rows) {
    CHECK(r.reach.mean > 0.0);
    CHECK(r.envelope < 1.0);
  }
}
