// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "comb/analysis.hpp"
#include "comb/cli.hpp"
#include "comb/estimator.hpp"
#include "comb/oracle.hpp"
#include "comb/simulator.hpp"
#include "comb/visited_range.hpp"
#include "comb/walk1d.hpp"

using namespace comb;

namespace {

constexpr std::uint64_t kSeed = 20240611;
const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail, double seconds) {
  std::printf("[%s] criterion %2d  %-38s %s  (%.1f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::vector<std::string> full{"comb_range"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  code = cli::run(full, out, err);
  return out.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

void oracle_equivalence() {
  Timer t;
  bool pass = oracle::exact_expected_visited(1) == oracle::Rational(2) &&
              oracle::exact_expected_visited(2) == oracle::Rational(21, 8);
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= 10; ++n) {
    ExperimentConfig cfg;
    cfg.master_seed = kSeed;
    cfg.replicates = 1000000;
    cfg.rule = StopRule::after_steps(n);
    const Estimate e = run_experiment(cfg, Statistic::VisitedSites);
    const double exact = oracle::to_double(oracle::exact_expected_visited(static_cast<std::int64_t>(n)));
    if (n == 1) {
      pass = pass && e.mean == 2.0 && e.std_error == 0.0;
      continue;
    }
    const double z = std::abs(e.mean - exact) / e.std_error;
    worst = std::max(worst, z);
    pass = pass && z < 3.0;
  }
  report(1, pass, "Monte Carlo E[V_n] = exact, n=1..10", fmt("max |z| = %.2f (< 3); E[V_1]=2, E[V_2]=21/8", worst),
         t.seconds());
}

void ruin_reproduction() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (const std::int64_t j : {1, 2, 5, 10}) {
    const Estimate e = estimate_ruin(j, 1000000, kSeed + static_cast<std::uint64_t>(j));
    const double z = (e.mean - walk1d::ruin_probability(j)) / e.std_error;
    pass = pass && std::abs(z) < 3.0;
    detail += fmt("j=%.0f z=%+.2f ", static_cast<double>(j), z);
  }
  report(2, pass, "ruin frequency = 1/(2j)", detail, t.seconds());
}

void visits_origin_asymptotic() {
  Timer t;
  const double ratio = walk1d::expected_visits_origin(1000000) / 1000.0 / kSqrt2OverPi;
  report(3, ratio >= 0.99 && ratio <= 1.01, "E[A_n]/sqrt(n) -> sqrt(2/pi)", fmt("ratio = %.6f in [0.99, 1.01]", ratio),
         t.seconds());
}

void range_asymptotic() {
  Timer t;
  const double target_mc = 2.0 * kSqrt2OverPi * 1000.0;
  const Estimate e = estimate_range_1d(1000000, 10000, kSeed);
  const double rel_mc = std::abs(e.mean / target_mc - 1.0);
  const double dp_ratio = walk1d::expected_range_dp(2000) / std::sqrt(2000.0) / (2.0 * kSqrt2OverPi);
  const double rel_dp = std::abs(dp_ratio - 1.0);
  report(4, rel_mc < 0.02 && rel_dp < 0.03, "E[B_n] ~ 2 sqrt(2/pi) sqrt(n)",
         fmt("MC mean %.2f (rel %.4f < 0.02); DP(2000) rel %.4f < 0.03", e.mean, rel_mc, rel_dp), t.seconds());
}

void lemma1_horizontal() {
  Timer t;
  ExperimentConfig cfg;
  cfg.master_seed = kSeed;
  cfg.replicates = 100000;
  const std::vector<std::uint64_t> ns{10000};
  const auto rep = analysis::lemma1_report(ns, cfg);
  const auto& row = rep.rows.at(0);
  report(5, std::abs(row.z_score) < 3.0, "E[a] = E[A_{n-1}] at n=1e4",
         fmt("mean a %.3f vs %.3f, z = %+.2f", row.horizontal.mean, row.horizontal_target, row.z_score), t.seconds());
}

void lemma1_backbone() {
  Timer t;
  ExperimentConfig cfg;
  cfg.master_seed = kSeed;
  cfg.replicates = 10000;
  const std::vector<std::uint64_t> ns{10000, 100000, 1000000};
  const auto rep = analysis::lemma1_report(ns, cfg);
  const double cap = std::pow(2.0, 1.75) / std::pow(std::numbers::pi, 0.75) + 0.2;
  bool pass = rep.backbone_band <= 2.0;
  std::string detail;
  for (const auto& row : rep.rows) {
    pass = pass && row.backbone_scaled <= cap;
    detail += fmt("%.3f ", row.backbone_scaled);
  }
  report(6, pass, "E[c]/n^{1/4} bounded band", "c/n^0.25 = " + detail + fmt("band %.3f <= 2, cap %.3f", rep.backbone_band, cap),
         t.seconds());
}

void scaling_sweep() {
  Timer t;
  int code = 0;
  std::string csv = run_cli({"simulate", "--n", "10000,100000,1000000", "--reps", "10000", "--seed",
                             std::to_string(kSeed), "--mode", "steps"},
                            code);
  bool pass = code == 0;
  int code2 = 0;
  const std::string top =
      run_cli({"simulate", "--n", "10000000", "--reps", "1000", "--seed", std::to_string(kSeed), "--mode", "steps"},
              code2);
  pass = pass && code2 == 0;
  csv += top.substr(top.find('\n') + 1);

  std::vector<analysis::SweepPoint> pts;
  for (const auto& row : csv_rows(csv)) {
    if (row.at(0) == "mode") continue;
    analysis::SweepPoint p;
    p.n = std::stoull(row.at(1));
    p.estimate.mean = std::stod(row.at(4));
    p.estimate.std_error = std::stod(row.at(5));
    pts.push_back(p);
  }
  const auto fit = analysis::fit_scaling(pts);
  const auto rep = analysis::hypothesis_report(fit);
  bool bracket = true;
  std::string ratios;
  for (const auto& r : fit.ratios) {
    ratios += fmt("%.4f ", r.ratio);
    if (r.n >= 100000) bracket = bracket && r.ratio >= 0.10 && r.ratio <= 0.45;
  }
  std::string slopes;
  for (const auto& s : fit.slopes) slopes += fmt("%.4f ", s.slope);

  // The same sweep through the fit command: exit code is the verdict.
  const auto path = std::string("/tmp/comb_acceptance_sweep.csv");
  if (std::FILE* f = std::fopen(path.c_str(), "w")) {
    std::fputs(csv.c_str(), f);
    std::fclose(f);
  }
  int fit_code = 0;
  run_cli({"fit", "--input", path}, fit_code);

  pass = pass && rep.slopes_above_floor && rep.slopes_below_threshold && rep.ratio75_decreasing &&
         rep.ratio_spread < 1.5 && bracket && fit_code == 0;
  report(7, pass, "sqrt(n) log n law at n=1e4..1e7",
         "slopes " + slopes + "| ratios " + ratios + fmt("| spread %.3f | ratio75 decreasing ", rep.ratio_spread) +
             (rep.ratio75_decreasing ? "yes" : "no"),
         t.seconds());
}

void far_sites() {
  Timer t;
  ExperimentConfig cfg;
  cfg.master_seed = kSeed;
  cfg.replicates = 10000;
  cfg.rule = StopRule::after_vertical_moves(10000);
  const Estimate far = run_experiment(cfg, Statistic::FarSites);
  report(8, far.mean <= 2.0, "far sites reached <= 2 at n=1e4", fmt("mean far sites %.4f +- %.4f", far.mean, far.std_error),
         t.seconds());
}

void tracker_equivalence() {
  Timer t;
  bool pass = true;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    BitStream bits(replicate_seed(kSeed, k));
    Trajectory tr;
    reference::run_walk(StopRule::after_steps(1000), bits, &tr);
    VisitedRange v;
    std::set<Site> seen{Site{}};
    for (const auto& s : tr.steps) {
      v.visit(s.site);
      seen.insert(s.site);
    }
    BitStream again(replicate_seed(kSeed, k));
    const WalkStats fast = run_walk(StopRule::after_steps(1000), again);
    pass = pass && visited_count(v) == static_cast<std::int64_t>(seen.size()) &&
           fast.visited_sites == static_cast<std::int64_t>(seen.size());
  }
  report(9, pass, "interval tracker = explicit set", "10^4 trajectories of 10^3 steps, exact", t.seconds());
}

void determinism() {
  Timer t;
  const std::vector<std::string> base{"simulate", "--n", "100,10000", "--reps", "3000", "--seed", "7", "--mode", "vertical"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto eight = base;
  eight.insert(eight.end(), {"--threads", "8"});
  int c1 = 0, c2 = 0, c3 = 0;
  const std::string a = run_cli(one, c1);
  const std::string b = run_cli(one, c2);
  const std::string c = run_cli(eight, c3);
  report(10, c1 == 0 && c2 == 0 && c3 == 0 && a == b && a == c, "byte-identical simulate output",
         "repeat and --threads 1 vs 8", t.seconds());
}

}  // namespace

int main() {
  oracle_equivalence();
  ruin_reproduction();
  visits_origin_asymptotic();
  range_asymptotic();
  lemma1_horizontal();
  lemma1_backbone();
  scaling_sweep();
  far_sites();
  tracker_equivalence();
  determinism();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
