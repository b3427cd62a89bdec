#include "comb/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "comb/analysis.hpp"
#include "comb/errors.hpp"
#include "comb/estimator.hpp"
#include "comb/oracle.hpp"
#include "comb/simulator.hpp"
#include "comb/walk1d.hpp"

namespace comb::cli {

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("COMB_RANGE_THREADS")) {
    int v = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && v > 0) return v;
  }
  return 0;
}

StopRule parse_mode(const std::string& mode, std::uint64_t n) {
  if (mode == "steps") return StopRule::after_steps(n);
  if (mode == "vertical") return StopRule::after_vertical_moves(n);
  throw UsageError("mode must be 'steps' or 'vertical'");
}

// --- formulas ---------------------------------------------------------------

struct FormulaArgs {
  std::vector<std::int64_t> p;
  std::vector<std::int64_t> p_asymptotic;
  std::vector<std::int64_t> visits_origin;
  std::vector<std::int64_t> range_dp;
  std::vector<std::int64_t> ruin;
};

void add_formulas(CLI::App& app, FormulaArgs& a) {
  auto* cmd = app.add_subcommand("formulas", "Closed-form and exact 1D walk quantities");
  cmd->add_option("--p", a.p, "p_{n,i}: probability of being at i after n steps (N I)")->expected(2);
  cmd->add_option("--p-asymptotic", a.p_asymptotic, "sqrt(2/pi)/sqrt(n)")->delimiter(',');
  cmd->add_option("--visits-origin", a.visits_origin, "E[A_n], expected visits to the origin")->delimiter(',');
  cmd->add_option("--range-dp", a.range_dp, "E[B_n], expected range (n <= 2000)")->delimiter(',');
  cmd->add_option("--ruin", a.ruin, "r_j = 1/(2j)")->delimiter(',');
}

int cmd_formulas(const FormulaArgs& a, std::ostream& out) {
  if (a.p.empty() && a.p_asymptotic.empty() && a.visits_origin.empty() && a.range_dp.empty() && a.ruin.empty()) {
    throw UsageError("formulas: give at least one of --p, --p-asymptotic, --visits-origin, --range-dp, --ruin");
  }
  std::ostringstream rows;
  rows << "quantity,n,i_or_j,value\n";
  if (!a.p.empty()) {
    if (a.p[0] < 0) throw UsageError("--p: n must be nonnegative");
    rows << "p," << a.p[0] << ',' << a.p[1] << ',' << format_real(walk1d::p_exact(a.p[0], a.p[1])) << '\n';
  }
  for (const auto n : a.p_asymptotic) {
    if (n < 1) throw UsageError("--p-asymptotic: n must be >= 1");
    rows << "p_asymptotic," << n << ",," << format_real(walk1d::p_asymptotic(n)) << '\n';
  }
  for (const auto n : a.visits_origin) {
    if (n < 0) throw UsageError("--visits-origin: n must be nonnegative");
    rows << "A," << n << ",," << format_real(walk1d::expected_visits_origin(n)) << '\n';
  }
  for (const auto n : a.range_dp) {
    if (n < 0 || n > walk1d::kRangeDpLimit) throw UsageError("--range-dp: n must be in [0, 2000]");
    rows << "B," << n << ",," << format_real(walk1d::expected_range_dp(n)) << '\n';
  }
  for (const auto j : a.ruin) {
    if (j < 1) throw UsageError("--ruin: j must be >= 1");
    rows << "r,," << j << ',' << format_real(walk1d::ruin_probability(j)) << '\n';
  }
  out << rows.str();
  return kExitOk;
}

// --- oracle -----------------------------------------------------------------

struct OracleArgs {
  std::vector<std::int64_t> steps;
  std::vector<std::int64_t> vertical;
};

void add_oracle(CLI::App& app, OracleArgs& a) {
  auto* cmd = app.add_subcommand("oracle", "Exact expected range by path enumeration");
  auto* s = cmd->add_option("--steps", a.steps, "E[V_n] for n-step walks (n <= 14)")->delimiter(',');
  auto* v = cmd->add_option("--vertical", a.vertical, "E[V'_n] for walks stopped at the n-th vertical move (n <= 4)")
                ->delimiter(',');
  s->excludes(v);
}

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  std::ostringstream rows;
  if (!a.steps.empty()) {
    for (const auto n : a.steps) {
      if (n < 0 || n > oracle::kStepLimit) throw UsageError("--steps: n must be in [0, 14]");
    }
    rows << "n,exact_fraction,decimal\n";
    for (const auto n : a.steps) {
      const auto r = oracle::exact_expected_visited(n);
      rows << n << ',' << oracle::fraction_string(r) << ',' << format_real(oracle::to_double(r)) << '\n';
    }
  } else if (!a.vertical.empty()) {
    for (const auto n : a.vertical) {
      if (n < 1 || n > oracle::kVerticalLimit) throw UsageError("--vertical: n must be in [1, 4]");
    }
    rows << "n_vertical,exact_fraction,decimal,error_bound\n";
    for (const auto n : a.vertical) {
      const auto r = oracle::exact_expected_visited_W(n);
      rows << n << ',' << oracle::fraction_string(r.value) << ',' << format_real(oracle::to_double(r.value)) << ','
           << format_real(oracle::to_double(r.error_bound)) << '\n';
    }
  } else {
    throw UsageError("oracle: give --steps or --vertical");
  }
  out << rows.str();
  return kExitOk;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::vector<std::uint64_t> n;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  std::string mode = "steps";
  bool diagnostics = false;
  bool timing = false;
  bool human = false;
  int threads = 0;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
  auto* cmd = app.add_subcommand("simulate", "Monte Carlo range of comb walks");
  cmd->add_option("--n", a.n, "Comma-separated walk lengths")->required()->delimiter(',');
  cmd->add_option("--reps", a.reps, "Replicates per n")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--mode", a.mode, "steps: stop after n steps; vertical: after the n-th vertical move")
      ->check(CLI::IsMember({"steps", "vertical"}))
      ->capture_default_str();
  cmd->add_flag("--diagnostics", a.diagnostics, "Append site-class diagnostic columns");
  cmd->add_flag("--timing", a.timing, "Fill runtime_seconds (otherwise left empty)");
  cmd->add_flag("--human", a.human, "Append a summary block after the CSV");
  cmd->add_option("--threads", a.threads, "Worker threads (default: COMB_RANGE_THREADS or all cores)");
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.reps < 1) throw UsageError("--reps must be >= 1");
  for (const auto n : a.n) {
    if (n < 1) throw UsageError("--n values must be >= 1");
  }
  std::ostringstream rows;
  rows << "mode,n,replicates,seed,mean_V,stderr_V,mean_a,stderr_a,mean_c,stderr_c,mean_d,stderr_d,far_sites_mean,"
          "runtime_seconds";
  if (a.diagnostics) rows << ",far_sites_stderr,intermediate_sites_mean,close_sites_mean,final_tooth_intermediate_mean";
  rows << '\n';

  std::ostringstream summary;
  for (const auto n : a.n) {
    ExperimentConfig cfg;
    cfg.master_seed = a.seed;
    cfg.replicates = a.reps;
    cfg.rule = parse_mode(a.mode, n);
    cfg.threads = resolve_threads(a.threads);

    const auto start = std::chrono::steady_clock::now();
    const ExperimentResult res = run_experiment_all(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto& v = res[Statistic::VisitedSites];
    const auto& h = res[Statistic::HorizontalMoves];
    const auto& c = res[Statistic::BackboneSites];
    const auto& d = res[Statistic::BackboneEntries];
    const auto& far = res[Statistic::FarSites];
    rows << a.mode << ',' << n << ',' << a.reps << ',' << a.seed << ',' << format_real(v.mean) << ','
         << format_real(v.std_error) << ',' << format_real(h.mean) << ',' << format_real(h.std_error) << ','
         << format_real(c.mean) << ',' << format_real(c.std_error) << ',' << format_real(d.mean) << ','
         << format_real(d.std_error) << ',' << format_real(far.mean) << ',';
    if (a.timing) rows << format_real(seconds);
    if (a.diagnostics) {
      rows << ',' << format_real(far.std_error) << ',' << format_real(res[Statistic::IntermediateSites].mean) << ','
           << format_real(res[Statistic::CloseSites].mean) << ','
           << format_real(res[Statistic::FinalToothIntermediate].mean);
    }
    rows << '\n';

    if (a.human && n >= 2) {
      const double nd = static_cast<double>(n);
      summary << "# n=" << n << "  V=" << format_real(v.mean) << " +- " << format_real(v.std_error)
              << "  V/(sqrt(n) log n)=" << format_real(v.mean / (std::sqrt(nd) * std::log(nd)))
              << "  V/n^0.75=" << format_real(v.mean / std::pow(nd, 0.75)) << '\n';
    }
  }
  out << rows.str();
  if (a.human) out << '\n' << "# reference constant 1/(2 sqrt(2 pi)) = " << format_real(analysis::kRangeConstant) << '\n'
                   << summary.str();
  return kExitOk;
}

// --- fit --------------------------------------------------------------------

struct FitArgs {
  std::string input;
};

void add_fit(CLI::App& app, FitArgs& a) {
  auto* cmd = app.add_subcommand("fit", "Scaling verdict from a simulate CSV");
  cmd->add_option("--input", a.input, "CSV written by 'simulate' ('-' for stdin)")->required();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError(std::string("fit: malformed ") + what + " '" + s + "'");
  }
  return v;
}

std::vector<analysis::SweepPoint> read_sweep(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("fit: empty input");
  const auto header = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < header.size(); ++k) col[header[k]] = k;
  for (const char* name : {"mode", "n", "replicates", "mean_V", "stderr_V"}) {
    if (!col.contains(name)) throw UsageError(std::string("fit: missing column ") + name);
  }

  std::vector<analysis::SweepPoint> points;
  std::optional<std::string> mode;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (cells.size() < header.size()) throw UsageError("fit: short row '" + line + "'");
    const std::string& m = cells[col["mode"]];
    if (mode && *mode != m) throw UsageError("fit: rows mix modes '" + *mode + "' and '" + m + "'");
    mode = m;
    analysis::SweepPoint p;
    p.n = parse_number<std::uint64_t>(cells[col["n"]], "n");
    p.estimate.mean = parse_number<double>(cells[col["mean_V"]], "mean_V");
    p.estimate.std_error = parse_number<double>(cells[col["stderr_V"]], "stderr_V");
    p.estimate.replicates = parse_number<std::uint64_t>(cells[col["replicates"]], "replicates");
    if (p.n < 2 || !(p.estimate.mean >= 1.0)) throw UsageError("fit: rows need n >= 2 and mean_V >= 1");
    points.push_back(p);
  }
  if (points.size() < 3) throw UsageError("fit: need at least three rows");
  std::sort(points.begin(), points.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
  return points;
}

int cmd_fit(const FitArgs& a, std::ostream& out) {
  std::vector<analysis::SweepPoint> points;
  if (a.input == "-") {
    points = read_sweep(std::cin);
  } else {
    std::ifstream in(a.input);
    if (!in) throw UsageError("fit: cannot open '" + a.input + "'");
    points = read_sweep(in);
  }
  analysis::ScalingFit fit;
  analysis::HypothesisReport rep;
  try {
    fit = analysis::fit_scaling(std::move(points));
    rep = analysis::hypothesis_report(fit);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("fit: ") + e.what());
  }

  const auto b = [](bool v) { return v ? "true" : "false"; };
  out << "min_slope,max_slope,slopes_above_050,slopes_below_070,ratio75_decreasing,ratio_spread,ratios_stable,"
         "supported\n"
      << format_real(rep.min_slope) << ',' << format_real(rep.max_slope) << ',' << b(rep.slopes_above_floor) << ','
      << b(rep.slopes_below_threshold) << ',' << b(rep.ratio75_decreasing) << ',' << format_real(rep.ratio_spread)
      << ',' << b(rep.ratios_stable) << ',' << b(rep.supported) << '\n';

  out << "\n# n, mean, mean/(sqrt(n) log n), mean/n^0.75, slope to next\n";
  for (std::size_t k = 0; k < fit.points.size(); ++k) {
    out << "# " << fit.points[k].n << "  " << format_real(fit.points[k].estimate.mean) << "  "
        << format_real(fit.ratios[k].ratio) << " +- " << format_real(fit.ratios[k].uncertainty) << "  "
        << format_real(fit.ratio75[k].ratio);
    if (k < fit.slopes.size()) out << "  " << format_real(fit.slopes[k].slope);
    out << '\n';
  }
  out << "# reference constant 1/(2 sqrt(2 pi)) = " << format_real(analysis::kRangeConstant) << '\n'
      << "# verdict: " << (rep.supported ? "sqrt(n) log n law supported" : "sqrt(n) log n law NOT supported") << '\n';
  return rep.supported ? kExitOk : kExitRejected;
}

// --- trace ------------------------------------------------------------------

struct TraceArgs {
  std::uint64_t n = 10;
  std::uint64_t seed = 1;
  std::uint64_t replicate = 0;
  std::string mode = "steps";
};

void add_trace(CLI::App& app, TraceArgs& a) {
  auto* cmd = app.add_subcommand("trace", "Audit dump of one replicate's trajectory (tab-separated)");
  cmd->add_option("--n", a.n, "Walk length")->required();
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--replicate", a.replicate, "Replicate index")->capture_default_str();
  cmd->add_option("--mode", a.mode, "steps or vertical")->check(CLI::IsMember({"steps", "vertical"}));
}

int cmd_trace(const TraceArgs& a, std::ostream& out) {
  if (a.n < 1) throw UsageError("--n must be >= 1");
  BitStream bits(replicate_seed(a.seed, a.replicate));
  Trajectory trajectory;
  reference::run_walk(parse_mode(a.mode, a.n), bits, &trajectory);
  write_audit(trajectory, out);
  return kExitOk;
}

// --- lemma1 / reach ---------------------------------------------------------

struct LemmaArgs {
  std::vector<std::uint64_t> n;
  std::vector<std::int64_t> j;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
};

void add_lemma1(CLI::App& app, LemmaArgs& a) {
  auto* cmd = app.add_subcommand("lemma1", "Horizontal moves and backbone sites of the vertical-stopped walk");
  cmd->add_option("--n", a.n, "Comma-separated vertical-move counts (>= 2)")->required()->delimiter(',');
  cmd->add_option("--reps", a.reps, "Replicates per n")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", a.threads, "Worker threads");
}

int cmd_lemma1(const LemmaArgs& a, std::ostream& out) {
  for (const auto n : a.n) {
    if (n < 2) throw UsageError("--n values must be >= 2");
  }
  if (a.reps < 1) throw UsageError("--reps must be >= 1");
  ExperimentConfig cfg;
  cfg.master_seed = a.seed;
  cfg.replicates = a.reps;
  cfg.threads = resolve_threads(a.threads);
  const auto rep = analysis::lemma1_report(a.n, cfg);
  std::ostringstream rows;
  rows << "n,replicates,mean_a,stderr_a,target_a,z_a,mean_c,stderr_c,c_over_n_quarter\n";
  for (const auto& r : rep.rows) {
    rows << r.n << ',' << a.reps << ',' << format_real(r.horizontal.mean) << ',' << format_real(r.horizontal.std_error)
         << ',' << format_real(r.horizontal_target) << ',' << format_real(r.z_score) << ','
         << format_real(r.backbone.mean) << ',' << format_real(r.backbone.std_error) << ','
         << format_real(r.backbone_scaled) << '\n';
  }
  out << rows.str();
  return kExitOk;
}

void add_reach(CLI::App& app, LemmaArgs& a) {
  auto* cmd = app.add_subcommand("reach", "Probability that the vertical-stopped walk visits (0, j)");
  cmd->add_option("--n", a.n, "Vertical-move count")->required()->expected(1);
  cmd->add_option("--j", a.j, "Comma-separated tooth heights")->required()->delimiter(',');
  cmd->add_option("--reps", a.reps, "Replicates")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", a.threads, "Worker threads");
}

int cmd_reach(const LemmaArgs& a, std::ostream& out) {
  if (a.n.size() != 1 || a.n[0] < 1) throw UsageError("--n must be a single value >= 1");
  if (a.reps < 1) throw UsageError("--reps must be >= 1");
  ExperimentConfig cfg;
  cfg.master_seed = a.seed;
  cfg.replicates = a.reps;
  cfg.threads = resolve_threads(a.threads);
  const auto rows_in = analysis::reach_sweep(a.n[0], a.j, cfg);
  std::ostringstream rows;
  rows << "n,j,replicates,u_j,stderr,u_j_times_j_plus_1,envelope\n";
  for (const auto& r : rows_in) {
    rows << a.n[0] << ',' << r.j << ',' << a.reps << ',' << format_real(r.reach.mean) << ','
         << format_real(r.reach.std_error) << ',' << format_real(r.scaled) << ',' << format_real(r.envelope) << '\n';
  }
  out << rows.str();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Range of random walks on the 2-dimensional comb"};
  app.require_subcommand(1);

  FormulaArgs formulas;
  OracleArgs oracle_args;
  SimulateArgs simulate;
  FitArgs fit;
  TraceArgs trace;
  LemmaArgs lemma1, reach;
  add_formulas(app, formulas);
  add_oracle(app, oracle_args);
  add_simulate(app, simulate);
  add_fit(app, fit);
  add_trace(app, trace);
  add_lemma1(app, lemma1);
  add_reach(app, reach);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("formulas")) return cmd_formulas(formulas, out);
    if (app.got_subcommand("oracle")) return cmd_oracle(oracle_args, out);
    if (app.got_subcommand("simulate")) return cmd_simulate(simulate, out);
    if (app.got_subcommand("fit")) return cmd_fit(fit, out);
    if (app.got_subcommand("trace")) return cmd_trace(trace, out);
    if (app.got_subcommand("lemma1")) return cmd_lemma1(lemma1, out);
    if (app.got_subcommand("reach")) return cmd_reach(reach, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace comb::cli
