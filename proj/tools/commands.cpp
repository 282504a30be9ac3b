#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "poisongame/text.hpp"

namespace poisongame::cli {

namespace fs = std::filesystem;

Experiment load_experiment(const fs::path& data, std::uint64_t seed) {
  auto split = normalize_and_split(load_csv(data), 0.7, seed);
  auto geometry = class_geometry(split.train);
  return {std::move(split), std::move(geometry)};
}

namespace {

ScenarioOptions scenario(const SweepOptions& options) {
  ScenarioOptions s;
  s.trainer = options.trainer;
  s.trials = options.trials;
  s.seed = options.seed;
  s.jobs = options.jobs;
  return s;
}

}  // namespace

std::vector<SweepRow> run_sweep(const Experiment& ex, std::span<const double> grid,
                                std::int64_t n_poison, const SweepOptions& options) {
  std::vector<double> thetas(grid.begin(), grid.end());
  std::sort(thetas.rbegin(), thetas.rend());
  std::vector<SweepRow> rows;
  for (double theta : thetas) {
    ScenarioOptions clean = scenario(options);
    clean.defense = DefenseRadius(theta);
    ScenarioOptions attacked = clean;
    attacked.attack = AttackPlan::single(0.99 * theta, n_poison);
    const auto& [train, test, stats] = ex.split;
    rows.push_back({1.0 - theta,
                    evaluate_scenario(train, test, ex.geometry, clean).mean_accuracy,
                    evaluate_scenario(train, test, ex.geometry, attacked).mean_accuracy});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "removal_fraction,accuracy_clean,accuracy_attacked\n";
  for (const auto& r : rows) {
    out << format_number(r.removal_fraction) << ',' << format_number(r.accuracy_clean) << ','
        << format_number(r.accuracy_attacked) << '\n';
  }
}

OracleComparison compare_with_oracle(const PayoffCurve& e, const PayoffCurve& gamma,
                                     const SolveReport& report, std::int64_t n_poison,
                                     std::size_t grid_size, std::int64_t iterations) {
  const auto grid = uniform_grid(grid_size);
  OracleComparison c{report.defender_loss,
                     solve_matrix_game(build_matrix(e, gamma, n_poison, grid), iterations), 0.0};
  const double outside = std::max({c.oracle.value_lower - c.solver_loss,
                                   c.solver_loss - c.oracle.value_upper, 0.0});
  c.relative_gap = outside / std::max(std::fabs(c.oracle.value_upper), 1e-300);
  return c;
}

double Evaluation::best_pure_accuracy() const {
  double best = 0.0;
  for (const auto& p : pure) best = std::max(best, p.result.mean_accuracy);
  return best;
}

Evaluation run_evaluation(const Experiment& ex, const MixedDefense& mix,
                          std::span<const double> pure_grid, std::int64_t n_poison,
                          const SweepOptions& options) {
  const auto& [train, test, stats] = ex.split;
  ScenarioOptions mixed = scenario(options);
  mixed.defense = mix;
  mixed.attack = AttackPlan::single(0.99 * mix.min_theta(), n_poison);
  Evaluation ev{evaluate_scenario(train, test, ex.geometry, mixed), {}};
  for (double theta : pure_grid) {
    ScenarioOptions pure = scenario(options);
    pure.defense = DefenseRadius(theta);
    pure.attack = AttackPlan::single(0.99 * theta, n_poison);
    ev.pure.push_back({theta, evaluate_scenario(train, test, ex.geometry, pure)});
  }
  return ev;
}

void write_evaluation_trials(std::ostream& out, const Evaluation& ev) {
  out << "defense,trial,theta,attacked,accuracy\n";
  auto rows = [&](const char* name, const ScenarioResult& r) {
    for (const auto& t : r.trials) {
      out << name << ',' << t.trial << ',' << (t.theta ? format_number(*t.theta) : "none") << ','
          << (t.attacked ? 1 : 0) << ',' << format_number(t.accuracy) << '\n';
    }
  };
  rows("mixed", ev.mixed);
  for (const auto& p : ev.pure) rows("pure", p.result);
}

void write_evaluation_summary(std::ostream& out, const Evaluation& ev) {
  out << "defense,theta,mean_accuracy\n";
  out << "mixed,none," << format_number(ev.mixed.mean_accuracy) << '\n';
  for (const auto& p : ev.pure) {
    out << "pure," << format_number(p.theta) << ',' << format_number(p.result.mean_accuracy)
        << '\n';
  }
}

namespace {

struct Args {
  std::string data = "data/spambase.data";
  std::uint64_t seed = 1;
  std::size_t grid = 21;
  std::size_t oracle_grid = 200;
  std::int64_t budget = 644;
  int n_support = 3;
  double epsilon = 1e-7;
  int trials = 5;
  int jobs = 1;
  int epochs = 5000;
  bool fast = false;
  double gap_threshold = 0.02;
  std::int64_t iterations = 200000;
  std::string out;
  std::string e_curve = "e_curve.csv";
  std::string gamma_curve = "gamma_curve.csv";
  std::string report = "solve.json";

  SweepOptions sweep() const {
    SweepOptions o;
    o.trainer.epochs = fast ? 500 : epochs;
    o.trials = trials;
    o.seed = seed;
    o.jobs = jobs;
    return o;
  }
  SolverOptions solver() const {
    SolverOptions o;
    o.n_support = n_support;
    o.n_poison = budget;
    o.epsilon = epsilon;
    return o;
  }
};

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
  auto f = open_out(path);
  fn(f);
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void print_report(std::ostream& out, const SolveReport& r) {
  out << "radii:";
  for (double v : r.radii()) out << ' ' << format_number(v);
  out << "\nprobs:";
  for (double v : r.probs()) out << ' ' << format_number(v);
  out << "\nloss: " << format_number(r.defender_loss) << "\niterations: " << r.iterations
      << (r.converged ? "" : " (not converged)") << '\n';
  if (r.support_shrunk) out << "note: support shrank to " << r.radii().size() << " radii\n";
}

bool print_oracle(std::ostream& out, const OracleComparison& c, double threshold) {
  out << "solver loss: " << format_number(c.solver_loss) << '\n'
      << "oracle value: [" << format_number(c.oracle.value_lower) << ", "
      << format_number(c.oracle.value_upper) << "]\n"
      << "duality gap: " << format_number(c.oracle.gap()) << '\n'
      << "relative gap: " << format_number(c.relative_gap) << '\n';
  const bool ok = c.relative_gap <= threshold;
  if (!ok) out << "relative gap exceeds threshold " << format_number(threshold) << '\n';
  return ok;
}

void write_oracle_csv(std::ostream& out, const OracleComparison& c) {
  out << "solver_loss,value_lower,value_upper,relative_gap\n"
      << format_number(c.solver_loss) << ',' << format_number(c.oracle.value_lower) << ','
      << format_number(c.oracle.value_upper) << ',' << format_number(c.relative_gap) << '\n';
}

void write_curves(const fs::path& dir, const CurveEstimate& e, const CurveEstimate& gamma) {
  write_file(dir / "e_curve.csv", [&](std::ostream& o) { write_curve_csv(o, e.fitted); });
  write_file(dir / "gamma_curve.csv", [&](std::ostream& o) { write_curve_csv(o, gamma.fitted); });
  write_file(dir / "e_raw.csv", [&](std::ostream& o) { write_curve_csv(o, PayoffCurve(e.raw)); });
  write_file(dir / "gamma_raw.csv",
             [&](std::ostream& o) { write_curve_csv(o, PayoffCurve(gamma.raw)); });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Mixed-strategy filter defenses against data poisoning"};
  app.require_subcommand(1);

  auto data_opts = [&](CLI::App* c) {
    c->add_option("--data", a.data, "comma-separated data file, last column 0/1")
        ->capture_default_str();
    c->add_option("--seed", a.seed, "split, attack and training seed")->capture_default_str();
    c->add_option("--trials", a.trials, "trials per cell")->capture_default_str()->check(
        CLI::PositiveNumber);
    c->add_option("--jobs", a.jobs, "concurrent trials")->capture_default_str()->check(
        CLI::PositiveNumber);
    c->add_option("--epochs", a.epochs, "SVM training epochs")->capture_default_str()->check(
        CLI::PositiveNumber);
    c->add_flag("--fast", a.fast, "train for 500 epochs");
    c->add_option("--budget", a.budget, "number of poisoning points")->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto curve_opts = [&](CLI::App* c) {
    c->add_option("--e", a.e_curve, "E curve CSV")->capture_default_str();
    c->add_option("--gamma", a.gamma_curve, "Gamma curve CSV")->capture_default_str();
    c->add_option("--budget", a.budget, "number of poisoning points")->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto solver_opts = [&](CLI::App* c) {
    c->add_option("--n-support", a.n_support, "number of filter radii")->capture_default_str();
    c->add_option("--epsilon", a.epsilon, "stop when the loss improves by less")
        ->capture_default_str();
  };
  auto oracle_opts = [&](CLI::App* c, const char* grid_flag) {
    c->add_option(grid_flag, a.oracle_grid, "matrix game grid size")->capture_default_str()
        ->check(CLI::Range(2, 100000));
    c->add_option("--iterations", a.iterations, "fictitious play iterations")
        ->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--gap-threshold", a.gap_threshold, "largest accepted relative gap")
        ->capture_default_str();
  };
  auto grid_opt = [&](CLI::App* c) {
    c->add_option("--grid", a.grid, "number of equally spaced percentiles")
        ->capture_default_str()->check(CLI::Range(2, 100000));
  };

  auto* sweep = app.add_subcommand("sweep", "accuracy versus filter strength, clean and attacked");
  data_opts(sweep);
  grid_opt(sweep);
  sweep->add_option("--out", a.out, "output CSV (default sweep.csv)");

  auto* curves = app.add_subcommand("curves", "estimate and fit the E and Gamma curves");
  data_opts(curves);
  grid_opt(curves);
  curves->add_option("--out", a.out, "output directory (default .)");

  auto* solve_cmd = app.add_subcommand("solve", "optimal mixed filter defense");
  curve_opts(solve_cmd);
  solver_opts(solve_cmd);
  solve_cmd->add_option("--out", a.out, "output JSON (default solve.json)");

  auto* oracle = app.add_subcommand("oracle", "check the solver against a matrix game");
  curve_opts(oracle);
  solver_opts(oracle);
  oracle_opts(oracle, "--grid");

  auto* evaluate = app.add_subcommand("evaluate", "mixed versus pure defenses under attack");
  data_opts(evaluate);
  grid_opt(evaluate);
  evaluate->add_option("--report", a.report, "solve report JSON")->capture_default_str();
  evaluate->add_option("--out", a.out, "output directory (default .)");

  auto* pipeline = app.add_subcommand("pipeline", "sweep, curves, solve, oracle and evaluate");
  data_opts(pipeline);
  grid_opt(pipeline);
  solver_opts(pipeline);
  oracle_opts(pipeline, "--oracle-grid");
  pipeline->add_option("--out", a.out, "output directory (default results)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sweep) {
      const auto ex = load_experiment(a.data, a.seed);
      const auto rows = run_sweep(ex, uniform_grid(a.grid), a.budget, a.sweep());
      const fs::path path = a.out.empty() ? "sweep.csv" : a.out;
      write_file(path, [&](std::ostream& o) { write_sweep_csv(o, rows); });
      out << "wrote " << path.string() << '\n';
    } else if (*curves) {
      const auto ex = load_experiment(a.data, a.seed);
      const auto grid = uniform_grid(a.grid);
      const auto opts = a.sweep();
      const auto& [train, test, stats] = ex.split;
      const auto gamma = estimate_gamma(train, test, ex.geometry, grid, opts);
      const auto e = estimate_e(train, test, ex.geometry, grid, a.budget, opts);
      write_curves(a.out.empty() ? "." : a.out, e, gamma);
      out << "wrote e_curve.csv, gamma_curve.csv, e_raw.csv, gamma_raw.csv\n";
    } else if (*solve_cmd) {
      const auto r = solve(load_curve_csv(a.e_curve), load_curve_csv(a.gamma_curve), a.solver());
      const fs::path path = a.out.empty() ? "solve.json" : a.out;
      write_file(path, [&](std::ostream& o) { o << to_json(r); });
      print_report(out, r);
    } else if (*oracle) {
      const auto e = load_curve_csv(a.e_curve);
      const auto gamma = load_curve_csv(a.gamma_curve);
      const auto r = solve(e, gamma, a.solver());
      const auto c = compare_with_oracle(e, gamma, r, a.budget, a.oracle_grid, a.iterations);
      if (!print_oracle(out, c, a.gap_threshold)) return 1;
    } else if (*evaluate) {
      const auto report = solve_report_from_json(read_file(a.report));
      const auto ex = load_experiment(a.data, a.seed);
      const auto ev = run_evaluation(ex, report.mix, uniform_grid(a.grid), a.budget, a.sweep());
      const fs::path dir = a.out.empty() ? "." : a.out;
      write_file(dir / "evaluate_trials.csv",
                 [&](std::ostream& o) { write_evaluation_trials(o, ev); });
      write_file(dir / "evaluate_summary.csv",
                 [&](std::ostream& o) { write_evaluation_summary(o, ev); });
      out << "mixed accuracy: " << format_number(ev.mixed.mean_accuracy) << '\n'
          << "best pure accuracy: " << format_number(ev.best_pure_accuracy()) << '\n';
    } else if (*pipeline) {
      const fs::path dir = a.out.empty() ? "results" : a.out;
      const auto ex = load_experiment(a.data, a.seed);
      const auto grid = uniform_grid(a.grid);
      const auto opts = a.sweep();
      const auto& [train, test, stats] = ex.split;

      const auto rows = run_sweep(ex, grid, a.budget, opts);
      write_file(dir / "sweep.csv", [&](std::ostream& o) { write_sweep_csv(o, rows); });
      const auto gamma = estimate_gamma(train, test, ex.geometry, grid, opts);
      const auto e = estimate_e(train, test, ex.geometry, grid, a.budget, opts);
      write_curves(dir, e, gamma);

      const auto r = solve(e.fitted, gamma.fitted, a.solver());
      write_file(dir / "solve.json", [&](std::ostream& o) { o << to_json(r); });
      print_report(out, r);

      const auto c =
          compare_with_oracle(e.fitted, gamma.fitted, r, a.budget, a.oracle_grid, a.iterations);
      write_file(dir / "oracle.csv", [&](std::ostream& o) { write_oracle_csv(o, c); });
      const bool oracle_ok = print_oracle(out, c, a.gap_threshold);

      const auto ev = run_evaluation(ex, r.mix, grid, a.budget, opts);
      write_file(dir / "evaluate_trials.csv",
                 [&](std::ostream& o) { write_evaluation_trials(o, ev); });
      write_file(dir / "evaluate_summary.csv",
                 [&](std::ostream& o) { write_evaluation_summary(o, ev); });
      out << "mixed accuracy: " << format_number(ev.mixed.mean_accuracy) << '\n'
          << "best pure accuracy: " << format_number(ev.best_pure_accuracy()) << '\n';
      if (!oracle_ok) return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace poisongame::cli
