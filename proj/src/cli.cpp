#include "speedplan/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speedplan/dp.hpp"
#include "speedplan/instance_gen.hpp"
#include "speedplan/io.hpp"
#include "speedplan/log.hpp"
#include "speedplan/oracle.hpp"
#include "speedplan/pareto.hpp"

namespace speedplan {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitGapExceeded = 3;
constexpr int kExitInternal = 4;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot open output file '" + path + "'");
  out << content;
}

void print_assumptions(const AssumptionReport& rep) {
  auto count_false = [](const std::vector<bool>& v) {
    return std::count(v.begin(), v.end(), false);
  };
  std::printf("assumptions: step-size %s (worst margin %.9g), "
              "accel-reserve %s, decel-reserve %s, cost-shape %s (%.9g), "
              "regen-sign %s (%.9g)\n",
              count_false(rep.a1_holds) == 0 ? "ok" : "violated",
              rep.a1_margin.empty()
                  ? 0.0
                  : *std::min_element(rep.a1_margin.begin(), rep.a1_margin.end()),
              count_false(rep.cond2_holds) == 0 ? "ok" : "violated",
              count_false(rep.cond3_holds) == 0 ? "ok" : "violated",
              rep.cond1_holds ? "ok" : "violated", rep.cond1_margin,
              rep.asscomb_holds ? "ok" : "violated", rep.asscomb_margin);
}

int cmd_check(const std::string& scenario_path) {
  const Scenario sc = load_scenario_file(scenario_path);
  const ResampledScenario rs = resample(sc);
  const TighteningResult tight =
      compute_zy(rs.params, rs.grid, rs.limits, sc.solver.epsilon,
                 sc.solver.max_iterations, sc.solver.tol_feas);
  print_assumptions(
      check_assumptions(rs.params, rs.grid, sc.weights,
                        tight.feasible() ? &tight.bounds.z : nullptr));
  if (!tight.feasible()) {
    const InfeasibilityWitness& wit = *tight.verdict.witness;
    std::printf("infeasible: corridor empty at node %zu (gap %.9g m^2/s^2)\n",
                wit.index, wit.gap);
    return kExitInfeasible;
  }
  std::printf("feasible: n=%zu, tightening converged in %d iterations\n",
              rs.grid.size(), tight.bounds.iterations);
  return kExitOk;
}

int cmd_plan(const std::string& scenario_path, double lambda_override,
             bool has_lambda, const std::string& out_path,
             const std::string& format) {
  const Scenario sc = load_scenario_file(scenario_path);
  const ResampledScenario rs = resample(sc);
  Weights weights = sc.weights;
  if (has_lambda) weights.lambda = lambda_override;

  const PlanOutcome outcome = plan(rs.params, rs.grid, weights, sc.solver);
  const ResultBundle bundle = make_bundle(rs.params, rs.grid, weights, outcome);
  write_output(out_path, format == "json" ? emit_result_json(bundle)
                                          : emit_profile_csv(bundle));
  if (outcome.status == PlanStatus::Infeasible) {
    std::fprintf(stderr, "plan: infeasible instance\n");
    return kExitInfeasible;
  }
  if (outcome.status == PlanStatus::NoDpPath) {
    std::fprintf(stderr, "plan: DP found no path on a feasible instance\n");
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_pareto(const std::string& scenario_path, double lambda_min,
               double lambda_max, int samples, bool log_spaced,
               bool include_zero, const std::string& out_path) {
  const Scenario sc = load_scenario_file(scenario_path);
  const ResampledScenario rs = resample(sc);
  SweepConfig cfg;
  cfg.lambda_min = lambda_min;
  cfg.lambda_max = lambda_max;
  cfg.samples = samples;
  cfg.log_spaced = log_spaced;
  cfg.prepend_zero = include_zero;
  const ParetoFront front = pareto_sweep(rs.params, rs.grid, cfg, sc.solver);
  write_output(out_path, emit_pareto_csv(front));
  return kExitOk;
}

int cmd_compare_oracle(const std::string& scenario_path, double lambda_override,
                       bool has_lambda, int levels, int rounds,
                       double max_gap) {
  const Scenario sc = load_scenario_file(scenario_path);
  const ResampledScenario rs = resample(sc);
  Weights weights = sc.weights;
  if (has_lambda) weights.lambda = lambda_override;

  const TighteningResult tight =
      compute_zy(rs.params, rs.grid, rs.limits, sc.solver.epsilon,
                 sc.solver.max_iterations, sc.solver.tol_feas);
  if (!tight.feasible()) {
    std::printf("infeasible instance, nothing to compare\n");
    return kExitInfeasible;
  }
  const PlanOutcome outcome =
      plan_with_bounds(rs.params, rs.grid, weights, tight, sc.solver);
  if (outcome.status != PlanStatus::Ok) {
    std::fprintf(stderr, "compare-oracle: DP failed\n");
    return kExitInternal;
  }
  OracleConfig ocfg = sc.oracle;
  if (levels > 0) ocfg.levels = levels;
  if (rounds >= 0) ocfg.refine_rounds = rounds;
  const OracleResult oracle =
      solve_grid(rs.params, rs.grid, weights, tight.bounds, ocfg);
  if (!oracle.reachable) {
    std::fprintf(stderr, "compare-oracle: oracle found no grid path\n");
    return kExitInternal;
  }

  // The relative gap is measured on the accumulated stage costs, which stay
  // positive; the raw objective can cross zero on regeneration-heavy
  // downhill runs.
  auto stage_value = [&](const SpeedProfile& prof) {
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < prof.w.size(); ++j) {
      total += dp_speed_cost(rs.params, weights, prof.w[j]);
      total += dp_force_cost(rs.params, weights, prof.f[j]);
    }
    return total;
  };
  const double dp_obj = outcome.result->profile.objective;
  const double rel_gap = (stage_value(outcome.result->profile) -
                          stage_value(oracle.profile)) /
                         stage_value(oracle.profile);
  std::printf("dp_objective_s %.9g\noracle_objective_s %.9g\nrel_gap %.9g\n"
              "oracle_grid_gap_s %.9g\n",
              dp_obj, oracle.objective, rel_gap, oracle.grid_gap_estimate);
  return rel_gap > max_gap ? kExitGapExceeded : kExitOk;
}

int cmd_bench(const std::vector<std::size_t>& sizes, int instances,
              std::uint64_t seed, double lambda) {
  std::printf("%8s %10s %10s %10s\n", "n", "median_ms", "mean_ms", "feasible");
  for (const std::size_t n : sizes) {
    std::vector<double> times;
    int feasible = 0;
    for (int k = 0; k < instances; ++k) {
      InstanceConfig cfg;
      cfg.n = n;
      cfg.seed = seed + static_cast<std::uint64_t>(k) * 7919u;
      const Instance inst = make_random_instance(cfg);
      const auto t0 = std::chrono::steady_clock::now();
      const PlanOutcome outcome = plan(inst.params, inst.grid, Weights{lambda});
      const double ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - t0)
              .count();
      if (outcome.status == PlanStatus::Ok) {
        times.push_back(ms);
        ++feasible;
      }
    }
    if (times.empty()) {
      std::printf("%8zu %10s %10s %9d/%d\n", n, "-", "-", feasible, instances);
      continue;
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    const double mean =
        std::accumulate(times.begin(), times.end(), 0.0) / times.size();
    std::printf("%8zu %10.3f %10.3f %9d/%d\n", n, median, mean, feasible,
                instances);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"speed profile planner: minimum weighted travel time and "
               "energy along a fixed path"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path = "-";
  std::string format = "csv";
  double lambda_override = 0.0;
  bool has_lambda = false;

  CLI::App* check = app.add_subcommand(
      "check", "feasibility verdict and assumption report");
  check->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();

  CLI::App* plan_cmd = app.add_subcommand("plan", "plan a speed profile");
  plan_cmd->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  plan_cmd->add_option("--lambda", lambda_override,
                       "energy weight override [s/J]");
  plan_cmd->add_option("--out", out_path, "output file ('-' for stdout)");
  plan_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  double lambda_min = 1e-6, lambda_max = 1.0;
  int samples = 45;
  bool log_spaced = false;
  bool include_zero = true;
  CLI::App* pareto_cmd =
      app.add_subcommand("pareto", "trade-off sweep over lambda");
  pareto_cmd->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  pareto_cmd->add_option("--lambda-min", lambda_min, "lowest lambda [s/J]");
  pareto_cmd->add_option("--lambda-max", lambda_max, "highest lambda [s/J]");
  pareto_cmd->add_option("--samples", samples, "number of lambda samples");
  pareto_cmd->add_flag("--log", log_spaced, "logarithmic lambda spacing");
  pareto_cmd->add_flag("!--no-zero", include_zero,
                       "skip the explicit lambda=0 point");
  pareto_cmd->add_option("--out", out_path, "output file ('-' for stdout)");

  int levels = 0, rounds = -1;
  double max_gap = 1e-2;
  CLI::App* cmp = app.add_subcommand(
      "compare-oracle", "compare the DP against the dense grid oracle");
  cmp->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  cmp->add_option("--lambda", lambda_override, "energy weight override [s/J]");
  cmp->add_option("--levels", levels, "oracle levels per node");
  cmp->add_option("--rounds", rounds, "oracle refinement rounds");
  cmp->add_option("--max-gap", max_gap, "fail when relative gap exceeds this");

  std::vector<std::size_t> sizes{500, 1000, 2000};
  int instances = 5;
  std::uint64_t seed = 1;
  double bench_lambda = 5e-4;
  CLI::App* bench = app.add_subcommand("bench", "plan timing over random instances");
  bench->add_option("--sizes", sizes, "grid sizes to benchmark");
  bench->add_option("--instances", instances, "instances per size");
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("--lambda", bench_lambda, "energy weight [s/J]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  has_lambda = plan_cmd->count("--lambda") > 0 || cmp->count("--lambda") > 0;

  try {
    if (check->parsed()) return cmd_check(scenario_path);
    if (plan_cmd->parsed())
      return cmd_plan(scenario_path, lambda_override, has_lambda, out_path,
                      format);
    if (pareto_cmd->parsed())
      return cmd_pareto(scenario_path, lambda_min, lambda_max, samples,
                        log_spaced, include_zero, out_path);
    if (cmp->parsed())
      return cmd_compare_oracle(scenario_path, lambda_override, has_lambda,
                                levels, rounds, max_gap);
    if (bench->parsed()) return cmd_bench(sizes, instances, seed, bench_lambda);
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace speedplan
