// covsolve: cardinality-constrained concave coverage maximization.
// Subcommands: solve, bench, convert, ratio, gen-hard, oracle.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covsolve/greedy.hpp"
#include "covsolve/hardgen.hpp"
#include "covsolve/instance.hpp"
#include "covsolve/objective.hpp"
#include "covsolve/oracle.hpp"
#include "covsolve/ratios.hpp"
#include "covsolve/reward.hpp"
#include "covsolve/rounding.hpp"
#include "covsolve/solver.hpp"

namespace {

using covsolve::CoverageInstance;
using covsolve::Reward;
using json = nlohmann::ordered_json;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct RunConfig {
  std::string instance_path;
  bool snap = false;
  std::string reward_spec = "min:c=1";
  std::int64_t k = 1;
  double epsilon = 0.01;
  std::optional<double> eta;
  std::optional<double> eta_scale;
  double tol = 1e-6;
  std::optional<long long> max_iter;
  bool no_early_stop = false;
  int rounds = 1;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string trace_path;
};

CoverageInstance load_instance(const RunConfig& cfg) {
  if (cfg.snap)
    return covsolve::build_symmetric_bipartite(covsolve::load_snap_edgelist(cfg.instance_path));
  return covsolve::load_native(cfg.instance_path);
}

covsolve::SolveOptions solve_options(const RunConfig& cfg) {
  covsolve::SolveOptions opts;
  opts.epsilon = cfg.epsilon;
  opts.eta = cfg.eta;
  opts.eta_scale = cfg.eta_scale;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.early_stop = !cfg.no_early_stop;
  return opts;
}

json config_json(const RunConfig& cfg) {
  json c;
  c["instance"] = cfg.instance_path;
  c["snap"] = cfg.snap;
  c["reward"] = cfg.reward_spec;
  c["k"] = cfg.k;
  c["epsilon"] = cfg.epsilon;
  c["eta"] = cfg.eta ? json(*cfg.eta) : json(nullptr);
  c["eta_scale"] = cfg.eta_scale ? json(*cfg.eta_scale) : json(nullptr);
  c["tol"] = cfg.tol;
  c["max_iter"] = cfg.max_iter ? json(*cfg.max_iter) : json(nullptr);
  c["early_stop"] = !cfg.no_early_stop;
  c["rounds"] = cfg.rounds;
  c["seed"] = cfg.seed;
  return c;
}

void write_trace_csv(std::ostream& out, const covsolve::SolveReport& rep) {
  char buf[128];
  out << "iter,smooth_value,true_value\n";
  for (std::size_t t = 0; t < rep.smooth_trace.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", t, rep.smooth_trace[t],
                  rep.true_trace[t]);
    out << buf;
  }
}

int cmd_solve(const RunConfig& cfg) {
  CoverageInstance inst = load_instance(cfg);
  Reward reward = Reward::parse(cfg.reward_spec).normalized();

  covsolve::SolveResult solved =
      covsolve::accelerated_solve(inst, reward, cfg.k, solve_options(cfg));

  auto t0 = std::chrono::steady_clock::now();
  covsolve::RoundBestResult rounded =
      covsolve::round_best_of(inst, reward, solved.best_x, cfg.rounds, cfg.seed);
  double round_seconds = seconds_since(t0);

  const covsolve::SolveReport& rep = solved.report;
  json out;
  out["config"] = config_json(cfg);
  out["greedy"] = {{"value", rep.greedy_value}, {"seconds", rep.greedy_seconds}};
  out["solve"] = {{"value", rep.best_value},
                  {"iters", rep.iterations},
                  {"mu", rep.mu},
                  {"eta", rep.eta},
                  {"T", rep.T},
                  {"seconds", rep.solve_seconds},
                  {"stopped_early", rep.stopped_early},
                  {"final_smooth_value", rep.final_smooth_value},
                  {"degenerate", rep.degenerate},
                  {"weight_scale", rep.weight_scale}};
  out["round"] = {{"value", rounded.value}, {"trials", cfg.rounds}, {"seconds", round_seconds}};
  out["set"] = rounded.set;

  if (!cfg.trace_path.empty()) {
    std::ofstream tf(cfg.trace_path);
    if (!tf) throw std::runtime_error("cannot open trace file '" + cfg.trace_path + "'");
    write_trace_csv(tf, rep);
  }
  if (cfg.format == "csv")
    write_trace_csv(std::cout, rep);
  else
    std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_bench(const std::vector<std::string>& instances, const std::vector<std::int64_t>& ks,
              const RunConfig& base, int trials, bool per_stage) {
  std::printf("instance,k,c_or_reward,stage,mean_seconds,std_seconds,objective\n");
  for (const auto& path : instances) {
    RunConfig cfg = base;
    cfg.instance_path = path;
    CoverageInstance inst = load_instance(cfg);
    Reward reward = Reward::parse(cfg.reward_spec).normalized();
    for (std::int64_t k : ks) {
      struct Stage {
        std::vector<double> seconds;
        double objective = 0;
      };
      Stage greedy, solve, round, total;
      for (int trial = 0; trial < trials; ++trial) {
        covsolve::SolveResult solved =
            covsolve::accelerated_solve(inst, reward, k, solve_options(cfg));
        auto t0 = std::chrono::steady_clock::now();
        covsolve::RoundBestResult rounded =
            covsolve::round_best_of(inst, reward, solved.best_x, cfg.rounds, cfg.seed);
        double round_seconds = seconds_since(t0);

        greedy.seconds.push_back(solved.report.greedy_seconds);
        greedy.objective = solved.report.greedy_value;
        solve.seconds.push_back(solved.report.solve_seconds);
        solve.objective = solved.report.best_value;
        round.seconds.push_back(round_seconds);
        round.objective = rounded.value;
        total.seconds.push_back(solved.report.greedy_seconds + solved.report.solve_seconds +
                                round_seconds);
        total.objective = rounded.value;
      }
      auto stats = [](const std::vector<double>& vals) {
        double mean = 0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double var = 0;
        for (double v : vals) var += (v - mean) * (v - mean);
        double sd = vals.size() > 1 ? std::sqrt(var / static_cast<double>(vals.size() - 1)) : 0.0;
        return std::pair<double, double>{mean, sd};
      };
      auto emit = [&](const char* stage, const Stage& s) {
        auto [mean, sd] = stats(s.seconds);
        std::printf("%s,%lld,%s,%s,%.6f,%.6f,%.17g\n", path.c_str(),
                    static_cast<long long>(k), cfg.reward_spec.c_str(), stage, mean, sd,
                    s.objective);
      };
      if (per_stage) {
        emit("greedy", greedy);
        emit("solve", solve);
        emit("round", round);
      }
      emit("total", total);
    }
  }
  return 0;
}

int cmd_convert(const std::string& snap_path, const std::string& out_path) {
  covsolve::UndirectedGraph g = covsolve::load_snap_edgelist(snap_path);
  CoverageInstance inst = covsolve::build_symmetric_bipartite(g);
  covsolve::save_native(inst, out_path);
  std::printf("wrote %s: n=%lld r=%lld m=%lld\n", out_path.c_str(),
              static_cast<long long>(inst.n), static_cast<long long>(inst.r),
              static_cast<long long>(inst.num_edges()));
  return 0;
}

int cmd_ratio(const std::string& reward_spec, long long curve, long long search_limit) {
  Reward reward = Reward::parse(reward_spec).normalized();
  if (curve > 0) {
    std::printf("x,alpha\n");
    for (long long x = 1; x <= curve; ++x)
      std::printf("%lld,%.10g\n", x, covsolve::alpha_at(reward, x));
    return 0;
  }
  covsolve::AlphaResult res = covsolve::alpha(reward, search_limit);
  std::printf("alpha = %.10g\n", res.value);
  if (res.argmin > 0) std::printf("argmin_x = %lld\n", res.argmin);
  if (res.at_search_limit)
    std::printf("warning: minimum at the search limit; rerun with a larger --search-limit\n");
  return 0;
}

int cmd_gen_hard(long long c, const std::string& out_path) {
  covsolve::HardInstance hard = covsolve::generate_hard_instance(c);
  covsolve::save_native(hard.instance, out_path);
  json sidecar;
  sidecar["l"] = hard.l;
  sidecar["q"] = hard.q;
  sidecar["k"] = hard.k;
  sidecar["opt_value"] = hard.opt_value;
  std::ofstream sf(out_path + ".json");
  if (!sf) throw std::runtime_error("cannot open '" + out_path + ".json'");
  sf << sidecar.dump(2) << "\n";
  std::cout << sidecar.dump(2) << "\n";
  return 0;
}

int cmd_oracle(const std::string& instance_path, const std::string& reward_spec,
               std::int64_t k) {
  CoverageInstance inst = covsolve::load_native(instance_path);
  Reward reward = Reward::parse(reward_spec).normalized();
  auto [value, set] = covsolve::oracle::brute_force_opt(inst, reward, k);
  json out;
  out["value"] = value;
  out["set"] = set;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concave coverage maximization: accelerated relax-and-round solver"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> bench_instances;
  std::vector<std::int64_t> bench_ks;
  int trials = 3;
  bool per_stage = false;
  std::string snap_in, out_path;
  long long hard_c = 2, curve = 0, search_limit = 0;

  auto add_solver_flags = [&cfg](CLI::App* cmd) {
    cmd->add_option("--reward", cfg.reward_spec,
                    "Reward spec: min:c=<int> | log | pow:gamma=<real> | "
                    "plin:c=<int>,beta=<real> | table:<v0,v1,...>");
    cmd->add_option("--k", cfg.k, "Cardinality budget");
    cmd->add_option("--epsilon", cfg.epsilon, "Relative error target");
    auto* eta = cmd->add_option_function<double>(
        "--eta", [&cfg](double v) { cfg.eta = v; }, "Absolute step size override");
    auto* eta_scale = cmd->add_option_function<double>(
        "--eta-scale", [&cfg](double v) { cfg.eta_scale = v; },
        "Multiplier on the theoretical step size 4*mu/d_R");
    eta->excludes(eta_scale);
    eta_scale->excludes(eta);
    cmd->add_option("--tol", cfg.tol, "Early stopping tolerance");
    cmd->add_option_function<long long>(
        "--max-iter", [&cfg](long long v) { cfg.max_iter = v; }, "Iteration cap");
    cmd->add_flag("--no-early-stop", cfg.no_early_stop, "Disable early stopping");
    cmd->add_option("--rounds", cfg.rounds, "Swap-rounding trials (best-of-N)");
    cmd->add_option("--seed", cfg.seed, "RNG seed (default 0, never ambient entropy)");
  };

  auto* solve = app.add_subcommand("solve", "Greedy + accelerated gradient + swap rounding");
  solve->add_option("--instance", cfg.instance_path, "Instance path")->required();
  solve->add_flag("--snap", cfg.snap, "Instance is a SNAP edge list (symmetric bipartite transform)");
  add_solver_flags(solve);
  solve->add_option("--format", cfg.format, "Report format: json report or csv trace")
      ->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--trace", cfg.trace_path, "Write iteration trace CSV to this path");

  auto* bench = app.add_subcommand("bench", "Timing table across instances and budgets");
  bench->add_option("--instance", bench_instances, "Instance paths")->required();
  bench->add_flag("--snap", cfg.snap, "Instances are SNAP edge lists");
  bench->add_option("--k", bench_ks, "Budgets")->required();
  bench->add_option("--trials", trials, "Repetitions per configuration");
  bench->add_flag("--per-stage", per_stage, "Emit greedy/solve/round rows too");
  bench->add_option("--reward", cfg.reward_spec, "Reward spec");
  bench->add_option("--epsilon", cfg.epsilon, "Relative error target");
  bench->add_option("--rounds", cfg.rounds, "Swap-rounding trials");
  bench->add_option("--seed", cfg.seed, "RNG seed");
  bench->add_option("--tol", cfg.tol, "Early stopping tolerance");

  auto* convert = app.add_subcommand("convert", "SNAP edge list to native instance");
  convert->add_option("--snap", snap_in, "SNAP edge list path")->required();
  convert->add_option("--out", out_path, "Output instance path")->required();

  auto* ratio = app.add_subcommand("ratio", "Poisson concavity ratio of a reward");
  ratio->add_option("--reward", cfg.reward_spec, "Reward spec")->required();
  ratio->add_option("--curve", curve, "Emit x,alpha CSV for x = 1..N instead");
  ratio->add_option("--search-limit", search_limit, "Search limit for numeric infima");

  auto* gen = app.add_subcommand("gen-hard", "Generate a hard multi-coverage instance");
  gen->add_option("--c", hard_c, "Multi-coverage saturation c >= 2")->required();
  gen->add_option("--out", out_path, "Output instance path")->required();

  auto* orc = app.add_subcommand("oracle", "Brute-force optimum for small instances");
  orc->add_option("--instance", cfg.instance_path, "Instance path")->required();
  orc->add_option("--reward", cfg.reward_spec, "Reward spec");
  orc->add_option("--k", cfg.k, "Cardinality budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (bench->parsed()) return cmd_bench(bench_instances, bench_ks, cfg, trials, per_stage);
    if (convert->parsed()) return cmd_convert(snap_in, out_path);
    if (ratio->parsed()) return cmd_ratio(cfg.reward_spec, curve, search_limit);
    if (gen->parsed()) return cmd_gen_hard(hard_c, out_path);
    if (orc->parsed()) return cmd_oracle(cfg.instance_path, cfg.reward_spec, cfg.k);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
