// Command-line front end: single-pair solves, one-shot network solves,
// Monte-Carlo sweeps, solver-vs-oracle verification, and assignment
// benchmarks, all driven by flat key=value config files.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 infeasible
// problem/scenario, 4 verification failure (1 reserved for internal errors).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cnoma/assignment.hpp"
#include "cnoma/channel.hpp"
#include "cnoma/config.hpp"
#include "cnoma/experiments.hpp"
#include "cnoma/verify.hpp"

namespace {

using namespace cnoma;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerifyFailed = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 12345;
  std::vector<std::string> sets;
  int threads = 1;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "key=value config file")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", o.out_path, "output file (default: stdout)");
  sub->add_option("--seed", o.seed, "random seed (default 12345)");
  sub->add_option("--set", o.sets,
                  "override a config key, e.g. --set trials=100 (repeatable)");
  sub->add_option("--threads", o.threads, "worker thread cap (default 1)")
      ->check(CLI::PositiveNumber);
}

ConfigMap load_map(const CommonOpts& o) {
  ConfigMap map;
  if (!o.config_path.empty()) map = load_config_file(o.config_path);
  apply_overrides(map, o.sets);
  return map;
}

int write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write output file: " << out_path << "\n";
    return kExitConfig;
  }
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  return f.good() ? kExitOk : kExitConfig;
}

const char* mode_label(const PairSolution& sol, SolveMode requested) {
  if (requested == SolveMode::NOMA) return "noma";
  return sol.mode == DuplexMode::HD ? "hd" : "fd";
}

int run_solve_pair(const CommonOpts& o) {
  const PairProblem p = pair_from_config(load_map(o));
  const PairSolution sol =
      solve_pair_policy(p.ch, p.p_bs, p.p_d_max, p.qos, p.mode, p.relay_power);
  std::string out;
  out += "feasible = ";
  out += sol.feasible ? '1' : '0';
  out += '\n';
  if (sol.feasible) {
    out += std::string("mode = ") + mode_label(sol, p.mode) + "\n";
    out += "alpha = " + format_sig9(sol.decision.alpha) + "\n";
    out += "p_d = " + format_sig9(sol.decision.p_d) + "\n";
    out += "r_strong = " + format_sig9(sol.rates.r_strong) + "\n";
    out += "r_weak = " + format_sig9(sol.rates.r_weak) + "\n";
    out += "sum_rate = " + format_sig9(sol.sum_rate) + "\n";
  }
  const int rc = write_output(o.out_path, out);
  if (rc != kExitOk) return rc;
  return sol.feasible ? kExitOk : kExitInfeasible;
}

int run_solve_network(const CommonOpts& o) {
  const NetworkProblem np = network_from_config(load_map(o));
  const Scenario& sc = np.scenario;
  const NetworkRealization net =
      np.user_gains.empty()
          ? sample_network(sc.stats, sc.k, o.seed, 0)
          : realization_from_gains(np.user_gains, sc.stats, o.seed, 0);
  SystemConfig cfg;
  cfg.p_bs = sc.p_bs;
  cfg.p_d_max = sc.p_d_max;
  cfg.qos = sc.qos;
  cfg.mode = sc.mode;
  cfg.relay_power = sc.relay_power;
  const NetworkSolution sol = solve_network(net, cfg, o.threads);

  std::string out = "# total_rate = " + format_sig9(sol.assignment.total_rate) + "\n";
  out += "strong,weak,mode,alpha,p_d,r_strong,r_weak,sum_rate\n";
  for (int m = 0; m < net.k; ++m) {
    const int n = sol.assignment.pairing[static_cast<std::size_t>(m)];
    const PairSolution& ps = sol.pair_solutions[static_cast<std::size_t>(m)];
    out += std::to_string(m) + ',' + std::to_string(n) + ',';
    out += (n < net.virtual_users) ? "single" : mode_label(ps, sc.mode);
    out += ',' + format_sig9(ps.decision.alpha) + ',' +
           format_sig9(ps.decision.p_d) + ',' + format_sig9(ps.rates.r_strong) +
           ',' + format_sig9(ps.rates.r_weak) + ',' + format_sig9(ps.sum_rate) +
           '\n';
  }
  return write_output(o.out_path, out);
}

int run_sweep(const CommonOpts& o) {
  const Scenario sc = scenario_from_config(load_map(o));
  const SweepResult res = run_scenario(sc, o.seed, o.threads);
  return write_output(o.out_path, sweep_to_csv(res));
}

int run_verify(const CommonOpts& o) {
  VerifyRun run = verify_from_config(load_map(o));
  run.spec.seed = o.seed;
  std::string out;
  bool all_pass = true;
  for (SolveMode mode : {SolveMode::HD, SolveMode::FD}) {
    if (mode == SolveMode::HD && !run.run_hd) continue;
    if (mode == SolveMode::FD && !run.run_fd) continue;
    VerifySpec spec = run.spec;
    spec.mode = mode;
    const VerifyReport rep = verify_against_grid(spec);
    out += rep.detail + (rep.pass ? "  [ok]\n" : "  [FAILED]\n");
    all_pass = all_pass && rep.pass;
  }
  out += all_pass ? "verify: PASS\n" : "verify: FAIL\n";
  const int rc = write_output(o.out_path, out);
  if (rc != kExitOk) return rc;
  return all_pass ? kExitOk : kExitVerifyFailed;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int run_bench(const CommonOpts& o) {
  const BenchRun run = bench_from_config(load_map(o));
  const Scenario& sc = run.scenario;
  SystemConfig cfg;
  cfg.p_bs = sc.p_bs;
  cfg.p_d_max = sc.p_d_max;
  cfg.qos = sc.qos;
  cfg.mode = sc.mode;
  cfg.relay_power = sc.relay_power;

  std::string out = "k,fill_ms,hungarian_ms,total_ms\n";
  for (int k : run.k_values) {
    // Find a realization whose cost matrix admits a perfect matching.
    NetworkRealization net;
    bool solvable = false;
    for (std::uint64_t attempt = 0; attempt < 20 && !solvable; ++attempt) {
      net = sample_network(sc.stats, k, o.seed, attempt);
      try {
        hungarian(build_cost_matrix(net, cfg, o.threads));
        solvable = true;
      } catch (const InfeasibleNetworkError&) {
      }
    }
    if (!solvable) {
      std::cerr << "error: no feasible network found for k = " << k << "\n";
      return kExitInfeasible;
    }
    std::vector<double> fill_ms, hung_ms, total_ms;
    for (int rep = 0; rep < run.reps; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const CostMatrix cost = build_cost_matrix(net, cfg, o.threads);
      const auto t1 = std::chrono::steady_clock::now();
      const Assignment a = hungarian(cost);
      const auto t2 = std::chrono::steady_clock::now();
      (void)a;
      fill_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      hung_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
      total_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t0).count());
    }
    out += std::to_string(k) + ',' + format_sig9(median_of(fill_ms)) + ',' +
           format_sig9(median_of(hung_ms)) + ',' +
           format_sig9(median_of(total_ms)) + '\n';
  }
  return write_output(o.out_path, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint user pairing and power control for cooperative-NOMA cells"};
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* sub_pair =
      app.add_subcommand("solve-pair", "solve one pair's power control");
  CLI::App* sub_net =
      app.add_subcommand("solve-network", "pair and solve one sampled cell");
  CLI::App* sub_sweep =
      app.add_subcommand("sweep", "Monte-Carlo sweep over a parameter axis");
  CLI::App* sub_verify =
      app.add_subcommand("verify", "cross-check solver against the grid oracle");
  CLI::App* sub_bench =
      app.add_subcommand("bench", "time cost-matrix fill and matching");
  for (CLI::App* sub : {sub_pair, sub_net, sub_sweep, sub_verify, sub_bench}) {
    add_common(sub, opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand(sub_pair)) return run_solve_pair(opts);
    if (app.got_subcommand(sub_net)) return run_solve_network(opts);
    if (app.got_subcommand(sub_sweep)) return run_sweep(opts);
    if (app.got_subcommand(sub_verify)) return run_verify(opts);
    if (app.got_subcommand(sub_bench)) return run_bench(opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ScenarioError& e) {
    std::cerr << "infeasible scenario: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InfeasibleNetworkError& e) {
    std::cerr << "infeasible network: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
