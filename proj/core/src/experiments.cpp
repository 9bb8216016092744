#include "cnoma/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

namespace cnoma {

namespace {

struct AxisResolved {
  ChannelStats stats;
  double p_bs;
  double p_d_max;
};

AxisResolved resolve_axis(const Scenario& sc, std::size_t axis_index) {
  AxisResolved r{sc.stats, sc.p_bs, sc.p_d_max};
  const double v = sc.axis_values.at(axis_index);
  switch (sc.axis) {
    case SweepAxis::PBs:
      r.p_bs = v;
      break;
    case SweepAxis::PdMax:
      r.p_d_max = v;
      break;
    case SweepAxis::LambdaS:
      r.stats.lambda_s = v;
      break;
    case SweepAxis::LambdaW:
      r.stats.lambda_w = v;
      break;
    case SweepAxis::LambdaD:
      r.stats.lambda_d = v;
      break;
    case SweepAxis::LambdaSi:
      r.stats.lambda_si = v;
      break;
  }
  return r;
}

const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::PBs:
      return "p_bs";
    case SweepAxis::PdMax:
      return "p_d_max";
    case SweepAxis::LambdaS:
      return "lambda_s";
    case SweepAxis::LambdaW:
      return "lambda_w";
    case SweepAxis::LambdaD:
      return "lambda_d";
    case SweepAxis::LambdaSi:
      return "lambda_si";
  }
  return "?";
}

void validate_scenario(const Scenario& sc) {
  if (sc.k < 1) throw std::invalid_argument("run_scenario: k must be >= 1");
  if (sc.trials < 1) throw std::invalid_argument("run_scenario: trials must be >= 1");
  if (sc.axis_values.empty())
    throw std::invalid_argument("run_scenario: axis_values must be non-empty");
  if (sc.axis_display.size() != sc.axis_values.size())
    throw std::invalid_argument("run_scenario: axis_display length must match axis_values");
  for (double v : sc.axis_values)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("run_scenario: axis values must be finite and >= 0");
}

}  // namespace

std::vector<int> baseline_pairing(PairingPolicy kind, int k, std::uint64_t seed,
                                  std::uint64_t trial) {
  if (k < 1) throw std::invalid_argument("baseline_pairing: k must be >= 1");
  std::vector<int> perm(static_cast<std::size_t>(k));
  switch (kind) {
    case PairingPolicy::Baseline1:
      // Strongest strong user serves the weakest weak user.
      for (int m = 0; m < k; ++m) perm[static_cast<std::size_t>(m)] = k - 1 - m;
      break;
    case PairingPolicy::Baseline2:
      // Rank-aligned halves.
      for (int m = 0; m < k; ++m) perm[static_cast<std::size_t>(m)] = m;
      break;
    case PairingPolicy::Random: {
      for (int m = 0; m < k; ++m) perm[static_cast<std::size_t>(m)] = m;
      RandomStream rs(seed, trial, streams::kPairing);
      std::uint64_t draw = 0;
      for (int i = k - 1; i >= 1; --i) {
        const double u = rs.u01(draw++);
        int j = static_cast<int>(u * static_cast<double>(i + 1));
        if (j > i) j = i;
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      }
      break;
    }
    case PairingPolicy::Hungarian:
      throw std::invalid_argument("baseline_pairing: Hungarian is not a baseline policy");
  }
  return perm;
}

TrialOutcome run_trial(const Scenario& sc, std::size_t axis_index, std::uint64_t seed,
                       std::uint64_t trial) {
  const AxisResolved ax = resolve_axis(sc, axis_index);
  const NetworkRealization net = sample_network(ax.stats, sc.k, seed, trial);
  SystemConfig cfg;
  cfg.p_bs = ax.p_bs;
  cfg.p_d_max = ax.p_d_max;
  cfg.qos = sc.qos;
  cfg.mode = sc.mode;
  cfg.relay_power = sc.relay_power;

  if (sc.pairing == PairingPolicy::Hungarian) {
    try {
      const NetworkSolution sol = solve_network(net, cfg);
      return {true, sol.assignment.total_rate};
    } catch (const InfeasibleNetworkError&) {
      return {false, 0.0};
    }
  }

  const std::vector<int> perm = baseline_pairing(sc.pairing, net.k, seed, trial);
  double total = 0.0;
  for (int m = 0; m < net.k; ++m) {
    const PairSolution ps =
        solve_network_pair(net, cfg, m, perm[static_cast<std::size_t>(m)]);
    if (!ps.feasible) return {false, 0.0};
    total += ps.sum_rate;
  }
  return {true, total};
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

SweepResult run_scenario(const Scenario& sc, std::uint64_t seed, int threads) {
  validate_scenario(sc);
  if (threads < 1) threads = 1;

  SweepResult out;
  out.trials = sc.trials;
  out.axis = sc.axis_display;

  const std::size_t trials = static_cast<std::size_t>(sc.trials);
  std::vector<double> totals(trials);
  std::vector<unsigned char> ok(trials);
  std::vector<double> packed;
  packed.reserve(trials);

  for (std::size_t a = 0; a < sc.axis_values.size(); ++a) {
    auto worker = [&](std::size_t begin, std::size_t end, std::exception_ptr& err) {
      try {
        for (std::size_t t = begin; t < end; ++t) {
          const TrialOutcome o = run_trial(sc, a, seed, static_cast<std::uint64_t>(t));
          totals[t] = o.total;
          ok[t] = o.feasible ? 1 : 0;
        }
      } catch (...) {
        err = std::current_exception();
      }
    };

    const std::size_t nworkers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), trials);
    if (nworkers <= 1) {
      std::exception_ptr err;
      worker(0, trials, err);
      if (err) std::rethrow_exception(err);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errs(nworkers);
      const std::size_t chunk = (trials + nworkers - 1) / nworkers;
      for (std::size_t w = 0; w < nworkers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(trials, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(worker, begin, end, std::ref(errs[w]));
      }
      for (auto& th : pool) th.join();
      for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
    }

    packed.clear();
    for (std::size_t t = 0; t < trials; ++t)
      if (ok[t]) packed.push_back(totals[t]);

    const std::size_t n = packed.size();
    if (n == 0) {
      throw ScenarioError("all " + std::to_string(sc.trials) +
                          " trials infeasible at " + axis_name(sc.axis) + " = " +
                          format_sig9(sc.axis_display[a]));
    }
    const double mean = pairwise_sum(packed.data(), n) / static_cast<double>(n);
    double se = 0.0;
    if (n > 1) {
      for (double& v : packed) {
        const double d = v - mean;
        v = d * d;
      }
      const double var =
          pairwise_sum(packed.data(), n) / static_cast<double>(n - 1);
      se = std::sqrt(var / static_cast<double>(n));
    }
    out.mean_sum_rate.push_back(mean);
    out.std_error.push_back(se);
    out.infeasible.push_back(static_cast<std::int64_t>(trials - n));
    out.mean_per_pair.push_back(mean / static_cast<double>(sc.k));
  }
  return out;
}

std::string format_sig9(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::string sweep_to_csv(const SweepResult& r) {
  std::string out =
      "axis,mean_sum_rate,stderr,infeasible_frac,trials,mean_sum_rate_per_pair\n";
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    out += format_sig9(r.axis[i]);
    out += ',';
    out += format_sig9(r.mean_sum_rate[i]);
    out += ',';
    out += format_sig9(r.std_error[i]);
    out += ',';
    const double frac =
        r.trials > 0 ? static_cast<double>(r.infeasible[i]) / static_cast<double>(r.trials)
                     : 0.0;
    out += format_sig9(frac);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += format_sig9(r.mean_per_pair[i]);
    out += '\n';
  }
  return out;
}

}  // namespace cnoma
