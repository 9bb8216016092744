#include "cnoma/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "cnoma/rates.hpp"

namespace cnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maximum bipartite matching over finite entries (Kuhn's augmenting paths);
// used only to produce a precise unmatched-row diagnostic when the
// shortest-path matcher detects infeasibility.
std::vector<int> unmatched_rows_of(const CostMatrix& cost) {
  const int k = cost.k;
  std::vector<int> match_col(k, -1);  // column -> row
  std::vector<char> visited(k);
  std::vector<char> row_matched(k, 0);

  auto augment = [&](auto&& self, int row) -> bool {
    for (int j = 0; j < k; ++j) {
      if (visited[j] || cost.at(row, j) == kInf) continue;
      visited[j] = 1;
      if (match_col[j] < 0 || self(self, match_col[j])) {
        match_col[j] = row;
        return true;
      }
    }
    return false;
  };

  for (int i = 0; i < k; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    row_matched[i] = augment(augment, i) ? 1 : 0;
  }
  // Re-derive saturation from the final matching (earlier rows may have been
  // displaced and re-augmented).
  std::fill(row_matched.begin(), row_matched.end(), 0);
  for (int j = 0; j < k; ++j) {
    if (match_col[j] >= 0) row_matched[match_col[j]] = 1;
  }
  std::vector<int> unmatched;
  for (int i = 0; i < k; ++i) {
    if (!row_matched[i]) unmatched.push_back(i);
  }
  return unmatched;
}

}  // namespace

std::string InfeasibleNetworkError::describe(const std::vector<int>& rows) {
  std::ostringstream os;
  os << "infeasible network: no feasible partner for strong-user row";
  if (rows.size() > 1) os << 's';
  for (int r : rows) os << ' ' << r;
  return os.str();
}

Assignment hungarian(const CostMatrix& cost) {
  const int k = cost.k;
  if (k < 1) throw std::invalid_argument("hungarian: empty cost matrix");
  if (cost.entries.size() != static_cast<std::size_t>(k) * k) {
    throw std::invalid_argument("hungarian: matrix size mismatch");
  }
  // Shortest augmenting paths with dual potentials, one extra 0 slot as the
  // virtual start column.  +inf entries are skipped naturally: their reduced
  // cost stays +inf and can never become the minimum on a usable path.
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<int> match(k + 1, 0);  // column -> row (1-based; 0 = free)
  std::vector<int> way(k + 1, 0);

  for (int i = 1; i <= k; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> min_v(k + 1, kInf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_v[j]) {
          min_v[j] = cur;
          way[j] = j0;
        }
        if (min_v[j] < delta) {
          delta = min_v[j];
          j1 = j;
        }
      }
      if (j1 < 0 || delta == kInf) {
        throw InfeasibleNetworkError(unmatched_rows_of(cost));
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_v[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment out;
  out.pairing.assign(k, -1);
  for (int j = 1; j <= k; ++j) out.pairing[match[j] - 1] = j - 1;
  double total_cost = 0.0;
  for (int m = 0; m < k; ++m) total_cost += cost.at(m, out.pairing[m]);
  out.total_rate = -total_cost;
  return out;
}

PairSolution solve_pair_policy(const PairChannels& ch, double p_bs,
                               double p_d_max, const QosSpec& qos,
                               SolveMode mode, RelayPolicy relay) {
  switch (mode) {
    case SolveMode::HD:
      return relay == RelayPolicy::Fixed
                 ? fixed_power_optimal(ch, p_bs, p_d_max, qos, DuplexMode::HD)
                 : hd_optimal(ch, p_bs, p_d_max, qos);
    case SolveMode::FD:
      return relay == RelayPolicy::Fixed
                 ? fixed_power_optimal(ch, p_bs, p_d_max, qos, DuplexMode::FD)
                 : fd_optimal(ch, p_bs, p_d_max, qos);
    case SolveMode::ModeSelect:
      return relay == RelayPolicy::Fixed
                 ? mode_select_fixed(ch, p_bs, p_d_max, qos)
                 : mode_select(ch, p_bs, p_d_max, qos);
    case SolveMode::NOMA:
      return noma_optimal(ch, p_bs, qos);
  }
  throw std::logic_error("solve_pair_policy: unknown mode");
}

PairSolution solve_network_pair(const NetworkRealization& net,
                                const SystemConfig& cfg, int m, int n) {
  const int k = net.k;
  const double g_strong = net.g[static_cast<std::size_t>(k) + m];
  const double g_weak = net.g[n];
  if (n < net.virtual_users) {
    // Pair with a zero-gain padding user: the strong user transmits to itself
    // on the full band with no relaying; only its own QoS applies.
    PairSolution sol;
    sol.mode = DuplexMode::FD;
    const double rate = rate_from_sinr(cfg.p_bs * g_strong);
    if (rate >= cfg.qos.r_th) {
      sol.feasible = true;
      sol.decision = {0.0, 0.0};
      sol.rates = {rate, 0.0};
      sol.sum_rate = rate;
    }
    return sol;
  }
  const PairChannels ch(g_strong, g_weak, net.d2d(m, n), net.s[m]);
  return solve_pair_policy(ch, cfg.p_bs, cfg.p_d_max, cfg.qos, cfg.mode,
                           cfg.relay_power);
}

CostMatrix build_cost_matrix(const NetworkRealization& net,
                             const SystemConfig& cfg, int threads) {
  const int k = net.k;
  CostMatrix cost(k);
  auto fill_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t cell = begin; cell < end; ++cell) {
      const int m = static_cast<int>(cell / k);
      const int n = static_cast<int>(cell % k);
      const PairSolution sol = solve_network_pair(net, cfg, m, n);
      cost.entries[cell] = sol.feasible ? -sol.sum_rate : kInf;
    }
  };
  const std::size_t cells = cost.entries.size();
  const int n_workers =
      std::max(1, std::min<int>(threads, static_cast<int>(cells)));
  if (n_workers == 1) {
    fill_range(0, cells);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    const std::size_t chunk = (cells + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(cells, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(fill_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return cost;
}

NetworkSolution solve_network(const NetworkRealization& net,
                              const SystemConfig& cfg, int threads) {
  NetworkSolution out;
  const CostMatrix cost = build_cost_matrix(net, cfg, threads);
  out.assignment = hungarian(cost);
  const int k = net.k;
  out.pair_solutions.resize(k);
  for (int m = 0; m < k; ++m) {
    out.pair_solutions[m] = solve_network_pair(net, cfg, m, out.assignment.pairing[m]);
  }
  return out;
}

}  // namespace cnoma
