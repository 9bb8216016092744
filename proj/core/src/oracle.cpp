#include "cnoma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cnoma/rates.hpp"

namespace cnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// Mixed node placement over [lo, hi]: half the budget linear, a quarter
// log-spaced hugging each end (relative floor 1e-13), endpoints always
// included.  Captures optima both at interior points and extremely close to
// the box edges.
std::vector<double> mixed_nodes(double lo, double hi, int n) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n) + 4);
  const int n_lin = std::max(n / 2, 2);
  for (int i = 0; i < n_lin; ++i) {
    v.push_back(lo + span * (double(i) / double(n_lin - 1)));
  }
  const int n_log = std::max(n / 4, 2);
  for (int i = 0; i < n_log; ++i) {
    const double e = -13.0 + 13.0 * double(i) / double(n_log - 1);
    const double off = span * std::pow(10.0, e);
    v.push_back(lo + off);
    v.push_back(hi - off);
  }
  v.push_back(lo);
  v.push_back(hi);
  for (double& x : v) x = std::clamp(x, lo, hi);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Per-column geometry at fixed relay power p, for the unified SINR model.
struct Column {
  bool has_window = false;
  double a_min = 0.0, a_max = 0.0;
  double gap = -1.0;  // signed alpha-window width (negative when empty)
};

struct Geometry {
  const PairChannels& ch;
  double p_bs;
  double gs;     // effective self-interference
  double delta;  // SINR threshold
  double pref;   // rate prefactor

  // min(Sm, W) - delta: nondecreasing in alpha.
  double weak_slack(double alpha, double p) const {
    const SinrTriple s = pair_sinrs(ch, alpha, p, p_bs, gs);
    return std::min(s.strong_decode, s.weak_combined) - delta;
  }
  // T - delta: nonincreasing in alpha.
  double strong_slack(double alpha, double p) const {
    const SinrTriple s = pair_sinrs(ch, alpha, p, p_bs, gs);
    return s.strong_own - delta;
  }
  double metric(double alpha, double p) const {
    const SinrTriple s = pair_sinrs(ch, alpha, p, p_bs, gs);
    return (1.0 + s.strong_own) *
           (1.0 + std::min(s.strong_decode, s.weak_combined));
  }
  double w_minus_sm(double alpha, double p) const {
    const SinrTriple s = pair_sinrs(ch, alpha, p, p_bs, gs);
    return s.weak_combined - s.strong_decode;
  }
};

// Exact feasible alpha-window of a column via bisection on the two monotone
// constraint slacks.
Column column_bounds(const Geometry& g, double p, int iters) {
  Column col;
  if (g.weak_slack(1.0, p) < 0.0 || g.strong_slack(0.0, p) < 0.0) return col;
  double a_min = 0.0;
  if (g.weak_slack(0.0, p) < 0.0) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < iters; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g.weak_slack(mid, p) >= 0.0 ? hi : lo) = mid;
    }
    a_min = hi;
  }
  double a_max = 1.0;
  if (g.strong_slack(1.0, p) < 0.0) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < iters; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g.strong_slack(mid, p) >= 0.0 ? lo : hi) = mid;
    }
    a_max = lo;
  }
  col.gap = a_max - a_min;
  if (a_min <= a_max) {
    col.has_window = true;
    col.a_min = a_min;
    col.a_max = a_max;
  }
  return col;
}

struct ColBest {
  bool feasible = false;
  double metric = -1.0;
  double alpha = 0.0;
};

void consider(ColBest& best, const Geometry& g, double alpha, double p) {
  if (g.weak_slack(alpha, p) < 0.0 || g.strong_slack(alpha, p) < 0.0) return;
  const double m = g.metric(alpha, p);
  if (!best.feasible || m > best.metric ||
      (m == best.metric && alpha < best.alpha)) {
    best = {true, m, alpha};
  }
}

// Best point of one column: window endpoints, the crossing of the two weak
// SINR branches, and `interior` evenly spaced inner nodes.
ColBest column_best(const Geometry& g, double p, int interior, int iters = 80) {
  ColBest best;
  const Column col = column_bounds(g, p, iters);
  if (!col.has_window) return best;
  consider(best, g, col.a_min, p);
  consider(best, g, col.a_max, p);
  const bool s_lo = g.w_minus_sm(col.a_min, p) > 0.0;
  const bool s_hi = g.w_minus_sm(col.a_max, p) > 0.0;
  if (s_lo != s_hi) {
    double lo = col.a_min, hi = col.a_max;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((g.w_minus_sm(mid, p) > 0.0) == s_lo ? lo : hi) = mid;
    }
    consider(best, g, 0.5 * (lo + hi), p);
  }
  for (int i = 0; i < interior; ++i) {
    const double a =
        col.a_min + (col.a_max - col.a_min) * double(i + 1) / double(interior + 1);
    consider(best, g, a, p);
  }
  return best;
}

// Golden-section maximization over [x1, x4].
double golden_max(const std::function<double(double)>& f, double x1, double x4,
                  int iters = 70) {
  double x2 = x4 - kGolden * (x4 - x1);
  double x3 = x1 + kGolden * (x4 - x1);
  double f2 = f(x2), f3 = f(x3);
  for (int i = 0; i < iters; ++i) {
    if (f2 >= f3) {
      x4 = x3;
      x3 = x2;
      f3 = f2;
      x2 = x4 - kGolden * (x4 - x1);
      f2 = f(x2);
    } else {
      x1 = x2;
      x2 = x3;
      f2 = f3;
      x3 = x1 + kGolden * (x4 - x1);
      f3 = f(x3);
    }
  }
  return 0.5 * (x2 + x3);
}

struct Incumbent {
  bool feasible = false;
  double metric = -1.0;
  double alpha = 0.0, p = 0.0;
};

void promote(Incumbent& best, const ColBest& col, double p) {
  if (!col.feasible) return;
  if (!best.feasible || col.metric > best.metric ||
      (col.metric == best.metric &&
       (col.alpha < best.alpha || (col.alpha == best.alpha && p < best.p)))) {
    best = {true, col.metric, col.alpha, p};
  }
}

}  // namespace

PairSolution grid_optimal(const PairChannels& ch, double p_bs, double p_d_max,
                          const QosSpec& qos, DuplexMode mode,
                          const GridSpec& spec) {
  if (spec.alpha_points < 2 || spec.pd_points < 2 || spec.refine_rounds < 0 ||
      !(spec.refine_shrink > 0.0 && spec.refine_shrink < 1.0)) {
    throw std::invalid_argument("grid_optimal: invalid GridSpec");
  }
  const double delta = (mode == DuplexMode::HD) ? qos.delta_h : qos.delta_f;
  const double gs = (mode == DuplexMode::HD) ? 0.0 : ch.gamma_si;
  const double pref = (mode == DuplexMode::HD) ? 0.5 : 1.0;
  const Geometry g{ch, p_bs, gs, delta, pref};

  auto make_solution = [&](double alpha, double p) {
    PairSolution sol;
    sol.mode = mode;
    sol.feasible = true;
    sol.decision = {alpha, p};
    sol.rates = (mode == DuplexMode::HD) ? hd_rates(ch, sol.decision, p_bs)
                                         : fd_rates(ch, sol.decision, p_bs);
    sol.sum_rate = sol.rates.sum();
    return sol;
  };

  if (delta <= 0.0) return make_solution(0.0, 0.0);

  // ---- base scan ----
  const std::vector<double> p_nodes = mixed_nodes(0.0, p_d_max, spec.pd_points);
  const std::vector<double> a_template = mixed_nodes(0.0, 1.0, spec.alpha_points);
  const std::size_t n_cols = p_nodes.size();

  std::vector<Column> cols(n_cols);
  std::vector<double> col_metric(n_cols, -kInf);
  Incumbent best;
  for (std::size_t i = 0; i < n_cols; ++i) {
    cols[i] = column_bounds(g, p_nodes[i], 80);
    if (!cols[i].has_window) continue;
    ColBest cb = column_best(g, p_nodes[i], 9);
    if (cb.feasible) col_metric[i] = cb.metric;
    promote(best, cb, p_nodes[i]);
  }

  // ---- no feasible column: polish the widest near-feasibility brackets
  // before declaring infeasibility ----
  if (!best.feasible) {
    std::vector<std::size_t> order(n_cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cols[a].gap > cols[b].gap;
    });
    auto gap_at = [&](double p) { return column_bounds(g, p, 60).gap; };
    const std::size_t tries = std::min<std::size_t>(8, n_cols);
    for (std::size_t t = 0; t < tries; ++t) {
      const std::size_t idx = order[t];
      const double lo = p_nodes[idx == 0 ? 0 : idx - 1];
      const double hi = p_nodes[std::min(idx + 1, n_cols - 1)];
      if (!(hi > lo)) continue;
      const bool use_log = lo > 0.0 && hi / lo > 1.2;
      std::function<double(double)> f =
          use_log ? std::function<double(double)>(
                        [&](double x) { return gap_at(std::exp(x)); })
                  : std::function<double(double)>(gap_at);
      const double xb = use_log ? golden_max(f, std::log(lo), std::log(hi))
                                : golden_max(f, lo, hi);
      const double pb = use_log ? std::exp(xb) : xb;
      if (column_bounds(g, pb, 80).gap >= 0.0) {
        ColBest cb = column_best(g, pb, 17);
        if (cb.feasible) return make_solution(cb.alpha, pb);
      }
    }
    PairSolution sol;
    sol.mode = mode;
    return sol;
  }

  // ---- literal grid pass over the alpha-template, pruned by each column's
  // attainable-metric upper bound (T max at a_min, weak SINR max at a_max) ----
  for (std::size_t i = 0; i < n_cols; ++i) {
    if (!cols[i].has_window) continue;
    const double p = p_nodes[i];
    const SinrTriple s_lo = pair_sinrs(ch, cols[i].a_min, p, p_bs, gs);
    const SinrTriple s_hi = pair_sinrs(ch, cols[i].a_max, p, p_bs, gs);
    const double ub = (1.0 + s_lo.strong_own) *
                      (1.0 + std::min(s_hi.strong_decode, s_hi.weak_combined));
    if (ub <= best.metric) continue;
    const auto first = std::lower_bound(a_template.begin(), a_template.end(),
                                        cols[i].a_min);
    const auto last =
        std::upper_bound(a_template.begin(), a_template.end(), cols[i].a_max);
    ColBest cb;
    for (auto it = first; it != last; ++it) {
      const double m = g.metric(*it, p);
      if (!cb.feasible || m > cb.metric || (m == cb.metric && *it < cb.alpha)) {
        cb = {true, m, *it};
      }
    }
    promote(best, cb, p);
  }

  // ---- local refinement ----
  double shrink = spec.refine_shrink;
  const int n_refine = std::max(65, spec.pd_points / 8);
  for (int round = 0; round < spec.refine_rounds; ++round) {
    const double w = p_d_max * shrink;
    const double lo = std::max(0.0, best.p - w);
    const double hi = std::min(p_d_max, best.p + w);
    for (double p : mixed_nodes(lo, hi, n_refine)) {
      promote(best, column_best(g, p, 9), p);
    }
    shrink *= spec.refine_shrink;
  }

  // ---- golden-section polish along the relay-power axis around every
  // discrete local maximum of the per-column envelope.  A local comparison
  // (vs the two neighboring columns only) finds every basin whose peak falls
  // between nodes, including basins whose sampled values rank below a crowd
  // of near-tied columns from another basin ----
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < n_cols; ++i) {
    if (col_metric[i] == -kInf) continue;
    const double here = col_metric[i];
    const double left = i > 0 ? col_metric[i - 1] : -kInf;
    const double right = i + 1 < n_cols ? col_metric[i + 1] : -kInf;
    if (here >= left && here >= right && (here > left || here > right)) {
      picked.push_back(i);
    }
  }
  std::stable_sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
    return col_metric[a] > col_metric[b];
  });
  if (picked.size() > 24) picked.resize(24);
  auto col_value = [&](double p) {
    const ColBest cb = column_best(g, p, 9);
    return cb.feasible ? cb.metric : -1e18;
  };
  for (std::size_t idx : picked) {
    const double lo = p_nodes[idx == 0 ? 0 : idx - 1];
    const double hi = p_nodes[std::min(idx + 1, n_cols - 1)];
    if (!(hi > lo)) continue;
    const bool use_log = lo > 0.0 && hi / lo > 1.2;
    std::function<double(double)> f =
        use_log
            ? std::function<double(double)>(
                  [&](double x) { return col_value(std::exp(x)); })
            : std::function<double(double)>(col_value);
    const double xb = use_log ? golden_max(f, std::log(lo), std::log(hi))
                              : golden_max(f, lo, hi);
    const double pb = use_log ? std::exp(xb) : xb;
    promote(best, column_best(g, pb, 17), pb);
  }

  // Re-evaluate the winning column densely for the final answer.
  promote(best, column_best(g, best.p, 17), best.p);
  return make_solution(best.alpha, best.p);
}

ExhaustiveResult exhaustive_pairing(const std::vector<double>& rates, int k) {
  if (k < 1) throw std::invalid_argument("exhaustive_pairing: k must be >= 1");
  if (k > 9) {
    throw std::invalid_argument(
        "exhaustive_pairing: refusing k > 9 (factorial blowup)");
  }
  if (rates.size() != static_cast<std::size_t>(k) * k) {
    throw std::invalid_argument("exhaustive_pairing: matrix size mismatch");
  }
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  ExhaustiveResult best;
  do {
    double total = 0.0;
    bool valid = true;
    for (int m = 0; m < k; ++m) {
      const double r = rates[static_cast<std::size_t>(m) * k + perm[m]];
      if (r == -kInf) {
        valid = false;
        break;
      }
      total += r;
    }
    if (valid && (!best.found || total > best.total)) {
      best.found = true;
      best.total = total;
      best.pairing = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace cnoma
