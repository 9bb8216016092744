#include "cnoma/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "cnoma/channel.hpp"
#include "cnoma/rates.hpp"

namespace cnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double reldist(double x, double y) {
  const double scale = std::max({std::fabs(x), std::fabs(y), 1e-300});
  return std::fabs(x - y) / scale;
}

}  // namespace

PairInstance draw_pair_instance(std::uint64_t seed, std::uint64_t index) {
  RandomStream rs(seed, index, streams::kGeneric);
  const auto gain_db = [&](std::uint64_t i) {
    return db_to_linear(-20.0 + 40.0 * rs.u01(i));
  };
  PairInstance inst;
  inst.ch = PairChannels(gain_db(0), gain_db(1), gain_db(2), gain_db(3));
  inst.p_bs = db_to_linear(50.0 * rs.u01(4));
  inst.p_d_max = db_to_linear(40.0 * rs.u01(5));
  static constexpr double kRth[3] = {0.5, 1.0, 2.0};
  int pick = static_cast<int>(rs.u01(6) * 3.0);
  if (pick > 2) pick = 2;
  inst.qos = QosSpec::from_rate(kRth[pick]);
  return inst;
}

double qos_shortfall(const PairChannels& ch, const PowerDecision& d, double p_bs,
                     const QosSpec& qos, SolveMode mode) {
  RatePair r;
  switch (mode) {
    case SolveMode::HD:
      r = hd_rates(ch, d, p_bs);
      break;
    case SolveMode::FD:
      r = fd_rates(ch, d, p_bs);
      break;
    case SolveMode::NOMA:
      r = noma_rates(ch, d.alpha, p_bs);
      break;
    case SolveMode::ModeSelect:
      throw std::invalid_argument("qos_shortfall: resolve ModeSelect to HD/FD first");
  }
  return std::max(0.0, qos.r_th - std::min(r.r_strong, r.r_weak));
}

double feasibility_boundary_distance(const PairChannels& ch, double p_bs,
                                     double p_d_max, const QosSpec& qos,
                                     SolveMode mode) {
  const double delta = (mode == SolveMode::HD) ? qos.delta_h : qos.delta_f;
  if (delta <= 0.0) return kInf;
  const double bs_need = delta * delta + 2.0 * delta;
  double dist = reldist(p_bs * ch.gamma_m, bs_need);

  if (mode == SolveMode::HD) {
    const HdFeasibility hf = hd_feasible(ch, p_bs, p_d_max, qos);
    if (std::isfinite(hf.p_min) && hf.p_min > 0.0)
      dist = std::min(dist, reldist(p_d_max, hf.p_min));
    return dist;
  }

  const FdFeasParams fp = fd_feas_params(ch, p_bs, qos);
  const double gs = ch.gamma_si;
  double x_cap = p_d_max;
  if (gs > 0.0 && p_bs * ch.gamma_m > bs_need) {
    x_cap = std::min(
        x_cap, (p_bs * ch.gamma_m - bs_need) / (delta * gs * (delta + 2.0)));
  }
  if (fp.b3) {
    dist = std::min(dist, reldist(p_d_max, *fp.b3));
    dist = std::min(dist, reldist(x_cap, *fp.b3));
  }
  if (fp.b1) {
    dist = std::min(dist, std::fabs(*fp.b1) /
                              std::max({std::fabs(*fp.b1), p_d_max, 1.0}));
    if (ch.gamma_d > 0.0)
      dist = std::min(dist, reldist(ch.gamma_d * *fp.b1, delta));
  }
  // Near-degenerate discriminant of the band quadratic.
  {
    const double gm = ch.gamma_m, gn = ch.gamma_n, gd = ch.gamma_d;
    const double b =
        gm * gd + gn * gd * delta - gn * gs * delta * (delta + 1.0);
    const double a = gn * gd * gs * delta;
    const double c = p_bs * gm * gn - gm * delta - gn * delta * (delta + 1.0);
    const double scale = std::max(b * b, std::fabs(4.0 * a * c));
    if (scale > 0.0) dist = std::min(dist, std::fabs(fp.delta1) / scale);
  }
  return dist;
}

VerifyReport verify_against_grid(const VerifySpec& spec) {
  if (spec.instances < 1)
    throw std::invalid_argument("verify_against_grid: instances must be >= 1");
  if (spec.mode != SolveMode::HD && spec.mode != SolveMode::FD)
    throw std::invalid_argument("verify_against_grid: mode must be HD or FD");
  const DuplexMode dmode =
      (spec.mode == SolveMode::HD) ? DuplexMode::HD : DuplexMode::FD;

  VerifyReport rep;
  rep.instances = spec.instances;
  int worst_gap_index = -1;
  int first_unexcused = -1;

  for (int i = 0; i < spec.instances; ++i) {
    const PairInstance in =
        draw_pair_instance(spec.seed, static_cast<std::uint64_t>(i));
    const bool flag_closed =
        (spec.mode == SolveMode::HD)
            ? hd_feasible(in.ch, in.p_bs, in.p_d_max, in.qos).feasible
            : fd_feasible(in.ch, in.p_bs, in.p_d_max, in.qos).feasible;
    const PairSolution sol =
        (spec.mode == SolveMode::HD)
            ? hd_optimal(in.ch, in.p_bs, in.p_d_max, in.qos)
            : fd_optimal(in.ch, in.p_bs, in.p_d_max, in.qos);
    const PairSolution grid =
        grid_optimal(in.ch, in.p_bs, in.p_d_max, in.qos, dmode, spec.grid);

    if (flag_closed) ++rep.closed_feasible;
    if (grid.feasible) ++rep.grid_feasible;

    if (flag_closed != grid.feasible || sol.feasible != grid.feasible) {
      ++rep.flips;
      const double bd = feasibility_boundary_distance(in.ch, in.p_bs,
                                                      in.p_d_max, in.qos,
                                                      spec.mode);
      if (!(bd < spec.boundary_tol)) {
        ++rep.unexcused_flips;
        if (first_unexcused < 0) first_unexcused = i;
      }
    }
    if (sol.feasible && grid.feasible) {
      ++rep.both_feasible;
      const double gap = std::fabs(sol.sum_rate - grid.sum_rate);
      if (gap > rep.max_abs_gap) {
        rep.max_abs_gap = gap;
        worst_gap_index = i;
      }
      if (gap > spec.sum_tol) ++rep.gap_failures;
    }
    if (sol.feasible)
      rep.max_qos_violation =
          std::max(rep.max_qos_violation,
                   qos_shortfall(in.ch, sol.decision, in.p_bs, in.qos, spec.mode));
    if (grid.feasible)
      rep.max_qos_violation =
          std::max(rep.max_qos_violation,
                   qos_shortfall(in.ch, grid.decision, in.p_bs, in.qos, spec.mode));
  }

  const double flip_frac =
      static_cast<double>(rep.flips) / static_cast<double>(rep.instances);
  rep.pass = rep.gap_failures == 0 && rep.unexcused_flips == 0 &&
             flip_frac <= spec.max_flip_frac;

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "mode=%s instances=%d both_feasible=%d max_gap=%.3g "
                "flips=%d unexcused=%d worst_gap_at=%d first_unexcused=%d "
                "max_qos_shortfall=%.3g",
                spec.mode == SolveMode::HD ? "hd" : "fd", rep.instances,
                rep.both_feasible, rep.max_abs_gap, rep.flips,
                rep.unexcused_flips, worst_gap_index, first_unexcused,
                rep.max_qos_violation);
  rep.detail = buf;
  return rep;
}

}  // namespace cnoma
