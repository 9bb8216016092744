#include "cnoma/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cnoma/rates.hpp"

namespace cnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Boundary curves of the feasible (alpha, p_d) region, in raw-parameter form.
// delta is the SINR threshold; gs the effective self-interference (0 for HD).
// ---------------------------------------------------------------------------

// Smallest alpha letting the strong user decode the weak message at SINR delta.
double bound_a(double p, double gm, double /*gn*/, double /*gd*/, double gs,
               double P, double delta) {
  return delta * (P * gm + gs * p + 1.0) / (P * gm * (delta + 1.0));
}

// Smallest alpha giving the weak user SINR delta after relay combining.
// Zero once the relay link alone covers the threshold; +inf when the weak
// user has no direct link and the relay cannot cover it.
double bound_b(double p, double /*gm*/, double gn, double gd, double /*gs*/,
               double P, double delta) {
  const double u = gd * p;
  if (u >= delta) return 0.0;
  if (gn == 0.0) return kInf;
  return (P * gn + 1.0) * (delta - u) / (P * gn * (delta + 1.0 - u));
}

// Largest alpha leaving the strong user its own SINR delta.
double bound_c(double p, double gm, double /*gn*/, double /*gd*/, double gs,
               double P, double delta) {
  return 1.0 - delta * (gs * p + 1.0) / (P * gm);
}

// ---------------------------------------------------------------------------
// Small real-root utilities (degree <= 3, ascending coefficients).
// ---------------------------------------------------------------------------

// Numerically stable roots of a x^2 + b x + c, ascending order.
void quad_roots(double a, double b, double c, std::vector<double>& out) {
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) >= 1e-300) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  const double r1 = q / a;
  const double r2 = (q != 0.0) ? c / q : -b / a - r1;
  out.push_back(std::min(r1, r2));
  out.push_back(std::max(r1, r2));
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

double poly_deriv_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) v = v * x + c[i] * double(i);
  return v;
}

// Real roots of an ascending-coefficient polynomial of degree <= 3.
std::vector<double> poly_roots(std::vector<double> c) {
  while (c.size() > 1 && std::abs(c.back()) < 1e-300) c.pop_back();
  std::vector<double> out;
  const int deg = int(c.size()) - 1;
  if (deg <= 0) return out;
  if (deg == 1) {
    out.push_back(-c[0] / c[1]);
    return out;
  }
  if (deg == 2) {
    quad_roots(c[2], c[1], c[0], out);
    return out;
  }
  // Cubic: normalize to x^3 + a2 x^2 + a1 x + a0, depress, branch on the
  // discriminant, then polish with a few Newton steps on the original poly.
  const double a2 = c[2] / c[3], a1 = c[1] / c[3], a0 = c[0] / c[3];
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  const double shift = a2 / 3.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q + s);
    const double v = std::cbrt(-0.5 * q - s);
    out.push_back(u + v - shift);
  } else if (p == 0.0) {
    out.push_back(std::cbrt(-q) - shift);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    constexpr double kTwoPiThird = 2.0943951023931953;
    for (int k = 0; k < 3; ++k) {
      out.push_back(m * std::cos(theta - kTwoPiThird * k) - shift);
    }
  }
  for (double& r : out) {
    for (int it = 0; it < 3; ++it) {
      const double f = poly_eval(c, r);
      const double df = poly_deriv_eval(c, r);
      if (df == 0.0 || !std::isfinite(f / df)) break;
      const double step = f / df;
      r -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(r))) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Dense polynomial arithmetic on ascending-coefficient vectors.
std::vector<double> pmul(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return out;
}

std::vector<double> padd(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> out(std::max(x.size(), y.size()), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  return out;
}

std::vector<double> pscale(std::vector<double> x, double s) {
  for (double& v : x) v *= s;
  return x;
}

// ---------------------------------------------------------------------------
// Relay-power interval geometry shared by the FD feasibility test and the
// exact solver.
// ---------------------------------------------------------------------------

struct QuadCoeffs {
  double a = 0.0, b = 0.0, c = 0.0;  // a p^2 + b p + c
};

// Coefficient sets of the two boundary-crossing polynomials:
//  * weak-vs-strong window: Q(p) >= 0 iff the weak-QoS lower bound stays
//    below the strong-QoS upper bound (outside the excluded band);
//  * lower-bound crossing: the decode bound meets the weak-QoS bound where
//    the second quadratic vanishes.
void geom_params(double gm, double gn, double gd, double gs, double P,
                 double delta, QuadCoeffs& band_q, QuadCoeffs& cross_q) {
  band_q.a = gn * gd * gs * delta;
  band_q.b = gm * gd + gn * gd * delta - gn * gs * delta * (delta + 1.0);
  band_q.c = P * gm * gn - gm * delta - gn * delta * (delta + 1.0);
  cross_q.a = delta * gn * gs * gd;
  cross_q.b = -(P * gm * gn * gd + gm * gd * delta + gm * gd +
                delta * delta * gn * gs + delta * gn * gs - delta * gn * gd);
  cross_q.c = delta * (delta + 1.0) * (gm - gn);
}

struct Band {
  double lo = -kInf, hi = kInf;  // open interval of excluded relay powers
};

// Excluded relay-power band where the weak-QoS bound exceeds the strong-QoS
// bound (no alpha works).  Returns no band when the quadratic never goes
// negative or when the negative stretch lies beyond the point where the
// weak-QoS constraint is already met by relaying alone (spurious root pair).
std::optional<Band> band_exclusion(const QuadCoeffs& q, double gd, double delta) {
  if (q.a > 0.0) {
    const double disc = q.b * q.b - 4.0 * q.a * q.c;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double b1 = (-q.b - sq) / (2.0 * q.a);
    const double b3 = (-q.b + sq) / (2.0 * q.a);
    if (gd > 0.0 && b1 * gd >= delta) return std::nullopt;
    return Band{b1, b3};
  }
  if (std::abs(q.b) < 1e-300) {
    if (q.c >= 0.0) return std::nullopt;
    return Band{-kInf, kInf};
  }
  const double r = -q.c / q.b;
  if (q.b > 0.0) return Band{-kInf, r};  // negative below the root
  return Band{r, kInf};                  // negative above the root
}

// Relay power beyond which the decode bound exceeds the strong-QoS bound
// (alpha-window closed); +inf without self-interference.
double decode_cap(double gm, double gs, double P, double delta) {
  if (gs <= 0.0) return kInf;
  return (P * gm - delta * delta - 2.0 * delta) / (delta * gs * (delta + 2.0));
}

struct ExactResult {
  bool feasible = false;
  double alpha = 0.0, p_d = 0.0, sum = 0.0;
};

// Exact inner solver over the unified geometry: enumerates the finite
// candidate set of relay powers (usable-interval endpoints, bound crossings,
// stationary points of the sum rate along each active boundary) and picks the
// best QoS-satisfying (alpha, p_d).  gs is the effective self-interference.
ExactResult solve_exact(const PairChannels& ch, double gs, double P,
                        double p_d_max, double delta, double pref) {
  const double gm = ch.gamma_m, gn = ch.gamma_n, gd = ch.gamma_d;
  auto sum_at = [&](double a, double p) {
    return pair_sum_rate(ch, a, p, P, gs, pref);
  };
  if (delta <= 0.0) return {true, 0.0, 0.0, sum_at(0.0, 0.0)};
  if (gm <= 0.0) return {};
  if (P * gm < delta * delta + 2.0 * delta) return {};

  const double x_cap = std::min(p_d_max, decode_cap(gm, gs, P, delta));
  QuadCoeffs band_q, cross_q;
  geom_params(gm, gn, gd, gs, P, delta, band_q, cross_q);
  const std::optional<Band> band = band_exclusion(band_q, gd, delta);
  auto in_band = [&](double p) {
    return band && band->lo < p && p < band->hi;
  };

  // Usable relay-power intervals within [0, x_cap].
  std::vector<std::pair<double, double>> intervals;
  if (!band) {
    intervals.emplace_back(0.0, x_cap);
  } else {
    if (band->lo >= 0.0) intervals.emplace_back(0.0, std::min(band->lo, x_cap));
    if (band->hi <= x_cap) intervals.emplace_back(std::max(band->hi, 0.0), x_cap);
    if (band->lo < 0.0 && band->hi < 0.0) {
      intervals.clear();
      intervals.emplace_back(0.0, x_cap);
    }
  }
  std::erase_if(intervals, [](const auto& iv) { return iv.first > iv.second; });
  if (intervals.empty()) return {};

  std::vector<double> cands;
  for (const auto& [lo, hi] : intervals) {
    cands.push_back(lo);
    cands.push_back(hi);
  }
  // Crossing of the two lower alpha-bounds (genuine root lies below the point
  // where the weak-QoS bound reaches zero).
  const double b_zero = (gd > 0.0) ? delta / gd : kInf;
  for (double r : poly_roots({cross_q.c, cross_q.b, cross_q.a})) {
    if (r >= 0.0 && r <= x_cap && r <= b_zero) cands.push_back(r);
  }
  // Stationary points of the sum rate along the weak-QoS boundary.
  for (double r : poly_roots(
           {gd * (delta + 1.0) - (P * gn - delta) * (gs * (delta + 1.0) - gd),
            2.0 * gs * gd * (P * gn - delta), gs * gd * gd})) {
    if (r > 0.0 && r < x_cap) cands.push_back(r);
  }
  // Crossings of the two upper envelope pieces of the sum rate along the
  // strong-QoS boundary: cubic
  //   (1+delta) ((1 + gd p) e + f) c - e (c + P gm) = 0
  // with c = 1 + gs p, e = delta gn c + gm, f = gn (P gm - delta c).
  {
    const std::vector<double> cpoly{1.0, gs};
    const std::vector<double> e = padd(pscale(cpoly, delta * gn), {gm});
    const std::vector<double> f = padd({gn * P * gm}, pscale(cpoly, -delta * gn));
    const std::vector<double> d1{1.0, gd};
    const std::vector<double> lhs =
        pscale(pmul(padd(pmul(d1, e), f), cpoly), 1.0 + delta);
    const std::vector<double> rhs = pmul(e, padd(cpoly, {P * gm}));
    for (double r : poly_roots(padd(lhs, pscale(rhs, -1.0)))) {
      if (r > 0.0 && r < x_cap) cands.push_back(r);
    }
  }

  std::sort(cands.begin(), cands.end());
  ExactResult best;
  for (double p : cands) {
    if (p < 0.0 || p > x_cap || in_band(p)) continue;
    const double lo = std::max(bound_a(p, gm, gn, gd, gs, P, delta),
                               bound_b(p, gm, gn, gd, gs, P, delta));
    const double hi = bound_c(p, gm, gn, gd, gs, P, delta);
    if (lo > hi + 1e-11) continue;
    const double a_lo = std::min(lo, hi);
    for (double alpha : {a_lo, hi}) {
      if (alpha < 0.0 || alpha > 1.0) continue;
      if (!qos_satisfied(ch, alpha, p, P, gs, delta, 1e-12)) continue;
      const double s = sum_at(alpha, p);
      // Ties resolved toward the lowest (alpha, p_d) pair.
      const bool better =
          !best.feasible || s > best.sum ||
          (s == best.sum &&
           (alpha < best.alpha || (alpha == best.alpha && p < best.p_d)));
      if (better) best = {true, alpha, p, s};
    }
  }
  return best;
}

// Mode-resolved parameter bundle.
struct ModeParams {
  double gs = 0.0;    // effective self-interference
  double delta = 0.0; // SINR threshold
  double pref = 1.0;  // rate prefactor
};

ModeParams params_for(const PairChannels& ch, const QosSpec& qos, DuplexMode mode) {
  if (mode == DuplexMode::HD) return {0.0, qos.delta_h, 0.5};
  return {ch.gamma_si, qos.delta_f, 1.0};
}

RatePair rates_for(const PairChannels& ch, const PowerDecision& dec, double p_bs,
                   DuplexMode mode) {
  return mode == DuplexMode::HD ? hd_rates(ch, dec, p_bs) : fd_rates(ch, dec, p_bs);
}

PairSolution solution_from(const PairChannels& ch, double p_bs,
                           const ExactResult& res, DuplexMode mode) {
  PairSolution sol;
  sol.mode = mode;
  sol.feasible = res.feasible;
  if (!res.feasible) return sol;
  sol.decision = {res.alpha, res.p_d};
  sol.rates = rates_for(ch, sol.decision, p_bs, mode);
  sol.sum_rate = sol.rates.sum();
  return sol;
}

}  // namespace

// ---------------------------------------------------------------------------
// Boundary curves (public, mode-resolved).
// ---------------------------------------------------------------------------

double alpha_min_decode(const PairChannels& ch, double p_bs, const QosSpec& qos,
                        double p_d, DuplexMode mode) {
  const ModeParams mp = params_for(ch, qos, mode);
  return bound_a(p_d, ch.gamma_m, ch.gamma_n, ch.gamma_d, mp.gs, p_bs, mp.delta);
}

double alpha_min_weak_qos(const PairChannels& ch, double p_bs, const QosSpec& qos,
                          double p_d, DuplexMode mode) {
  const ModeParams mp = params_for(ch, qos, mode);
  return bound_b(p_d, ch.gamma_m, ch.gamma_n, ch.gamma_d, mp.gs, p_bs, mp.delta);
}

double alpha_max_strong_qos(const PairChannels& ch, double p_bs, const QosSpec& qos,
                            double p_d, DuplexMode mode) {
  const ModeParams mp = params_for(ch, qos, mode);
  return bound_c(p_d, ch.gamma_m, ch.gamma_n, ch.gamma_d, mp.gs, p_bs, mp.delta);
}

// ---------------------------------------------------------------------------
// HD
// ---------------------------------------------------------------------------

namespace {

// Relay power where the weak-QoS bound meets the decode bound; spending more
// relay power cannot raise the HD sum rate.
double hd_p_int(const PairChannels& ch, double p_bs, double delta) {
  const double gm = ch.gamma_m, gn = ch.gamma_n, gd = ch.gamma_d;
  if (gd <= 0.0) return kInf;
  const double num = delta * (delta + 1.0) * (gm - gn);
  const double den = gd * (gm * (p_bs * gn + 1.0 + delta) - delta * gn);
  return num / den;
}

// Smallest relay power with a nonempty alpha-window (0 when the direct link
// alone suffices; +inf when no relay power can help).
double hd_p_min(const PairChannels& ch, double p_bs, double delta) {
  const double gm = ch.gamma_m, gn = ch.gamma_n, gd = ch.gamma_d;
  const double num =
      delta * delta * gn + delta * (gm + gn) - p_bs * gm * gn;
  if (num <= 0.0) return 0.0;
  if (gd <= 0.0) return kInf;
  return num / (gd * (gm + delta * gn));
}

}  // namespace

HdFeasibility hd_feasible(const PairChannels& ch, double p_bs, double p_d_max,
                          const QosSpec& qos) {
  if (ch.gamma_m == 0.0 && qos.r_th > 0.0) {
    throw std::domain_error(
        "hd_feasible: gamma_m = 0 with r_th > 0 (strong user can never meet QoS)");
  }
  const double delta = qos.delta_h;
  HdFeasibility out;
  if (delta <= 0.0) {
    out.feasible = true;
    out.p_min = 0.0;
    out.p_int = 0.0;
    return out;
  }
  out.p_min = hd_p_min(ch, p_bs, delta);
  out.p_int = hd_p_int(ch, p_bs, delta);
  if (p_bs * ch.gamma_m < delta * delta + 2.0 * delta) {
    out.failed_condition = 1;
    return out;
  }
  if (p_d_max < out.p_min) {
    out.failed_condition = 2;
    return out;
  }
  out.feasible = true;
  return out;
}

PairSolution hd_optimal(const PairChannels& ch, double p_bs, double p_d_max,
                        const QosSpec& qos) {
  PairSolution sol;
  sol.mode = DuplexMode::HD;
  const HdFeasibility feas = hd_feasible(ch, p_bs, p_d_max, qos);
  if (!feas.feasible) return sol;
  const double delta = qos.delta_h;
  if (delta <= 0.0) {
    sol.feasible = true;
    sol.decision = {0.0, 0.0};
    sol.rates = hd_rates(ch, sol.decision, p_bs);
    sol.sum_rate = sol.rates.sum();
    return sol;
  }
  const double p_star = std::min(p_d_max, feas.p_int);
  // Below p_int the weak-QoS bound is the binding lower bound; at p_int it
  // meets the decode bound, so the max covers both branches.
  double alpha =
      std::max(alpha_min_decode(ch, p_bs, qos, p_star, DuplexMode::HD),
               alpha_min_weak_qos(ch, p_bs, qos, p_star, DuplexMode::HD));
  const double cap = alpha_max_strong_qos(ch, p_bs, qos, p_star, DuplexMode::HD);
  alpha = std::min(std::max(alpha, 0.0), cap);
  sol.feasible = true;
  sol.decision = {alpha, p_star};
  sol.rates = hd_rates(ch, sol.decision, p_bs);
  sol.sum_rate = sol.rates.sum();
  return sol;
}

// ---------------------------------------------------------------------------
// FD
// ---------------------------------------------------------------------------

FdFeasParams fd_feas_params(const PairChannels& ch, double p_bs,
                            const QosSpec& qos) {
  const double gm = ch.gamma_m, gn = ch.gamma_n, gd = ch.gamma_d,
               gs = ch.gamma_si;
  const double delta = qos.delta_f;
  FdFeasParams out;
  out.degenerate = (gs == 0.0 || gd == 0.0);
  if (delta <= 0.0 || gm <= 0.0 || gd <= 0.0) return out;

  QuadCoeffs band_q, cross_q;
  geom_params(gm, gn, gd, gs, p_bs, delta, band_q, cross_q);
  out.delta1 = band_q.b * band_q.b - 4.0 * band_q.a * band_q.c;
  out.delta2 = cross_q.b * cross_q.b - 4.0 * cross_q.a * cross_q.c;
  // Guarded Newton step(s) to tighten a closed-form quadratic root; keeps the
  // downstream boundary identities accurate near ill-conditioned coefficients.
  const auto polish = [](double x, const QuadCoeffs& q) {
    for (int it = 0; it < 2; ++it) {
      const double f = (q.a * x + q.b) * x + q.c;
      const double df = 2.0 * q.a * x + q.b;
      if (df == 0.0) break;
      const double step = f / df;
      if (!std::isfinite(step) || std::abs(step) > 0.5 * (std::abs(x) + 1.0))
        break;
      x -= step;
    }
    return x;
  };
  if (band_q.a > 0.0) {
    if (out.delta1 >= 0.0) {
      std::vector<double> roots;
      quad_roots(band_q.a, band_q.b, band_q.c, roots);
      if (roots.size() == 2) {
        out.b1 = polish(roots[0], band_q);
        out.b3 = polish(roots[1], band_q);
      }
    }
  } else if (std::abs(band_q.b) >= 1e-300) {
    // Quadratic degenerates to a line; a single boundary crossing remains.
    const double r = -band_q.c / band_q.b;
    if (band_q.b > 0.0) {
      out.b3 = r;  // excluded band extends downward from r
    } else {
      out.b1 = r;  // excluded band extends upward from r
    }
  }
  // Crossing of the two lower alpha-bounds: smallest root at or below the
  // relay power where the weak-QoS bound reaches zero.
  const double b_zero = delta / gd;
  for (double r : poly_roots({cross_q.c, cross_q.b, cross_q.a})) {
    if (r >= -1e-12 && r <= b_zero) {
      out.b2 = polish(r, cross_q);
      break;
    }
  }
  return out;
}

FdFeasibility fd_feasible(const PairChannels& ch, double p_bs, double p_d_max,
                          const QosSpec& qos) {
  const double gm = ch.gamma_m, gn = ch.gamma_n, gd = ch.gamma_d,
               gs = ch.gamma_si;
  const double delta = qos.delta_f;
  FdFeasibility out;
  if (delta <= 0.0) {
    out.feasible = true;
    out.condition = 3;
    return out;
  }
  if (gm <= 0.0) return out;
  if (p_bs * gm < delta * delta + 2.0 * delta) return out;

  const double x_cap = std::min(p_d_max, decode_cap(gm, gs, p_bs, delta));
  QuadCoeffs band_q, cross_q;
  geom_params(gm, gn, gd, gs, p_bs, delta, band_q, cross_q);
  const std::optional<Band> band = band_exclusion(band_q, gd, delta);
  if (!band) {
    out.feasible = true;
    out.condition = 3;  // no excluded band
    return out;
  }
  if (band->lo >= 0.0) {
    out.feasible = true;
    out.condition = 2;  // band starts above zero: small relay powers work
    return out;
  }
  if (band->hi <= x_cap) {
    out.feasible = true;
    out.condition = 1;  // band ends within the usable budget
    return out;
  }
  return out;
}

PairSolution fd_optimal(const PairChannels& ch, double p_bs, double p_d_max,
                        const QosSpec& qos) {
  const ExactResult res =
      solve_exact(ch, ch.gamma_si, p_bs, p_d_max, qos.delta_f, 1.0);
  return solution_from(ch, p_bs, res, DuplexMode::FD);
}

// ---------------------------------------------------------------------------
// NOMA / fixed power / mode selection
// ---------------------------------------------------------------------------

PairSolution noma_optimal(const PairChannels& ch, double p_bs, const QosSpec& qos) {
  const PairChannels direct(ch.gamma_m, ch.gamma_n, 0.0, 0.0);
  const ExactResult res = solve_exact(direct, 0.0, p_bs, 0.0, qos.delta_f, 1.0);
  PairSolution sol;
  sol.mode = DuplexMode::FD;
  sol.feasible = res.feasible;
  if (!res.feasible) return sol;
  sol.decision = {res.alpha, 0.0};
  sol.rates = noma_rates(ch, res.alpha, p_bs);
  sol.sum_rate = sol.rates.sum();
  return sol;
}

PairSolution fixed_power_optimal(const PairChannels& ch, double p_bs,
                                 double p_d_max, const QosSpec& qos,
                                 DuplexMode mode) {
  PairSolution sol;
  sol.mode = mode;
  const ModeParams mp = params_for(ch, qos, mode);
  const double p = p_d_max;
  if (mp.delta <= 0.0) {
    sol.feasible = true;
    sol.decision = {0.0, p};
    sol.rates = rates_for(ch, sol.decision, p_bs, mode);
    sol.sum_rate = sol.rates.sum();
    return sol;
  }
  if (ch.gamma_m <= 0.0) return sol;
  const double lo =
      std::max({alpha_min_decode(ch, p_bs, qos, p, mode),
                alpha_min_weak_qos(ch, p_bs, qos, p, mode), 0.0});
  const double hi = std::min(alpha_max_strong_qos(ch, p_bs, qos, p, mode), 1.0);
  if (!(lo <= hi + 1e-12)) return sol;
  const double alpha = std::min(lo, hi);
  if (!qos_satisfied(ch, alpha, p, p_bs, mp.gs, mp.delta, 1e-9)) return sol;
  sol.feasible = true;
  sol.decision = {alpha, p};
  sol.rates = rates_for(ch, sol.decision, p_bs, mode);
  sol.sum_rate = sol.rates.sum();
  return sol;
}

namespace {

PairSolution pick_mode(const PairSolution& hd, const PairSolution& fd) {
  if (hd.feasible && fd.feasible) {
    return fd.sum_rate >= hd.sum_rate ? fd : hd;  // exact ties -> FD
  }
  if (fd.feasible) return fd;
  if (hd.feasible) return hd;
  PairSolution none;
  none.mode = DuplexMode::FD;
  return none;
}

}  // namespace

PairSolution mode_select(const PairChannels& ch, double p_bs, double p_d_max,
                         const QosSpec& qos) {
  return pick_mode(hd_optimal(ch, p_bs, p_d_max, qos),
                   fd_optimal(ch, p_bs, p_d_max, qos));
}

PairSolution mode_select_fixed(const PairChannels& ch, double p_bs,
                               double p_d_max, const QosSpec& qos) {
  return pick_mode(fixed_power_optimal(ch, p_bs, p_d_max, qos, DuplexMode::HD),
                   fixed_power_optimal(ch, p_bs, p_d_max, qos, DuplexMode::FD));
}

}  // namespace cnoma
