#include "cnoma/rates.hpp"

#include <algorithm>
#include <cmath>

namespace cnoma {

namespace {
constexpr double kInvLn2 = 1.4426950408889634074;  // 1 / ln 2
}

SinrTriple pair_sinrs(const PairChannels& ch, double alpha, double p_d,
                      double p_bs, double self_interference) {
  const double t = 1.0 - alpha;
  const double c = self_interference * p_d + 1.0;
  SinrTriple s;
  s.strong_own = t * p_bs * ch.gamma_m / c;
  s.strong_decode = alpha * p_bs * ch.gamma_m / (t * p_bs * ch.gamma_m + c);
  const double sn = alpha * p_bs * ch.gamma_n / (t * p_bs * ch.gamma_n + 1.0);
  s.weak_combined = p_d * ch.gamma_d + sn;
  return s;
}

double rate_from_sinr(double sinr) { return std::log1p(sinr) * kInvLn2; }

RatePair hd_rates(const PairChannels& ch, const PowerDecision& dec, double p_bs) {
  const SinrTriple s = pair_sinrs(ch, dec.alpha, dec.p_d, p_bs, 0.0);
  RatePair r;
  r.r_strong = 0.5 * rate_from_sinr(s.strong_own);
  r.r_weak = 0.5 * rate_from_sinr(std::min(s.strong_decode, s.weak_combined));
  return r;
}

RatePair fd_rates(const PairChannels& ch, const PowerDecision& dec, double p_bs) {
  const SinrTriple s = pair_sinrs(ch, dec.alpha, dec.p_d, p_bs, ch.gamma_si);
  RatePair r;
  r.r_strong = rate_from_sinr(s.strong_own);
  r.r_weak = rate_from_sinr(std::min(s.strong_decode, s.weak_combined));
  return r;
}

RatePair noma_rates(const PairChannels& ch, double alpha, double p_bs) {
  const SinrTriple s = pair_sinrs(ch, alpha, 0.0, p_bs, 0.0);
  RatePair r;
  r.r_strong = rate_from_sinr(s.strong_own);
  r.r_weak = rate_from_sinr(std::min(s.strong_decode, s.weak_combined));
  return r;
}

double pair_sum_rate(const PairChannels& ch, double alpha, double p_d,
                     double p_bs, double self_interference, double prefactor) {
  const SinrTriple s = pair_sinrs(ch, alpha, p_d, p_bs, self_interference);
  return prefactor * (rate_from_sinr(s.strong_own) +
                      rate_from_sinr(std::min(s.strong_decode, s.weak_combined)));
}

bool qos_satisfied(const PairChannels& ch, double alpha, double p_d,
                   double p_bs, double self_interference, double delta,
                   double tol) {
  const SinrTriple s = pair_sinrs(ch, alpha, p_d, p_bs, self_interference);
  return s.strong_own >= delta - tol &&
         std::min(s.strong_decode, s.weak_combined) >= delta - tol;
}

}  // namespace cnoma
