#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cnoma/power_control.hpp"
#include "cnoma/rates.hpp"
#include "cnoma/verify.hpp"

using namespace cnoma;

namespace {

doctest::Approx near(double v, double rel = 1e-13) {
  return doctest::Approx(v).epsilon(rel);
}

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
}

const QosSpec kQos1 = QosSpec::from_rate(1.0);
const QosSpec kQosHalf = QosSpec::from_rate(0.5);

}  // namespace

// ---------------------------------------------------------------------------
// HD
// ---------------------------------------------------------------------------

TEST_CASE("hd solver reproduces a reference instance with an interior optimum") {
  const PairChannels ch{4.0, 0.5, 1.2};
  const HdFeasibility f = hd_feasible(ch, 8.0, 5.0, kQos1);
  CHECK(f.feasible);
  CHECK(f.failed_condition == 0);
  CHECK(f.p_int == near(1.1475409836065573));
  CHECK(f.p_min == near(0.30303030303030304));

  const PairSolution s = hd_optimal(ch, 8.0, 5.0, kQos1);
  REQUIRE(s.feasible);
  CHECK(s.mode == DuplexMode::HD);
  CHECK(s.decision.alpha == near(0.7734375));
  CHECK(s.decision.p_d == near(1.1475409836065575));
  CHECK(s.sum_rate == near(2.5221970596792267));
  CHECK(s.rates.sum() == s.sum_rate);
}

TEST_CASE("hd solver clamps the relay power to a binding budget") {
  const PairChannels ch{4.0, 0.5, 1.2};
  const PairSolution s = hd_optimal(ch, 8.0, 0.5, kQos1);
  REQUIRE(s.feasible);
  CHECK(s.decision.alpha == near(0.88235294117647056));
  CHECK(s.decision.p_d == 0.5);
  CHECK(s.sum_rate == near(2.1261935808171426));
}

TEST_CASE("hd infeasible when the relay budget is below the minimum power") {
  const PairChannels ch{4.0, 0.5, 1.2};
  const HdFeasibility f = hd_feasible(ch, 8.0, 0.3, kQos1);
  CHECK_FALSE(f.feasible);
  CHECK(f.failed_condition == 2);
  CHECK_FALSE(hd_optimal(ch, 8.0, 0.3, kQos1).feasible);
}

TEST_CASE("hd infeasible when the base-station power is below the window bound") {
  // p_bs * gamma_m = 10 < delta^2 + 2 delta = 15 at r_th = 1.
  const PairChannels ch{1.0, 0.1, 1.0};
  const HdFeasibility f = hd_feasible(ch, 10.0, 100.0, kQos1);
  CHECK_FALSE(f.feasible);
  CHECK(f.failed_condition == 1);
}

TEST_CASE("hd base-station power condition is boundary-inclusive") {
  // p_bs * gamma_m = 15 = delta^2 + 2 delta exactly (all values exact in FP).
  const PairChannels ch{1.5, 0.01, 1.0};
  const HdFeasibility f = hd_feasible(ch, 10.0, 1e6, kQos1);
  CHECK(f.failed_condition != 1);
  CHECK(f.feasible);
}

TEST_CASE("hd solver handles a free minimum relay power") {
  const PairChannels ch{2.0, 1.0, 0.8};
  const HdFeasibility f = hd_feasible(ch, 30.0, 10.0, kQosHalf);
  CHECK(f.feasible);
  CHECK(f.p_min == 0.0);
  CHECK(f.p_int == near(0.03968253968253968));

  const PairSolution s = hd_optimal(ch, 30.0, 10.0, kQosHalf);
  REQUIRE(s.feasible);
  CHECK(s.decision.alpha == near(0.5083333333333333));
  CHECK(s.decision.p_d == near(0.03968253968253968));
  CHECK(s.sum_rate == near(2.9653686687814433));
}

TEST_CASE("hd solver rejects a zero strong gain with a positive rate target") {
  const PairChannels ch{0.0, 0.0, 1.0};
  CHECK_THROWS_AS(hd_feasible(ch, 10.0, 5.0, kQos1), std::domain_error);
  CHECK_THROWS_AS(hd_optimal(ch, 10.0, 5.0, kQos1), std::domain_error);
}

TEST_CASE("zero rate target is served with zero extra power") {
  const QosSpec q0 = QosSpec::from_rate(0.0);
  const PairChannels ch{3.0, 0.4, 1.0, 0.2};
  for (const PairSolution& s :
       {hd_optimal(ch, 10.0, 5.0, q0), fd_optimal(ch, 10.0, 5.0, q0),
        noma_optimal(ch, 10.0, q0)}) {
    REQUIRE(s.feasible);
    CHECK(s.decision.alpha == 0.0);
    CHECK(s.decision.p_d == 0.0);
    CHECK(s.rates.r_strong > 0.0);
  }
}

// ---------------------------------------------------------------------------
// FD
// ---------------------------------------------------------------------------

TEST_CASE("fd solver reproduces a reference instance with self-interference") {
  const PairChannels ch{5.0, 0.4, 2.0, 0.3};
  const FdFeasibility f = fd_feasible(ch, 12.0, 6.0, kQos1);
  CHECK(f.feasible);
  CHECK(f.condition == 1);

  const PairSolution s = fd_optimal(ch, 12.0, 6.0, kQos1);
  REQUIRE(s.feasible);
  CHECK(s.mode == DuplexMode::FD);
  CHECK(s.decision.alpha == near(0.50867454295231895));
  CHECK(s.decision.p_d == near(0.13648384759426144, 1e-11));
  CHECK(s.sum_rate == near(5.8738113384706097));
}

TEST_CASE("fd breakpoints match the reference analysis") {
  const PairChannels ch{5.0, 0.4, 2.0, 0.3};
  const FdFeasParams p = fd_feas_params(ch, 12.0, kQos1);
  CHECK_FALSE(p.degenerate);
  CHECK(p.delta1 == near(94.041600000000017, 1e-12));
  CHECK(p.delta2 == near(4539.3216000000011, 1e-12));
  REQUIRE(p.b1.has_value());
  REQUIRE(p.b3.has_value());
  REQUIRE(p.b2.has_value());
  CHECK(*p.b1 == near(-42.203135070247555, 1e-12));
  CHECK(*p.b3 == near(-1.7968649297524435, 1e-12));
  CHECK(*p.b2 == near(0.1364838475942598, 1e-11));
}

TEST_CASE("fd solver spends the whole relay budget when self-interference is zero") {
  const PairChannels ch{3.0, 0.2, 1.5, 0.0};
  const FdFeasParams p = fd_feas_params(ch, 15.0, kQosHalf);
  CHECK(p.degenerate);
  const PairSolution s = fd_optimal(ch, 15.0, 4.0, kQosHalf);
  REQUIRE(s.feasible);
  CHECK(s.decision.alpha == near(0.299401957009307));
  CHECK(s.decision.p_d == 4.0);
  CHECK(s.sum_rate == near(5.5235619560570131));
}

TEST_CASE("fd solver turns the relay off when there is no d2d link") {
  const PairChannels ch{3.0, 0.2, 0.0, 0.1};
  const FdFeasibility f = fd_feasible(ch, 15.0, 4.0, kQosHalf);
  CHECK(f.feasible);
  CHECK(f.condition == 2);
  const PairSolution s = fd_optimal(ch, 15.0, 4.0, kQosHalf);
  REQUIRE(s.feasible);
  CHECK(s.decision.alpha == near(0.39052429175127001));
  CHECK(s.decision.p_d == 0.0);
  CHECK(s.sum_rate == near(5.3291598472015771));
}

TEST_CASE("fd solver balances strong self-interference against relay gain") {
  const PairChannels ch{6.0, 0.05, 1.0, 2.0};
  const PairSolution s = fd_optimal(ch, 20.0, 50.0, kQos1);
  REQUIRE(s.feasible);
  CHECK(s.decision.alpha == near(0.50965027582920319));
  CHECK(s.decision.p_d == near(0.65803309950437083, 1e-11));
  CHECK(s.sum_rate == near(5.7227936141113815));
}

TEST_CASE("fd feasible with no excluded relay-power band") {
  const PairChannels ch{2.0, 1.0, 1.0, 5.0};
  const FdFeasibility f = fd_feasible(ch, 20.0, 10.0, kQos1);
  CHECK(f.feasible);
  CHECK(f.condition == 3);
}

TEST_CASE("fd feasibility flag agrees with the fd solver on random instances") {
  for (int i = 0; i < 500; ++i) {
    const PairInstance inst = draw_pair_instance(5150, i);
    const FdFeasibility f = fd_feasible(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
    const PairSolution s = fd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
    CHECK(f.feasible == s.feasible);
    const HdFeasibility fh = hd_feasible(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
    const PairSolution sh = hd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
    CHECK(fh.feasible == sh.feasible);
  }
}

TEST_CASE("solved operating points always satisfy the qos targets") {
  int feasible_seen = 0;
  for (int i = 0; i < 500; ++i) {
    const PairInstance inst = draw_pair_instance(6060, i);
    for (SolveMode m : {SolveMode::HD, SolveMode::FD}) {
      const PairSolution s = m == SolveMode::HD
                                 ? hd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos)
                                 : fd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
      if (!s.feasible) continue;
      ++feasible_seen;
      CHECK(qos_shortfall(inst.ch, s.decision, inst.p_bs, inst.qos, m) <= 1e-9);
      CHECK(s.decision.alpha >= 0.0);
      CHECK(s.decision.alpha <= 1.0);
      CHECK(s.decision.p_d >= 0.0);
      CHECK(s.decision.p_d <= inst.p_d_max * (1.0 + 1e-12));
    }
  }
  CHECK(feasible_seen > 100);
}

// ---------------------------------------------------------------------------
// Boundary-curve identities at the analytic breakpoints
// ---------------------------------------------------------------------------

TEST_CASE("hd bound curves intersect at the analytic breakpoints") {
  const PairChannels ch{4.0, 0.5, 1.2};
  const double P = 8.0;
  const HdFeasibility f = hd_feasible(ch, P, 5.0, kQos1);
  REQUIRE(f.feasible);

  // At p_int the weak-QoS bound meets the decode bound.
  const double a1 = alpha_min_decode(ch, P, kQos1, f.p_int, DuplexMode::HD);
  const double b1 = alpha_min_weak_qos(ch, P, kQos1, f.p_int, DuplexMode::HD);
  CHECK(rel_gap(a1, b1) <= 1e-9);

  // At p_min the weak-QoS bound meets the strong-QoS cap.
  REQUIRE(f.p_min > 0.0);
  const double b2 = alpha_min_weak_qos(ch, P, kQos1, f.p_min, DuplexMode::HD);
  const double c2 = alpha_max_strong_qos(ch, P, kQos1, f.p_min, DuplexMode::HD);
  CHECK(rel_gap(b2, c2) <= 1e-9);
}

TEST_CASE("fd bound curves intersect at the analytic breakpoints") {
  const PairChannels ch{5.0, 0.4, 2.0, 0.3};
  const double P = 12.0;
  const FdFeasParams p = fd_feas_params(ch, P, kQos1);
  REQUIRE(p.b1.has_value());
  REQUIRE(p.b3.has_value());
  REQUIRE(p.b2.has_value());

  // b2: decode bound meets the weak-QoS bound.
  const double a = alpha_min_decode(ch, P, kQos1, *p.b2, DuplexMode::FD);
  const double b = alpha_min_weak_qos(ch, P, kQos1, *p.b2, DuplexMode::FD);
  CHECK(rel_gap(a, b) <= 1e-9);

  // b1 and b3: weak-QoS bound meets the strong-QoS cap.
  for (double root : {*p.b1, *p.b3}) {
    const double lo = alpha_min_weak_qos(ch, P, kQos1, root, DuplexMode::FD);
    const double hi = alpha_max_strong_qos(ch, P, kQos1, root, DuplexMode::FD);
    CHECK(rel_gap(lo, hi) <= 1e-9);
  }
}

// ---------------------------------------------------------------------------
// NOMA / fixed relay power / mode selection
// ---------------------------------------------------------------------------

TEST_CASE("noma solver reproduces reference instances") {
  {
    const PairSolution s = noma_optimal(PairChannels{2.0, 0.25, 0.0}, 20.0, kQos1);
    REQUIRE(s.feasible);
    CHECK(s.decision.alpha == near(0.59999999999999998));
    CHECK(s.decision.p_d == 0.0);
    CHECK(s.sum_rate == near(5.0874628412503391));
  }
  {
    const PairSolution s = noma_optimal(PairChannels{1.0, 0.1, 0.0}, 50.0, kQosHalf);
    REQUIRE(s.feasible);
    CHECK(s.decision.alpha == near(0.35147186257614305));
    CHECK(s.sum_rate == near(5.5629163775209989));
  }
}

TEST_CASE("noma ignores the relay links entirely") {
  const PairChannels with_links{2.0, 0.25, 5.0, 3.0};
  const PairChannels bare{2.0, 0.25, 0.0, 0.0};
  const PairSolution a = noma_optimal(with_links, 20.0, kQos1);
  const PairSolution b = noma_optimal(bare, 20.0, kQos1);
  REQUIRE(a.feasible);
  CHECK(a.decision.alpha == b.decision.alpha);
  CHECK(a.sum_rate == b.sum_rate);
}

TEST_CASE("fixed relay power pins p_d to the budget") {
  {
    const PairSolution s =
        fixed_power_optimal(PairChannels{4.0, 0.5, 1.2, 0.0}, 8.0, 5.0, kQos1,
                            DuplexMode::HD);
    REQUIRE(s.feasible);
    CHECK(s.decision.p_d == 5.0);
    CHECK(s.decision.alpha == near(0.7734375));
    CHECK(s.sum_rate == near(2.5221970596792267));
  }
  {
    const PairSolution s =
        fixed_power_optimal(PairChannels{5.0, 0.4, 2.0, 0.3}, 12.0, 6.0, kQos1,
                            DuplexMode::FD);
    REQUIRE(s.feasible);
    CHECK(s.decision.p_d == 6.0);
    CHECK(s.decision.alpha == near(0.52333333333333332));
    CHECK(s.sum_rate == near(4.4872658268340224));
  }
}

TEST_CASE("adaptive relay power never loses to the fixed policy") {
  int fixed_feasible = 0;
  for (int i = 0; i < 400; ++i) {
    const PairInstance inst = draw_pair_instance(7070, i);
    for (DuplexMode m : {DuplexMode::HD, DuplexMode::FD}) {
      const PairSolution fixed =
          fixed_power_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos, m);
      if (!fixed.feasible) continue;
      ++fixed_feasible;
      const PairSolution adaptive =
          m == DuplexMode::HD ? hd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos)
                              : fd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
      REQUIRE(adaptive.feasible);
      CHECK(adaptive.sum_rate >= fixed.sum_rate - 1e-9);
    }
  }
  CHECK(fixed_feasible > 100);
}

TEST_CASE("mode selection picks fd when it beats hd") {
  const PairChannels ch{3.0, 0.3, 1.0, 50.0};
  const PairSolution hd = hd_optimal(ch, 15.0, 8.0, kQos1);
  const PairSolution fd = fd_optimal(ch, 15.0, 8.0, kQos1);
  REQUIRE(hd.feasible);
  REQUIRE(fd.feasible);
  CHECK(hd.sum_rate == near(2.7617809780285061));
  CHECK(fd.sum_rate == near(5.2094533656289492));

  const PairSolution pick = mode_select(ch, 15.0, 8.0, kQos1);
  CHECK(pick.mode == DuplexMode::FD);
  CHECK(pick.sum_rate == fd.sum_rate);
}

TEST_CASE("mode selection falls back to hd under crushing self-interference") {
  const PairChannels ch{3.0, 0.001, 5.0, 100.0};
  CHECK_FALSE(fd_optimal(ch, 20.0, 2.0, kQos1).feasible);
  const PairSolution pick = mode_select(ch, 20.0, 2.0, kQos1);
  REQUIRE(pick.feasible);
  CHECK(pick.mode == DuplexMode::HD);
  CHECK(pick.sum_rate == near(2.9653686687814433));
}

TEST_CASE("mode selection keeps fd while the self-interference is survivable") {
  const PairChannels ch{3.0, 0.001, 5.0, 30.0};
  const PairSolution pick = mode_select(ch, 20.0, 2.0, kQos1);
  REQUIRE(pick.feasible);
  CHECK(pick.mode == DuplexMode::FD);
  CHECK(pick.sum_rate == near(3.2710441839913651));
}

TEST_CASE("mode selection reports infeasibility when both modes fail") {
  const PairChannels ch{2.0, 0.0005, 8.0, 200.0};
  const QosSpec q = QosSpec::from_rate(1.5);
  CHECK_FALSE(hd_optimal(ch, 25.0, 1.0, q).feasible);
  CHECK_FALSE(fd_optimal(ch, 25.0, 1.0, q).feasible);
  const PairSolution pick = mode_select(ch, 25.0, 1.0, q);
  CHECK_FALSE(pick.feasible);
  CHECK(pick.sum_rate == 0.0);
}

TEST_CASE("mode selection returns the larger of the two mode optima") {
  for (int i = 0; i < 300; ++i) {
    const PairInstance inst = draw_pair_instance(8080, i);
    const PairSolution hd = hd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
    const PairSolution fd = fd_optimal(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
    const PairSolution pick = mode_select(inst.ch, inst.p_bs, inst.p_d_max, inst.qos);
    CHECK(pick.feasible == (hd.feasible || fd.feasible));
    if (hd.feasible && fd.feasible) {
      CHECK(pick.sum_rate == std::max(hd.sum_rate, fd.sum_rate));
    } else if (hd.feasible) {
      CHECK(pick.sum_rate == hd.sum_rate);
      CHECK(pick.mode == DuplexMode::HD);
    } else if (fd.feasible) {
      CHECK(pick.sum_rate == fd.sum_rate);
      CHECK(pick.mode == DuplexMode::FD);
    }
  }
}
