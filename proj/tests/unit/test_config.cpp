#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cnoma/channel.hpp"
#include "cnoma/config.hpp"

using namespace cnoma;

namespace {

doctest::Approx near(double v, double rel = 1e-12) {
  return doctest::Approx(v).epsilon(rel);
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config text parsing handles comments, spacing, and blank lines") {
  const ConfigMap map = parse_config_text(
      "# a comment\n"
      "\n"
      "  k = 3   # trailing comment\n"
      "trials=250\n"
      "\tmode =  fd \n");
  REQUIRE(map.count("k") == 1);
  CHECK(map.at("k").value == "3");
  CHECK(map.at("k").line == 3);
  CHECK(map.at("trials").value == "250");
  CHECK(map.at("mode").value == "fd");
}

TEST_CASE("config text parsing rejects malformed lines with line numbers") {
  CHECK(message_of([] { parse_config_text("justtext\n"); }).find("line 1") !=
        std::string::npos);
  CHECK(message_of([] { parse_config_text("\nK = 2\n"); }).find("line 2") !=
        std::string::npos);
  CHECK(message_of([] { parse_config_text("k =\n"); }).find("empty value") !=
        std::string::npos);
}

TEST_CASE("duplicate keys are rejected naming both lines") {
  const std::string msg =
      message_of([] { parse_config_text("k = 2\ntrials = 5\nk = 3\n"); });
  CHECK(msg.find("duplicate key 'k'") != std::string::npos);
  CHECK(msg.find("lines 1 and 3") != std::string::npos);
}

TEST_CASE("overrides replace file values and are validated") {
  ConfigMap map = parse_config_text("k = 2\ntrials = 5\n");
  apply_overrides(map, {"trials=77", "mode=hd"});
  CHECK(map.at("trials").value == "77");
  CHECK(map.at("trials").line == 0);
  CHECK(map.at("mode").value == "hd");
  CHECK_THROWS_AS(apply_overrides(map, {"nonsense"}), ConfigError);
  CHECK_THROWS_AS(apply_overrides(map, {"BAD=1"}), ConfigError);
  CHECK_THROWS_AS(apply_overrides(map, {"k="}), ConfigError);
}

TEST_CASE("an empty scenario config yields the documented defaults") {
  const Scenario sc = scenario_from_config({});
  CHECK(sc.k == 1);
  CHECK(sc.trials == 10000);
  CHECK(sc.mode == SolveMode::ModeSelect);
  CHECK(sc.pairing == PairingPolicy::Hungarian);
  CHECK(sc.relay_power == RelayPolicy::Adaptive);
  CHECK(sc.qos.r_th == 1.0);
  CHECK(sc.stats.lambda_s == near(10.0));
  CHECK(sc.stats.lambda_w == near(1.0));
  CHECK(sc.stats.lambda_d == near(3.9810717055349722));
  CHECK(sc.stats.lambda_si == near(1.0));
  CHECK(sc.p_d_max == near(1000.0));
  // Default single-point sweep over the base-station budget at 30 dBm.
  CHECK(sc.axis == SweepAxis::PBs);
  REQUIRE(sc.axis_values.size() == 1);
  CHECK(sc.axis_display == std::vector<double>{30.0});
  CHECK(sc.axis_values[0] == near(1000.0));
}

TEST_CASE("dbm keys convert through the noise floor") {
  {
    const Scenario sc = scenario_from_config(parse_config_text("p_bs_dbm = 42\n"));
    CHECK(sc.axis_values[0] == near(15848.931924611133));
    CHECK(sc.axis_display == std::vector<double>{42.0});
  }
  {
    const Scenario sc = scenario_from_config(
        parse_config_text("p_bs_dbm = 30\nnoise_floor_dbm = -100\n"));
    CHECK(sc.axis_values[0] == near(1.0e13));
  }
}

TEST_CASE("a comma list on a sweepable key becomes the sweep axis") {
  const Scenario sc = scenario_from_config(
      parse_config_text("lambda_si_db = -5, 0, 5\np_bs_dbm = 10\n"));
  CHECK(sc.axis == SweepAxis::LambdaSi);
  CHECK(sc.axis_display == std::vector<double>{-5.0, 0.0, 5.0});
  REQUIRE(sc.axis_values.size() == 3);
  CHECK(sc.axis_values[0] == near(db_to_linear(-5.0)));
  CHECK(sc.axis_values[2] == near(db_to_linear(5.0)));
  CHECK(sc.p_bs == near(10.0));  // non-swept scalar still applied
}

TEST_CASE("two swept keys are rejected") {
  CHECK_THROWS_AS(scenario_from_config(parse_config_text(
                      "p_bs_dbm = 10,20\nlambda_s_db = 0,6\n")),
                  ConfigError);
}

TEST_CASE("unknown scenario keys are rejected by name") {
  const std::string msg = message_of(
      [] { scenario_from_config(parse_config_text("bogus_key = 1\n")); });
  CHECK(msg.find("bogus_key") != std::string::npos);
}

TEST_CASE("scenario values are validated") {
  CHECK_THROWS_AS(scenario_from_config(parse_config_text("k = 0\n")), ConfigError);
  CHECK_THROWS_AS(scenario_from_config(parse_config_text("trials = -5\n")),
                  ConfigError);
  CHECK_THROWS_AS(scenario_from_config(parse_config_text("trials = 2.5\n")),
                  ConfigError);
  CHECK_THROWS_AS(scenario_from_config(parse_config_text("mode = sideways\n")),
                  ConfigError);
  CHECK_THROWS_AS(scenario_from_config(parse_config_text("r_th_bpshz = -1\n")),
                  ConfigError);
  CHECK(scenario_from_config(parse_config_text("mode = noma\n")).mode ==
        SolveMode::NOMA);
  CHECK(scenario_from_config(parse_config_text("pairing = baseline1\n")).pairing ==
        PairingPolicy::Baseline1);
  CHECK(scenario_from_config(parse_config_text("relay_power = fixed\n"))
            .relay_power == RelayPolicy::Fixed);
}

TEST_CASE("pair configs require both direct-link gains") {
  const PairProblem p = pair_from_config(
      parse_config_text("gamma_m_db = 6\ngamma_n_db = -3\ngamma_d_db = 0\n"));
  CHECK(p.ch.gamma_m == near(3.9810717055349722));
  CHECK(p.ch.gamma_n == near(0.50118723362727224));
  CHECK(p.ch.gamma_d == near(1.0));
  CHECK(p.ch.gamma_si == 0.0);  // absent -> no self-interference
  CHECK(p.p_bs == near(1000.0));
  CHECK(p.p_d_max == near(1000.0));
  CHECK(p.mode == SolveMode::ModeSelect);

  const std::string msg = message_of(
      [] { pair_from_config(parse_config_text("gamma_m_db = 6\n")); });
  CHECK(msg.find("gamma_n_db") != std::string::npos);
}

TEST_CASE("pair configs keep the strong/weak labeling convention") {
  const PairProblem p = pair_from_config(
      parse_config_text("gamma_m_db = -3\ngamma_n_db = 6\n"));
  CHECK(p.ch.gamma_m >= p.ch.gamma_n);
}

TEST_CASE("network configs parse explicit user gains and forbid sweep lists") {
  const NetworkProblem np = network_from_config(
      parse_config_text("user_gains_db = 0, 3, 6\nmode = fd\n"));
  REQUIRE(np.user_gains.size() == 3);
  CHECK(np.user_gains[0] == near(1.0));
  CHECK(np.user_gains[1] == near(1.9952623149688795));
  CHECK(np.user_gains[2] == near(3.9810717055349722));
  CHECK(np.scenario.mode == SolveMode::FD);

  CHECK_THROWS_AS(network_from_config(parse_config_text("p_bs_dbm = 10,20\n")),
                  ConfigError);
}

TEST_CASE("verify configs control instances, tolerances, and grid resolution") {
  const VerifyRun d = verify_from_config({});
  CHECK(d.spec.instances == 500);
  CHECK(d.spec.sum_tol == 1e-4);
  CHECK(d.spec.boundary_tol == 1e-6);
  CHECK(d.run_hd);
  CHECK(d.run_fd);

  const VerifyRun v = verify_from_config(parse_config_text(
      "instances = 100\nmode = fd\ntol = 2e-4\ngrid_alpha_points = 301\n"
      "grid_pd_points = 201\ngrid_refine_rounds = 2\ngrid_refine_shrink = 0.1\n"));
  CHECK(v.spec.instances == 100);
  CHECK_FALSE(v.run_hd);
  CHECK(v.run_fd);
  CHECK(v.spec.sum_tol == 2e-4);
  CHECK(v.spec.grid.alpha_points == 301);
  CHECK(v.spec.grid.pd_points == 201);
  CHECK(v.spec.grid.refine_rounds == 2);
  CHECK(v.spec.grid.refine_shrink == 0.1);

  CHECK_THROWS_AS(verify_from_config(parse_config_text("grid_refine_shrink = 1.5\n")),
                  ConfigError);
  CHECK_THROWS_AS(verify_from_config(parse_config_text("instances = 0\n")),
                  ConfigError);
  CHECK_THROWS_AS(verify_from_config(parse_config_text("trials = 10\n")),
                  ConfigError);  // not a verify key
}

TEST_CASE("bench configs validate the timed cell sizes") {
  const BenchRun d = bench_from_config({});
  CHECK(d.k_values == std::vector<int>{10, 20, 50, 100, 150, 200, 250});
  CHECK(d.reps == 5);

  const BenchRun b = bench_from_config(
      parse_config_text("bench_k = 4, 8, 16\nbench_reps = 7\n"));
  CHECK(b.k_values == std::vector<int>{4, 8, 16});
  CHECK(b.reps == 7);

  CHECK_THROWS_AS(bench_from_config(parse_config_text("bench_k = 501\n")),
                  ConfigError);
  CHECK_THROWS_AS(bench_from_config(parse_config_text("bench_k = 0\n")),
                  ConfigError);
  CHECK_THROWS_AS(bench_from_config(parse_config_text("bench_reps = 4\n")),
                  ConfigError);
}
