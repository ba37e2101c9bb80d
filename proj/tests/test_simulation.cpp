#include <doctest.h>

#include "auvctl/metrics.hpp"
#include "auvctl/simulation.hpp"

using namespace auvctl;
using doctest::Approx;

static Scenario short_case1(double duration = 20.0) {
  Scenario s = case1_scenario();
  s.duration = duration;
  return s;
}

TEST_CASE("log grid and length") {
  Scenario s = short_case1(1.0);
  const SimLog log = run_scenario(s);
  CHECK(log.records.size() == static_cast<std::size_t>(std::floor(1.0 / 7e-3)) + 1);
  for (std::size_t k = 0; k < log.records.size(); ++k) CHECK(log.records[k].t == static_cast<double>(k) * 7e-3);
  CHECK(s.sample_count() == log.records.size());
}

TEST_CASE("runs are bit-identical") {
  Scenario s = short_case1(5.0);
  s.disturbance.noise = Vec4::Constant(0.5);
  s.disturbance.seed = 9;
  const SimLog a = run_scenario(s), b = run_scenario(s);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].eta == b.records[k].eta);
    CHECK(a.records[k].tau_bar == b.records[k].tau_bar);
    CHECK(a.records[k].eps == b.records[k].eps);
  }
}

TEST_CASE("vehicle at a constant reference stays put") {
  for (auto kind : {ControllerKind::BsIsmc, ControllerKind::BsIsmcTde}) {
    Scenario s = short_case1(5.0);
    s.controller = kind;
    s.disturbance = DisturbanceSpec{};
    const Vec4 pose(1.0, -2.0, 3.0, 0.4);
    for (int i = 0; i < 4; ++i) s.trajectory.axes[i] = AxisSignal{{}, 0.0, pose(i)};
    s.initial = {pose, Vec4::Zero()};
    if (kind == ControllerKind::BsIsmcTde) s.tde.mbar0 = earth_inertia(s.params, 0.4).diagonal();
    const SimLog log = run_scenario(s);
    CHECK_FALSE(log.unstable);
    double worst = 0.0;
    for (const auto& r : log.records) worst = std::max(worst, r.e.cwiseAbs().maxCoeff());
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("case 1 with TDE converges to a small residual") {
  const SimLog log = run_scenario(short_case1(100.0));
  CHECK_FALSE(log.unstable);
  const Metrics m = compute_metrics(log);
  CHECK(m.final_half.max_abs < 0.1 * m.full.max_abs);
  CHECK(log.records.front().lemma_norm < 1.0);
}

TEST_CASE("case 2 adaptive run grows Mbar") {
  Scenario s = case2_scenario();
  s.duration = 40.0;
  const SimLog log = run_scenario(s);
  CHECK_FALSE(log.unstable);
  for (const auto& r : log.records) CHECK((r.mbar.array() >= s.tde.mbar_min).all());
  CHECK((log.records.back().mbar.array() > s.tde.mbar0.array()).all());
}

TEST_CASE("first TDE samples are warmup") {
  const SimLog log = run_scenario(short_case1(0.1));
  CHECK(log.records[0].tde_warmup);
  CHECK(log.records[1].tde_warmup);
  CHECK_FALSE(log.records[2].tde_warmup);
  CHECK(log.records[0].p_tilde.isZero(0.0));
  CHECK(log.records[0].eps.isZero(0.0));
}

TEST_CASE("control is held for the delay when L spans several steps") {
  Scenario s = short_case1(1.0);
  s.tde.delay = 2 * s.Ts;
  const SimLog log = run_scenario(s);
  for (std::size_t k = 0; k + 1 < log.records.size(); k += 2) {
    CHECK(log.records[k].tau_bar == log.records[k + 1].tau_bar);
  }
  CHECK(log.records[2].tau_bar != log.records[1].tau_bar);
}

TEST_CASE("body-frame force channel") {
  const SimLog log = run_scenario(short_case1(0.5));
  for (const auto& r : log.records) {
    CHECK((r.tau - to_body(EarthForce{r.tau_bar}, r.eta(3)).value).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("divergence aborts with a flag") {
  Scenario s = short_case1(10.0);
  s.divergence_limit = 0.05;
  const SimLog log = run_scenario(s);
  CHECK(log.unstable);
  CHECK(log.diagnostic.find("diverged at t=") == 0);
  CHECK(log.records.size() < s.sample_count());
}

TEST_CASE("invalid scenarios are rejected with every violation") {
  Scenario s = case1_scenario();
  s.Ts = 0.002;
  s.tde.delay = 0.005;
  s.gains.phi = 0.0;
  const auto v = s.violations();
  CHECK(v.size() == 2);
  CHECK_THROWS_AS(run_scenario(s), std::invalid_argument);
}

TEST_CASE("uncertainty changes only the plant") {
  Scenario a = short_case1(10.0), b = a;
  b.uncertainty.inertia = 0.2;
  b.uncertainty.damping = 0.2;
  const SimLog la = run_scenario(a), lb = run_scenario(b);
  CHECK(la.records[0].tau_bar == lb.records[0].tau_bar);
  CHECK(la.records.back().eta != lb.records.back().eta);
  CHECK(lb.records.back().lemma_norm != la.records.back().lemma_norm);
}
