#include <doctest.h>

#include <numbers>

#include "auvctl/control.hpp"
#include "oracle.hpp"

using namespace auvctl;
using doctest::Approx;

TEST_CASE("tracking error") {
  Reference ref;
  ref.eta = Vec4(1, 2, 3, 0.4);
  ref.eta_dot = Vec4(0.1, 0.2, 0.3, 0.4);
  const TrackingError z = tracking_error(ref.eta, ref.eta_dot, ref);
  CHECK(z.e.isZero(0.0));
  CHECK(z.e_dot.isZero(0.0));

  ref.eta = Vec4(0, 0, 0, -3.1);
  ref.eta_dot.setZero();
  const TrackingError w = tracking_error(Vec4(0, 0, 0, 3.1), Vec4::Zero(), ref);
  CHECK(w.e(3) == Approx(6.2 - 2 * std::numbers::pi));
  CHECK(w.e(3) == Approx(-0.0832).epsilon(1e-3));

  ref.eta = Vec4(0, 2.5, 2, 0.5);
  const TrackingError c = tracking_error(Vec4(0, 1, 2, std::numbers::pi / 4), Vec4::Zero(), ref);
  CHECK(c.e(0) == 0.0);
  CHECK(c.e(1) == Approx(-1.5));
  CHECK(c.e(2) == 0.0);
  CHECK(c.e(3) == Approx(std::numbers::pi / 4 - 0.5));
}

TEST_CASE("angle wrapping range") {
  CHECK(wrap_angle(std::numbers::pi) == Approx(std::numbers::pi));
  CHECK(wrap_angle(-std::numbers::pi) == Approx(std::numbers::pi));
  CHECK(wrap_angle(3 * std::numbers::pi / 2) == Approx(-std::numbers::pi / 2));
  CHECK(wrap_angle(0.3 + 8 * std::numbers::pi) == Approx(0.3));
}

TEST_CASE("sliding surface") {
  const Vec4 k = Vec4::Constant(0.1);
  CHECK(sliding_surface(Vec4::Zero(), Vec4::Zero(), Vec4::Zero(), k, k).isZero(0.0));
  CHECK(sliding_surface(Vec4(1, 0, 0, 0), Vec4::Zero(), Vec4::Zero(), k, k).isApprox(Vec4(0.1, 0, 0, 0)));
  CHECK(sliding_surface(Vec4::Zero(), Vec4(0, 0.2, 0, 0), Vec4(0, 1, 0, 0), k, k)
            .isApprox(Vec4(0, 0.3, 0, 0)));
}

TEST_CASE("sliding surface equals velocity minus virtual control") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 500; ++i) {
    const Vec4 eta_dot = oracle::random_vec(rng, 2), eta_dot_d = oracle::random_vec(rng, 2);
    const Vec4 e = oracle::random_vec(rng, 3), integral = oracle::random_vec(rng, 5);
    const Vec4 k1 = oracle::random_vec(rng, 1).cwiseAbs(), k2 = oracle::random_vec(rng, 1).cwiseAbs();
    const Vec4 virtual_control = eta_dot_d - k1.cwiseProduct(e) - k2.cwiseProduct(integral);
    const Vec4 sigma = sliding_surface(e, eta_dot - eta_dot_d, integral, k1, k2);
    CHECK((sigma - (eta_dot - virtual_control)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("saturation") {
  CHECK(saturation(Vec4::Constant(0.1), 0.2)(0) == Approx(0.1));
  CHECK(saturation(Vec4::Constant(0.5), 0.2)(0) == 1.0);
  CHECK(saturation(Vec4::Constant(-0.5), 0.2)(0) == -1.0);
  // Literal definition: the sgn branch starts at |sigma| = phi.
  CHECK(saturation(Vec4::Constant(0.2), 0.2)(0) == 1.0);
  CHECK(saturation(Vec4::Constant(0.1999), 0.2)(0) == Approx(0.1999));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Vec4 s = oracle::random_vec(rng, 1.0);
    for (auto mode : {SwitchingMode::Saturation, SwitchingMode::Scaled, SwitchingMode::Sign}) {
      CHECK(switching_function(-s, 0.3, mode) == -switching_function(s, 0.3, mode));
    }
  }
}

TEST_CASE("switching modes") {
  const Vec4 s(0.1, -0.3, 0.0, -0.05);
  CHECK(switching_function(s, 0.2, SwitchingMode::Scaled).isApprox(Vec4(0.5, -1.0, 0.0, -0.25)));
  CHECK(switching_function(s, 0.2, SwitchingMode::Sign) == Vec4(1, -1, 0, -1));
}

TEST_CASE("model-based law holds the vehicle at equilibrium") {
  const AuvParams p;
  const Vec4 eta(1, 2, 3, 0.6);
  Reference ref;
  ref.eta = eta;
  const TrackingError err = tracking_error(eta, Vec4::Zero(), ref);
  const EarthForce tau = bs_ismc_control(p, eta, Vec4::Zero(), err, Vec4::Zero(), ref, Gains{});
  CHECK((tau.value - Vec4(0, 0, -481.6, 0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("model-based law matches its definition") {
  std::mt19937_64 rng(12);
  const AuvParams p;
  const Gains g;
  for (int i = 0; i < 200; ++i) {
    const Vec4 eta = oracle::random_vec(rng, 5), eta_dot = oracle::random_vec(rng, 1);
    Reference ref{oracle::random_vec(rng, 5), oracle::random_vec(rng, 1), oracle::random_vec(rng, 0.1)};
    const TrackingError err = tracking_error(eta, eta_dot, ref);
    const Vec4 sigma = sliding_surface(err.e, err.e_dot, oracle::random_vec(rng, 1), g.k1, g.k2);
    const Vec4 tau = bs_ismc_control(p, eta, eta_dot, err, sigma, ref, g).value;
    // The commanded closed loop: plant acceleration under tau equals the bracket.
    const Vec4 a = oracle::body_route_acceleration(p, eta, eta_dot, tau, Vec4::Zero());
    Vec4 sw;
    for (int k = 0; k < 4; ++k) sw(k) = std::abs(sigma(k)) >= g.phi ? (sigma(k) > 0 ? 1.0 : -1.0) : sigma(k);
    const Vec4 want = -g.k1.cwiseProduct(err.e_dot) - (Vec4::Ones() + g.k2).cwiseProduct(err.e) -
                      g.k3.cwiseProduct(sigma) + ref.eta_ddot - g.Gamma.cwiseProduct(sw);
    CHECK((a - want).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("model-based law is unchanged by a horizontal reference shift") {
  const AuvParams p;
  const Gains g;
  const Vec4 eta(0.5, -1, 2, 0.3), eta_dot(0.1, 0.2, -0.1, 0.05), shift(7, -3, 0, 0);
  Reference ref{Vec4(0.2, 0.1, 1.5, 0.1), Vec4(0.1, 0, 0, 0), Vec4(0, 0.01, 0, 0)};
  const TrackingError e1 = tracking_error(eta, eta_dot, ref);
  Reference ref2 = ref;
  ref2.eta += shift;
  const TrackingError e2 = tracking_error(eta + shift, eta_dot, ref2);
  const Vec4 integral(0.1, 0.2, 0.3, 0.4);
  const Vec4 s1 = sliding_surface(e1.e, e1.e_dot, integral, g.k1, g.k2);
  const Vec4 s2 = sliding_surface(e2.e, e2.e_dot, integral, g.k1, g.k2);
  const Vec4 t1 = bs_ismc_control(p, eta, eta_dot, e1, s1, ref, g).value;
  const Vec4 t2 = bs_ismc_control(p, eta + shift, eta_dot, e2, s2, ref2, g).value;
  CHECK((t1 - t2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("delay buffer indexing") {
  CHECK_THROWS_AS(DelayBuffer(0), std::invalid_argument);
  DelayBuffer buf(3);
  CHECK_FALSE(buf.ready());
  CHECK_THROWS_AS(buf.steps_back(1), std::out_of_range);
  for (int k = 0; k < 20; ++k) {
    buf.push({Vec4::Constant(k), Vec4::Zero(), Vec4::Zero()});
    CHECK(buf.ready() == (k >= 5));
    CHECK(buf.steps_back(1).eta(0) == k);
    if (k >= 3) CHECK(buf.steps_back(3).eta(0) == k - 2);
  }
  // The sample used as t - L for eta_now at step k is exactly n steps old.
  CHECK(buf.steps_back(buf.delay_steps()).eta(0) == 17);
  CHECK(buf.steps_back(2 * buf.delay_steps()).eta(0) == 14);
  CHECK(buf.size() == 6);
  CHECK_THROWS_AS(buf.steps_back(7), std::out_of_range);
}

TEST_CASE("delay steps must be an integer multiple") {
  CHECK(delay_steps(7e-3, 7e-3) == 1);
  CHECK(delay_steps(0.004, 0.002) == 2);
  CHECK(delay_steps(0.028, 0.007) == 4);
  try {
    delay_steps(0.005, 0.002);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()) == "L must be integer multiple of Ts");
  }
  CHECK_THROWS_AS(delay_steps(0.001, 0.002), std::invalid_argument);
}

TEST_CASE("TDE estimate during warmup") {
  DelayBuffer buf(1);
  buf.push({Vec4::Ones(), Vec4::Ones(), Vec4::Zero()});
  const TdeEstimate est = tde_estimate(buf, Vec4::Ones(), Vec4::Ones(), 0.01);
  CHECK(est.warmup);
  CHECK(est.p_tilde.isZero(0.0));
}

TEST_CASE("TDE estimate with constant history") {
  DelayBuffer buf(2);
  const Vec4 eta(1, 2, 3, 4), tau(5, 6, 7, 8), N(0.5, 0.25, -1, 2);
  for (int k = 0; k < 4; ++k) buf.push({eta, tau, N});
  const TdeEstimate est = tde_estimate(buf, eta, Vec4(3, 3, 6, 1), 0.02);
  CHECK_FALSE(est.warmup);
  CHECK(est.accel_delayed.isZero(0.0));
  CHECK(est.p_tilde == tau - N);
}

TEST_CASE("TDE second difference is exact on quadratics") {
  const double L = 0.01;
  const Vec4 a(0.5, -2.0, 1.0, 3.0);
  auto eta_at = [&](double t) -> Vec4 { return 0.5 * a * t * t; };
  DelayBuffer buf(1);
  const double t = 1.0;
  buf.push({eta_at(t - 2 * L), Vec4::Zero(), Vec4::Zero()});
  buf.push({eta_at(t - L), Vec4::Zero(), Vec4::Zero()});
  const TdeEstimate est = tde_estimate(buf, eta_at(t), Vec4::Ones(), L);
  CHECK((est.accel_delayed - a).cwiseAbs().maxCoeff() < 1e-8);
}

// Scalar plant Mbar x'' + N + p(t) = tau(t) with p = sin t, tau = cos 2t, N = 0,
// Mbar = 1, so x(t) = -cos(2t)/4 + sin(t) is known in closed form.
static double tde_error_sup(double L) {
  auto x = [](double t) { return -std::cos(2 * t) / 4 + std::sin(t); };
  auto tau = [](double t) { return std::cos(2 * t); };
  double sup = 0.0;
  for (double t = 2 * L; t <= 10.0; t += 0.01) {
    DelayBuffer buf(1);
    buf.push({Vec4::Constant(x(t - 2 * L)), Vec4::Constant(tau(t - 2 * L)), Vec4::Zero()});
    buf.push({Vec4::Constant(x(t - L)), Vec4::Constant(tau(t - L)), Vec4::Zero()});
    const TdeEstimate est = tde_estimate(buf, Vec4::Constant(x(t)), Vec4::Ones(), L);
    sup = std::max(sup, std::abs(std::sin(t) - est.p_tilde(0)));
  }
  return sup;
}

TEST_CASE("TDE error halves when the delay halves") {
  const double e1 = tde_error_sup(0.04), e2 = tde_error_sup(0.02), e3 = tde_error_sup(0.01);
  CHECK(e1 / e2 >= 1.5);
  CHECK(e1 / e2 <= 2.5);
  CHECK(e2 / e3 >= 1.5);
  CHECK(e2 / e3 <= 2.5);
}

TEST_CASE("TDE law: warmup fallback and delayed-input form") {
  const Gains g;
  const Vec4 mbar(3, 3, 6, 1), N(0.1, 0.2, -481.6, 0.0);
  Reference ref{Vec4(0, 2.5, 2, 0.5), Vec4(0.16, 0, 0.02, -0.005), Vec4(0, -0.001, 0, 0)};
  const TrackingError err = tracking_error(Vec4(0, 1, 2, 0.78), Vec4::Zero(), ref);
  const Vec4 sigma = sliding_surface(err.e, err.e_dot, Vec4::Zero(), g.k1, g.k2);
  const Vec4 cmd = commanded_acceleration(err, sigma, ref, g);

  const EarthForce warm = bs_ismc_tde_control(N, err, sigma, ref, g, mbar, TdeEstimate{});
  CHECK((warm.value - (N + mbar.cwiseProduct(cmd))).cwiseAbs().maxCoeff() < 1e-12);

  DelayBuffer buf(1);
  const DelayedSample s2{Vec4(0, 0.99, 2, 0.77), Vec4(1, 2, 3, 4), Vec4(0, 0, -480, 0)};
  const DelayedSample s1{Vec4(0, 0.995, 2, 0.775), Vec4(2, 1, 4, 3), Vec4(0.1, 0, -481, 0)};
  buf.push(s2);
  buf.push(s1);
  const Vec4 eta_now(0, 1, 2, 0.78);
  const double L = 7e-3;
  const TdeEstimate est = tde_estimate(buf, eta_now, mbar, L);
  const Vec4 accel = (eta_now - 2 * s1.eta + s2.eta) / (L * L);
  const Vec4 want = s1.tau_bar + mbar.cwiseProduct(cmd - accel) + N - s1.N;
  const Vec4 got = bs_ismc_tde_control(N, err, sigma, ref, g, mbar, est).value;
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-9 * want.cwiseAbs().maxCoeff());
}

TEST_CASE("adaptive Mbar step") {
  const Vec4 G = Vec4::Ones(), alpha = Vec4::Constant(0.01), mbar(1, 2, 3, 4);
  CHECK(adaptive_mbar_step(mbar, Vec4::Zero(), G, alpha, 0.002, 1e-3) == mbar);

  const Vec4 out = adaptive_mbar_step(Vec4::Ones(), Vec4::Constant(0.5), G, alpha, 0.002, 1e-3);
  CHECK(out(0) == Approx(1.0 + 0.002 * (0.5 - 0.01 * 0.5)));
  CHECK(out(0) == Approx(1.00099));

  // Signed law: positive sigma drives a tiny Mbar down; |sigma| variant: either sign does.
  const Vec4 clamped = adaptive_mbar_step(Vec4::Constant(2e-3), Vec4::Constant(5.0), G, Vec4::Constant(10.0),
                                          0.01, 1e-3);
  CHECK(clamped == Vec4::Constant(1e-3));
  const Vec4 clamped_abs = adaptive_mbar_step(Vec4::Constant(2e-3), Vec4::Constant(-5.0), G, Vec4::Constant(10.0),
                                              0.01, 1e-3, true);
  CHECK(clamped_abs == Vec4::Constant(1e-3));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Vec4 m = oracle::random_vec(rng, 1).cwiseAbs() + Vec4::Constant(1e-3);
    const Vec4 s = oracle::random_vec(rng, 3);
    for (bool abs_sigma : {false, true}) {
      const Vec4 next = adaptive_mbar_step(m, s, G, alpha, 0.01, 1e-3, abs_sigma);
      CHECK((next.array() >= 1e-3).all());
      // Larger Gamma never lowers the result.
      const Vec4 more = adaptive_mbar_step(m, s, 2 * G, alpha, 0.01, 1e-3, abs_sigma);
      CHECK((more.array() >= next.array()).all());
    }
  }
}

TEST_CASE("adaptive step with the absolute-sigma variant") {
  const Vec4 out = adaptive_mbar_step(Vec4::Ones(), Vec4::Constant(-0.5), Vec4::Ones(), Vec4::Constant(0.01),
                                      0.002, 1e-3, true);
  CHECK(out(0) == Approx(1.0 + 0.002 * (0.5 - 0.005)));
  const Vec4 literal = adaptive_mbar_step(Vec4::Ones(), Vec4::Constant(-0.5), Vec4::Ones(), Vec4::Constant(0.01),
                                          0.002, 1e-3, false);
  CHECK(literal(0) == Approx(1.0 + 0.002 * (0.5 + 0.005)));
}

TEST_CASE("lemma condition") {
  const AuvParams p;
  const Mat4 M = earth_inertia(p, 0.0);
  const Vec4 diag = M.diagonal();

  const LemmaResult exact = lemma_condition(M, diag);
  CHECK(exact.norm < 1e-10);
  CHECK(exact.satisfied);

  const LemmaResult twice = lemma_condition(M, 2 * diag);
  CHECK(twice.norm == Approx(1.0));

  const Vec4 mbar(3, 3, 6, 1);
  const Vec4 m = oracle::inertia_diag(p);
  double expected = 0.0;
  for (int i = 0; i < 4; ++i) expected = std::max(expected, std::abs(1 - mbar(i) / m(i)));
  const LemmaResult r = lemma_condition(M, mbar);
  CHECK(r.norm == Approx(expected).epsilon(1e-12));
  CHECK(r.norm == Approx(0.945).epsilon(1e-3));
  CHECK(r.satisfied);

  // Zero only at Mbar = M.
  CHECK(lemma_condition(M, diag + Vec4(1e-6, 0, 0, 0)).norm > 1e-10);
}

TEST_CASE("controller update interval and integral clamp") {
  const AuvParams p;
  TdeConfig tde;
  tde.delay = 0.004;
  CHECK(Controller(ControllerKind::BsIsmc, p, Gains{}, tde, 0.002).update_interval() == 1);
  CHECK(Controller(ControllerKind::BsIsmcTde, p, Gains{}, tde, 0.002).update_interval() == 2);
  tde.delay = 0.005;
  CHECK_THROWS_AS(Controller(ControllerKind::BsIsmcTde, p, Gains{}, tde, 0.002), std::invalid_argument);

  Gains g;
  g.integral_clamp = 0.5;
  tde.delay = 0.01;
  Controller c(ControllerKind::BsIsmc, p, g, tde, 0.01);
  Reference ref;
  const PlantState x{Vec4(100, -100, 0, 0), Vec4::Zero()};
  for (int k = 0; k < 100; ++k) {
    c.step(ref, x);
    c.commit(x, {});
  }
  CHECK(c.error_integral() == Vec4(0.5, -0.5, 0, 0));
  CHECK(c.buffer().size() == 0);
}

TEST_CASE("controller trapezoidal integral") {
  TdeConfig tde;
  tde.delay = 0.1;
  Controller c(ControllerKind::BsIsmc, AuvParams{}, Gains{}, tde, 0.1);
  Reference ref;
  c.step(ref, {Vec4(1, 0, 0, 0), Vec4::Zero()});
  c.step(ref, {Vec4(3, 0, 0, 0), Vec4::Zero()});
  CHECK(c.error_integral()(0) == Approx(0.2));
}
