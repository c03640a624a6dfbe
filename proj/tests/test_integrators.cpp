#include "liesde/harness.hpp"
#include "liesde/integrators.hpp"
#include "liesde/problems.hpp"
#include "diagonal_problem.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace liesde;
using testing_problems::DiagonalLinearProblem;

namespace {

StepNoise noise2(double h, double w1, double w2, double l12 = 0.0, double i1 = 0.0, double i2 = 0.0) {
  StepNoise n = StepNoise::zero(2, h);
  n.dW = {w1, w2};
  n.L12 = l12;
  n.I = {i1, i2};
  return n;
}

StepNoise noise1(double h, double w, double i) {
  StepNoise n = StepNoise::zero(1, h);
  n.dW = {w, 0.0};
  n.I = {i, 0.0};
  return n;
}

const Vec3 y_test(0.0, 1.0, 1.0);

}  // namespace

TEST_CASE("method table") {
  for (Method m : {Method::st_half, Method::st_1, Method::st_32, Method::mk_half, Method::mk_1,
                   Method::cg_half, Method::cg_1, Method::uls_1, Method::uls_32}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("rk4"), std::invalid_argument);
  CHECK(requires_single_channel(Method::uls_32));
  CHECK(requires_single_channel(Method::st_32));
  CHECK_FALSE(requires_single_channel(Method::cg_1));
  CHECK(nominal_order(Method::st_half) == 0.5);
  CHECK(nominal_order(Method::uls_32) == 1.5);
}

TEST_CASE("order-1/2 Taylor step") {
  const RigidBodyProblem P(2);
  CHECK(step_st_half(P, y_test, StepNoise::zero(2, 0.0)) == State(y_test));
  const State euler = step_st_half(P, y_test, noise2(0.01, 0, 0));
  CHECK((euler - (y_test + 0.01 * P.field(0, y_test))).norm() < 1e-16);

  // Fields assembled independently as hat(alpha_i^{-1} y) y.
  const StepNoise n = noise2(0.01, 0.1, -0.2);
  State expected = y_test;
  const double J[3] = {0.01, 0.1, -0.2};
  const auto alpha = default_rigid_body_alpha();
  for (int i = 0; i < 3; ++i) {
    const Vec3 w = y_test.cwiseQuotient(alpha[static_cast<std::size_t>(i)]);
    expected += J[i] * hat(w) * y_test;
  }
  CHECK((step_st_half(P, y_test, n) - expected).norm() < 1e-15);

  const State with_diag = step_st_half(P, y_test, n, true);
  const State diag = 0.5 * 0.01 * P.compose(1, 1, y_test) + 0.5 * 0.04 * P.compose(2, 2, y_test);
  CHECK((with_diag - expected - diag).norm() < 1e-15);
}

TEST_CASE("order-1 Taylor step") {
  const RigidBodyProblem P(2);
  CHECK((step_st_1(P, y_test, noise2(0.02, 0, 0)) - (y_test + 0.02 * P.field(0, y_test))).norm() <
        1e-16);
  // L12 = dW1 dW2: J21 = 0 and the cross terms reduce to J12 V1V2.
  const double w1 = 0.3, w2 = -0.1;
  const State got = step_st_1(P, y_test, noise2(0.02, w1, w2, w1 * w2));
  const State expected = y_test + 0.02 * P.field(0, y_test) + w1 * P.field(1, y_test) +
                         w2 * P.field(2, y_test) + 0.5 * w1 * w1 * P.compose(1, 1, y_test) +
                         w1 * w2 * P.compose(1, 2, y_test) + 0.5 * w2 * w2 * P.compose(2, 2, y_test);
  CHECK((got - expected).norm() < 1e-15);
}

TEST_CASE("order-3/2 Taylor step with zero noise") {
  const RigidBodyProblem P(1);
  const double h = 0.05;
  const State got = step_st_32(P, y_test, noise1(h, 0, 0));
  const State v = P.field(1, y_test);
  const double e = 1e-2;
  auto vvv = [&](const State& u) -> State { return oracle::VVV(P, 1, 1, 1, u); };
  const State v4 = (vvv(y_test - 2 * e * v) - 8.0 * vvv(y_test - e * v) + 8.0 * vvv(y_test + e * v) -
                    vvv(y_test + 2 * e * v)) /
                   (12.0 * e);
  const State expected = y_test + h * P.field(0, y_test) + 0.5 * h * h * P.compose(0, 0, y_test) +
                         0.25 * h * h * (P.compose3(0, 1, 1, y_test) + P.compose3(1, 1, 0, y_test)) +
                         0.125 * h * h * v4;
  CHECK((got - expected).norm() < 1e-9);
  CHECK((fourth_power_1(P, y_test) - v4).norm() / v4.norm() < 1e-5);
  CHECK_THROWS_AS(step_st_32(RigidBodyProblem(2), y_test, noise2(h, 0, 0)), std::invalid_argument);
}

TEST_CASE("Munthe-Kaas steps") {
  const RigidBodyProblem P(2);
  CHECK((step_mk_1(P, y_test, StepNoise::zero(2, 0.0)) - State(y_test)).norm() == 0.0);
  CHECK((step_mk_half(P, y_test, StepNoise::zero(2, 0.0)) - State(y_test)).norm() == 0.0);
  const double h = 0.1;
  const State lie_euler = P.act(y_test, exp_alg(h * P.xi(0, y_test)));
  CHECK((step_mk_1(P, y_test, noise2(h, 0, 0)) - lie_euler).norm() < 1e-15);
  CHECK((step_mk_half(P, y_test, noise2(h, 0, 0)) - lie_euler).norm() < 1e-15);
  CHECK_THROWS_AS(step_mk_1(P, y_test, noise2(h, 0, 0), -1), std::invalid_argument);
  const StepNoise n = noise2(h, 0.3, -0.2, 0.05);
  CHECK((step_mk_1(P, y_test, n, 0) - step_mk_1(P, y_test, n, 1)).norm() > 1e-6);
}

TEST_CASE("Munthe-Kaas steps stay on the manifold for any step size") {
  std::mt19937_64 rng(50);
  const RigidBodyProblem rb(2);
  const AuvProblem auv;
  for (double h : {1e-3, 0.05, 0.5}) {
    for (int k = 0; k < 200; ++k) {
      NormalStream s(StreamId{50, static_cast<std::uint32_t>(k), 0, 0});
      const StepNoise n = sample_step(s, h, 2);
      const State y = oracle::random_state(rng, 3, 2.0);
      const State z = oracle::random_state(rng, 6, 2.0);
      for (Method m : {Method::mk_half, Method::mk_1}) {
        CHECK(std::abs(step(m, rb, y, n).norm() - y.norm()) < 1e-12);
        const State w = step(m, auv, z, n);
        CHECK(std::abs(AuvProblem::casimir1(w) - AuvProblem::casimir1(z)) < 1e-10);
        CHECK(std::abs(AuvProblem::casimir2(w) - AuvProblem::casimir2(z)) < 1e-10);
      }
    }
  }
}

TEST_CASE("Lie-series steps") {
  const RigidBodyProblem P(2);
  CHECK((step_cg_1(P, y_test, StepNoise::zero(2, 0.0)) - State(y_test)).norm() == 0.0);
  CHECK_THROWS_AS(flow_rk4([](const State& u) { return u; }, y_test, 0), std::invalid_argument);
  // RK4 on u' = u over unit time.
  const State e = flow_rk4([](const State& u) -> State { return u; }, Vec3(1, 0, 0), 1);
  CHECK(e(0) == doctest::Approx(1.0 + 1.0 + 0.5 + 1.0 / 6.0 + 1.0 / 24.0));

  const RigidBodyProblem P1(1);
  CHECK_THROWS_AS(step_uls(P, y_test, noise2(0.1, 0, 0), UlsVariant::order_1, 1),
                  std::invalid_argument);
  // Zero noise, variant 1: flow of h V0 + h^2/12 [V1, [V1, V0]] with brackets
  // from the finite-difference oracle.
  const double h = 0.1;
  auto psi = [&](const State& u) -> State {
    const State dbl = oracle::VVV(P1, 1, 1, 0, u) - 2.0 * oracle::VVV(P1, 1, 0, 1, u) +
                      oracle::VVV(P1, 0, 1, 1, u);
    return h * P1.field(0, u) + h * h / 12.0 * dbl;
  };
  const State ref = flow_rk4(psi, y_test, 64);
  const State got = step_uls(P1, y_test, noise1(h, 0, 0), UlsVariant::order_1, 64);
  CHECK((got - ref).norm() < 1e-9);
  CHECK((double_bracket_110(P1, y_test) -
         (oracle::VVV(P1, 1, 1, 0, y_test) - 2.0 * oracle::VVV(P1, 1, 0, 1, y_test) +
          oracle::VVV(P1, 0, 1, 1, y_test)))
            .norm() < 1e-8);
}

TEST_CASE("commuting fields: brackets vanish") {
  const DiagonalLinearProblem P1(1);
  const State y0 = P1.initial_state();
  NormalStream s(StreamId{51, 0, 0, 0});
  const StepNoise n = sample_step(s, 0.1, 1);
  const State a = step_uls(P1, y0, n, UlsVariant::order_1, 1);
  const State b = step_uls(P1, y0, n, UlsVariant::order_32, 1);
  const State c = step_cg_half(P1, y0, n, 1);
  CHECK((a - c).norm() < 1e-15);
  CHECK((b - c).norm() < 1e-15);
  // The exact flow is exp(h D0 + dW D1) y0; the Lie series recovers it up to RK4 error.
  const Eigen::Vector2d expo = (n.h * P1.D(0) + n.dW[0] * P1.D(1)).array().exp();
  const State exact = expo.cwiseProduct(Eigen::Vector2d(y0));
  const State fine = step_uls(P1, y0, n, UlsVariant::order_1, 256);
  CHECK((fine - exact).norm() < 1e-12);
}

TEST_CASE("commuting fields: CG_1 and ST_1 differ at order h^{3/2}") {
  const DiagonalLinearProblem P(2);
  const State y0 = P.initial_state();
  std::vector<double> ratio;
  for (int k = 3; k <= 7; ++k) {
    const double h = std::ldexp(1.0, -k);
    double ss = 0;
    const int S = 2000;
    for (int s = 0; s < S; ++s) {
      NormalStream ns(StreamId{52, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(k), 0});
      const StepNoise n = sample_step(ns, h, 2);
      ss += (step_cg_1(P, y0, n, 1) - step_st_1(P, y0, n)).squaredNorm();
    }
    ratio.push_back(std::sqrt(ss / S) / std::pow(h, 1.5));
  }
  for (double r : ratio) CHECK(r == doctest::Approx(ratio.back()).epsilon(0.25));
}

TEST_CASE("CG_1 and MK_1 per-step difference scales as h^{3/2} on the rigid body") {
  const RigidBodyProblem P(2, true);
  const State y0 = P.initial_state();
  std::vector<double> r15, r2;
  for (int k = 3; k <= 7; ++k) {
    const double h = std::ldexp(1.0, -k);
    double ss = 0;
    const int S = 2000;
    for (int s = 0; s < S; ++s) {
      NormalStream ns(StreamId{53, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(k), 0});
      const StepNoise n = sample_step(ns, h, 2);
      ss += (step_cg_1(P, y0, n, 1) - step_mk_1(P, y0, n, 1)).squaredNorm();
    }
    const double rms = std::sqrt(ss / S);
    r15.push_back(rms / std::pow(h, 1.5));
    r2.push_back(rms / (h * h));
  }
  for (double r : r15) CHECK(r == doctest::Approx(r15.back()).epsilon(0.2));
  // Not O(h^2): the h^2-scaled difference keeps growing as h shrinks.
  CHECK(r2.back() > 3.0 * r2.front());
}

TEST_CASE("local L2 error slopes") {
  auto local_slope = [](Method m, const Problem& P, int samples) {
    std::vector<double> hs, errs;
    for (int k = 4; k <= 8; ++k) {
      const double h = std::ldexp(1.0, -k);
      double ss = 0;
      for (int s = 0; s < samples; ++s) {
        const PathHierarchy ph = build_hierarchy(54, static_cast<std::uint32_t>(s), h, 1, 9, P.channels());
        const State ref = integrate(reference_method(P), P, P.initial_state(), ph.finest());
        ss += (step(m, P, P.initial_state(), ph.levels[0][0]) - ref).squaredNorm();
      }
      hs.push_back(h);
      errs.push_back(std::sqrt(ss / samples));
    }
    // Least-squares slope in log2 coordinates.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const double x = std::log2(hs[i]), y = std::log2(errs[i]);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double n = static_cast<double>(hs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const RigidBodyProblem P2(2, true);
  const RigidBodyProblem P1(1, true);
  CHECK(local_slope(Method::st_1, P2, 1000) == doctest::Approx(1.5).epsilon(0.1));
  CHECK(local_slope(Method::st_32, P1, 1000) == doctest::Approx(2.0).epsilon(0.075));
}

TEST_CASE("integrate and validation") {
  const RigidBodyProblem P(2);
  std::vector<StepNoise> noise(5, noise2(0.01, 0.01, 0.02, 0.0));
  std::size_t seen = 0;
  integrate(Method::st_1, P, y_test, noise, {}, [&](std::size_t k, const State&) { seen = k; });
  CHECK(seen == 5);
  std::vector<StepNoise> wrong(1, noise1(0.01, 0.1, 0.0));
  CHECK_THROWS_AS(integrate(Method::st_1, P, y_test, wrong), std::invalid_argument);
  CHECK_THROWS_AS(validate(Method::uls_1, P, {}), std::invalid_argument);
  MethodOptions bad;
  bad.ode_substeps = -1;
  CHECK_THROWS_AS(validate(Method::cg_1, P, bad), std::invalid_argument);
}
