#include "liesde/noise.hpp"
#include "liesde/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace liesde;

TEST_CASE("Philox4x32-10 known answers") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::block(C{0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal streams are reproducible and distinct") {
  NormalStream a(StreamId{1, 2, 3, 4}), b(StreamId{1, 2, 3, 4}), c(StreamId{1, 2, 3, 5});
  bool all_same = true;
  for (int k = 0; k < 64; ++k) {
    const double x = a.next();
    CHECK(x == b.next());
    all_same = all_same && x == c.next();
  }
  CHECK_FALSE(all_same);
}

TEST_CASE("normal stream moments") {
  NormalStream s(StreamId{9, 0, 0, 0});
  const int n = 200000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int k = 0; k < n; ++k) {
    const double x = s.next();
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  CHECK(std::abs(m1 / n) < 3.0 * std::sqrt(1.0 / n));
  CHECK(std::abs(m2 / n - 1.0) < 3.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(m4 / n - 3.0) < 3.0 * std::sqrt(96.0 / n));
}

TEST_CASE("double-integral identities") {
  StepNoise n = StepNoise::zero(2, 0.25);
  n.dW = {0.3, -0.7};
  n.L12 = 0.11;
  n.I = {0.02, -0.05};
  CHECK(n.J(0) == 0.25);
  CHECK(n.J(2) == -0.7);
  CHECK(n.J(0, 0) == doctest::Approx(0.25 * 0.25 / 2));
  CHECK(n.J(1, 1) == doctest::Approx(0.3 * 0.3 / 2));
  CHECK(n.J(0, 1) + n.J(1, 0) == doctest::Approx(0.25 * 0.3));
  CHECK(n.J(0, 2) + n.J(2, 0) == doctest::Approx(0.25 * -0.7));
  CHECK(n.J(1, 2) + n.J(2, 1) == doctest::Approx(0.3 * -0.7));
  CHECK(n.J(1, 2) - n.J(2, 1) == doctest::Approx(0.11));
  CHECK(n.L(2, 1) == -0.11);
  CHECK(n.L(1, 1) == 0.0);

  // L12 = dW1 dW2 makes J21 vanish.
  n.L12 = n.dW[0] * n.dW[1];
  CHECK(n.J(2, 1) == 0.0);
  CHECK(n.J(1, 2) == doctest::Approx(n.dW[0] * n.dW[1]));
}

TEST_CASE("chain hand example") {
  StepNoise a = StepNoise::zero(2, 1.0), b = StepNoise::zero(2, 1.0);
  a.dW = {1.0, 0.0};
  a.I = {0.7, 0.0};
  b.dW = {0.0, 1.0};
  const StepNoise c = chain(a, b);
  CHECK(c.h == 2.0);
  CHECK(c.dW == std::array<double, 2>{1.0, 1.0});
  CHECK(c.L12 == 1.0);
  CHECK(c.I[0] == doctest::Approx(1.7));
  CHECK(c.I[1] == 0.0);
  CHECK_THROWS_AS(chain(a, StepNoise::zero(1, 1.0)), std::invalid_argument);
}

namespace {

// Midpoint sums over a given sequence of fine increments.
StepNoise sums(const std::vector<std::array<double, 2>>& dw, double dt) {
  StepNoise n = StepNoise::zero(2, dt * static_cast<double>(dw.size()));
  double w[2] = {0, 0};
  for (const auto& inc : dw) {
    n.L12 += w[0] * inc[1] - w[1] * inc[0];
    for (int i = 0; i < 2; ++i) {
      n.I[static_cast<std::size_t>(i)] += (w[i] + 0.5 * inc[static_cast<std::size_t>(i)]) * dt;
      w[i] += inc[static_cast<std::size_t>(i)];
    }
  }
  n.dW = {w[0], w[1]};
  return n;
}

}  // namespace

TEST_CASE("chain reproduces integrals over concatenated intervals") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  const double dt = 1e-3;
  std::vector<std::array<double, 2>> first(300), second(500);
  for (auto& v : first) v = {normal(rng) * 0.03, normal(rng) * 0.03};
  for (auto& v : second) v = {normal(rng) * 0.03, normal(rng) * 0.03};
  std::vector<std::array<double, 2>> all(first);
  all.insert(all.end(), second.begin(), second.end());
  const StepNoise c = chain(sums(first, dt), sums(second, dt));
  const StepNoise w = sums(all, dt);
  CHECK(c.h == doctest::Approx(w.h).epsilon(1e-14));
  CHECK(c.L12 == doctest::Approx(w.L12).epsilon(1e-12));
  CHECK(c.I[0] == doctest::Approx(w.I[0]).epsilon(1e-12));
  CHECK(c.I[1] == doctest::Approx(w.I[1]).epsilon(1e-12));
}

TEST_CASE("chain is associative") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 100; ++k) {
    const StepNoise a = oracle::fine_sum(rng, 0.1, 2, 20);
    const StepNoise b = oracle::fine_sum(rng, 0.2, 2, 20);
    const StepNoise c = oracle::fine_sum(rng, 0.3, 2, 20);
    const StepNoise l = chain(chain(a, b), c), r = chain(a, chain(b, c));
    CHECK(std::abs(l.L12 - r.L12) < 1e-15);
    CHECK(std::abs(l.I[0] - r.I[0]) < 1e-15);
    CHECK(std::abs(l.I[1] - r.I[1]) < 1e-15);
    CHECK(std::abs(l.dW[0] - r.dW[0]) < 1e-15);
  }
}

namespace {

struct ZeroNormals {
  double next() { return 0.0; }
};
struct UnitNormals {
  double next() { return 1.0; }
};

}  // namespace

TEST_CASE("sample_step with injected normals") {
  ZeroNormals z;
  const StepNoise n = sample_step(z, 0.5, 2);
  CHECK(n.h == 0.5);
  CHECK(n.dW == std::array<double, 2>{0.0, 0.0});
  CHECK(n.L12 == 0.0);
  CHECK(n.I == std::array<double, 2>{0.0, 0.0});

  UnitNormals u;
  const double h = 0.25;
  const StepNoise one = sample_step(u, h, 1);
  CHECK(one.d == 1);
  CHECK(one.dW[0] == doctest::Approx(0.5));
  CHECK(one.I[0] == doctest::Approx(h * 0.5 / 2 + std::sqrt(h * h * h / 12)));
  CHECK(one.dW[1] == 0.0);

  CHECK_THROWS_AS(sample_step(z, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(sample_step(z, 0.1, 3), std::invalid_argument);
}

TEST_CASE("sampled step moments") {
  const double h = 0.5;
  const int n = 200000;
  std::vector<double> dw2(n), l2(n), i2(n), idw(n), l2w2(n), ldwi(n), l(n);
  for (int k = 0; k < n; ++k) {
    NormalStream s(StreamId{5, static_cast<std::uint32_t>(k), 0, 0});
    const StepNoise x = sample_step(s, h, 2);
    dw2[k] = x.dW[0] * x.dW[0];
    l[k] = x.L12;
    l2[k] = x.L12 * x.L12;
    i2[k] = x.I[0] * x.I[0];
    idw[k] = x.I[0] * x.dW[0];
    l2w2[k] = x.L12 * x.L12 * x.dW[0] * x.dW[0];
    ldwi[k] = x.L12 * x.dW[1] * x.I[0];
  }
  auto within = [&](const std::vector<double>& v, double expected) {
    double m = 0, m2 = 0;
    for (double x : v) {
      m += x;
      m2 += x * x;
    }
    m /= n;
    const double se = std::sqrt((m2 / n - m * m) / n);
    return std::abs(m - expected) < 3.0 * se;
  };
  CHECK(within(dw2, h));
  CHECK(within(l, 0.0));
  CHECK(within(l2, h * h));
  CHECK(within(i2, h * h * h / 3));
  CHECK(within(idw, h * h / 2));
  // Var(L | dW) = h^2/3 + h (dW1^2 + dW2^2)/3 gives E[L^2 dW1^2] = 5h^3/3.
  CHECK(within(l2w2, 5 * h * h * h / 3));
  CHECK(within(ldwi, h * h * h / 6));
}

TEST_CASE("chained fine samples match fine-grid Euler sums") {
  const double h = 1.0;
  const int n = 20000;
  std::mt19937_64 rng(31);
  std::vector<double> a[4], b[4];
  for (auto& v : a) v.reserve(n);
  for (auto& v : b) v.reserve(n);
  for (int k = 0; k < n; ++k) {
    std::vector<StepNoise> steps;
    for (int j = 0; j < 64; ++j) {
      NormalStream s(StreamId{77, static_cast<std::uint32_t>(k), 6, static_cast<std::uint32_t>(j)});
      steps.push_back(sample_step(s, h / 64, 2));
    }
    while (steps.size() > 1) steps = coarsen(steps);
    const StepNoise c = steps[0];
    const StepNoise e = oracle::fine_sum(rng, h, 2, 1000);
    const double cv[4] = {c.L12, c.L12 * c.L12, c.I[0], c.I[0] * c.I[0]};
    const double ev[4] = {e.L12, e.L12 * e.L12, e.I[0], e.I[0] * e.I[0]};
    for (int m = 0; m < 4; ++m) {
      a[m].push_back(cv[m]);
      b[m].push_back(ev[m]);
    }
  }
  auto stats = [&](const std::vector<double>& v) {
    double m = 0, m2 = 0;
    for (double x : v) {
      m += x;
      m2 += x * x;
    }
    m /= n;
    return std::pair{m, (m2 / n - m * m) / n};
  };
  for (int m = 0; m < 4; ++m) {
    const auto [ma, va] = stats(a[m]);
    const auto [mb, vb] = stats(b[m]);
    CAPTURE(m);
    CHECK(std::abs(ma - mb) < 3.0 * std::sqrt(va + vb));
  }
}

TEST_CASE("hierarchy levels are chained from the finest") {
  const PathHierarchy ph = build_hierarchy(3, 1, 1.0, 4, 5, 2);
  REQUIRE(ph.depth() == 5);
  for (int l = 0; l < 5; ++l) CHECK(ph.levels[static_cast<std::size_t>(l)].size() == (4u << l));
  double t = 0;
  for (const auto& s : ph.levels[0]) t += s.h;
  CHECK(t == doctest::Approx(1.0).epsilon(1e-15));
  // Level 2 re-derived from level 4 is bitwise the stored level 2.
  const auto rederived = coarsen(coarsen(ph.levels[4]));
  REQUIRE(rederived.size() == ph.levels[2].size());
  for (std::size_t k = 0; k < rederived.size(); ++k) {
    CHECK(rederived[k].L12 == ph.levels[2][k].L12);
    CHECK(rederived[k].I[1] == ph.levels[2][k].I[1]);
    CHECK(rederived[k].dW[0] == ph.levels[2][k].dW[0]);
  }
  // Increments telescope exactly across levels.
  double w_coarse = 0, w_fine = 0;
  for (const auto& s : ph.levels[0]) w_coarse += s.dW[1];
  for (const auto& s : ph.levels[4]) w_fine += s.dW[1];
  CHECK(w_coarse == doctest::Approx(w_fine).epsilon(1e-13));
}

TEST_CASE("hierarchy is a pure function of (seed, path)") {
  const PathHierarchy a = build_hierarchy(3, 1, 1.0, 4, 3, 2);
  const PathHierarchy b = build_hierarchy(3, 1, 1.0, 4, 3, 2);
  const PathHierarchy c = build_hierarchy(3, 2, 1.0, 4, 3, 2);
  CHECK(a.levels[0][0].L12 == b.levels[0][0].L12);
  CHECK(a.levels[0][0].L12 != c.levels[0][0].L12);
}

TEST_CASE("hierarchy limits") {
  CHECK_THROWS_AS(build_hierarchy(0, 0, 1.0, 1 << 20, 8, 2), std::length_error);
  CHECK_THROWS_AS(build_hierarchy(0, 0, 1.0, 0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_hierarchy(0, 0, -1.0, 1, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(coarsen(std::vector<StepNoise>(3, StepNoise::zero(1, 0.1))), std::invalid_argument);
}

TEST_CASE("hierarchy dump and load round trip") {
  const PathHierarchy a = build_hierarchy(12, 4, 0.5, 2, 3, 2);
  std::stringstream buf;
  write_hierarchy(buf, a);
  const PathHierarchy b = read_hierarchy(buf);
  CHECK(b.T == a.T);
  CHECK(b.N == a.N);
  CHECK(b.seed == 12);
  CHECK(b.path == 4);
  REQUIRE(b.depth() == a.depth());
  for (int l = 0; l < a.depth(); ++l) {
    const auto& x = a.levels[static_cast<std::size_t>(l)];
    const auto& y = b.levels[static_cast<std::size_t>(l)];
    REQUIRE(x.size() == y.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      CHECK(x[k].h == y[k].h);
      CHECK(x[k].dW == y[k].dW);
      CHECK(x[k].L12 == y[k].L12);
      CHECK(x[k].I == y[k].I);
    }
  }
  std::stringstream bad("NOTMAGIC");
  CHECK_THROWS_AS(read_hierarchy(bad), std::runtime_error);
  std::stringstream full;
  write_hierarchy(full, a);
  std::stringstream cut(full.str().substr(0, full.str().size() - 3));
  CHECK_THROWS_AS(read_hierarchy(cut), std::runtime_error);
}
