#pragma once

#include "liesde/rng.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace liesde {

/// Multiple Stratonovich integrals of one step, with origin at the step start.
///
/// Channel 0 is time. Only the increments, the Levy area L_12 = J_12 - J_21
/// and the time-areas I_i = J_{i0} are stored; every other double integral
/// needed by the steppers follows from them.
struct StepNoise {
  int d = 1;
  double h = 0.0;
  std::array<double, 2> dW{};
  double L12 = 0.0;
  std::array<double, 2> I{};

  static StepNoise zero(int d, double h = 0.0);

  /// J_i for i in 0..d (J_0 = h).
  double J(int i) const { return i == 0 ? h : dW[static_cast<std::size_t>(i - 1)]; }
  /// J_ij for i, j in 0..d.
  double J(int i, int j) const;
  /// Antisymmetric area L_ij for channels i, j in 1..d.
  double L(int i, int j) const;
};

/// Number of trigonometric modes in the Levy-area expansion.
inline constexpr int kLevyModes = 10;

/// Draws one step. `normals` is any object with `double next()` returning
/// independent standard normals.
///
/// Levy area: truncated Fourier expansion of the Brownian bridge with
/// kLevyModes modes. The tail is topped up so that the conditional second
/// moment of L_12 given the increments is exact. The time-areas use the same
/// bridge coefficients and are exact in law.
template <class NormalSource>
StepNoise sample_step(NormalSource& normals, double h, int d) {
  if (!(h > 0.0)) throw std::invalid_argument("step length must be positive");
  if (d != 1 && d != 2) throw std::invalid_argument("channel count must be 1 or 2");
  StepNoise n = StepNoise::zero(d, h);
  const double sqh = std::sqrt(h);
  for (int i = 0; i < d; ++i) n.dW[static_cast<std::size_t>(i)] = sqh * normals.next();
  if (d == 1) {
    n.I[0] = 0.5 * h * n.dW[0] + std::sqrt(h * h * h / 12.0) * normals.next();
    return n;
  }

  constexpr double pi = std::numbers::pi;
  double tail_sum = pi * pi / 6.0;  // sum_{k > p} 1/k^2
  std::array<double, 2> a_sum{};
  double bilinear = 0.0;
  for (int k = 1; k <= kLevyModes; ++k) {
    const double s = sqh / (pi * k * std::numbers::sqrt2);
    const double a1 = s * normals.next();
    const double a2 = s * normals.next();
    const double b1 = s * normals.next();
    const double b2 = s * normals.next();
    a_sum[0] += a1;
    a_sum[1] += a2;
    bilinear += k * (a1 * b2 - b1 * a2);
    tail_sum -= 1.0 / (static_cast<double>(k) * k);
  }
  // Remainders sum_{k > p} a_ik, one per channel.
  const double tail_a_sd = std::sqrt(h * tail_sum / (2.0 * pi * pi));
  for (std::size_t i = 0; i < 2; ++i) a_sum[i] += tail_a_sd * normals.next();
  const double linear = a_sum[1] * n.dW[0] - a_sum[0] * n.dW[1];
  const double tail_bilinear_sd = std::sqrt(2.0 * h * h * tail_sum / (pi * pi));
  n.L12 = 2.0 * linear + 2.0 * pi * bilinear + tail_bilinear_sd * normals.next();
  for (std::size_t i = 0; i < 2; ++i) n.I[i] = 0.5 * h * n.dW[i] - h * a_sum[i];
  return n;
}

/// Integrals over the concatenation of two adjacent intervals (a then b).
StepNoise chain(const StepNoise& a, const StepNoise& b);

/// One driving path presented at several dyadic resolutions.
///
/// levels[0] is the coarsest grid with N steps; levels[l] has N * 2^l steps.
/// Only the finest level is sampled, every coarser one is built by chain().
struct PathHierarchy {
  double T = 0.0;
  int N = 0;
  int d = 1;
  std::uint64_t seed = 0;
  std::uint32_t path = 0;
  std::vector<std::vector<StepNoise>> levels;

  int depth() const { return static_cast<int>(levels.size()); }
  const std::vector<StepNoise>& finest() const { return levels.back(); }
};

/// Largest number of finest-level steps build_hierarchy accepts.
inline constexpr std::int64_t kMaxFineSteps = std::int64_t{1} << 26;

PathHierarchy build_hierarchy(std::uint64_t seed, std::uint32_t path, double T, int N, int levels,
                              int d);

/// Coarsens a step sequence by chaining consecutive pairs.
std::vector<StepNoise> coarsen(const std::vector<StepNoise>& fine);

/// Binary format: magic "LIESDEPH", then T (f64), N, levels, d, seed, path
/// (u64 each), then per level and step: h, dW1, dW2, L12, I1, I2 (f64).
/// Everything little-endian.
void write_hierarchy(std::ostream& out, const PathHierarchy& ph);
PathHierarchy read_hierarchy(std::istream& in);

}  // namespace liesde
