#pragma once

#include "liesde/noise.hpp"
#include "liesde/problem.hpp"

#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace liesde {

enum class Method {
  st_half,  ///< order-1/2 stochastic Taylor
  st_1,     ///< order-1 stochastic Taylor (with Levy area)
  st_32,    ///< order-3/2 stochastic Taylor with mean corrections, d = 1
  mk_half,  ///< order-1/2 stochastic Munthe-Kaas
  mk_1,     ///< order-1 stochastic Taylor Munthe-Kaas
  cg_half,  ///< order-1/2 exponential Lie series, exponentiated by RK4
  cg_1,     ///< order-1 Castell-Gaines, exponentiated by RK4
  uls_1,    ///< uniformly accurate Lie series psi^(1), d = 1
  uls_32,   ///< uniformly accurate Lie series psi^(3/2), d = 1
};

struct MethodOptions {
  /// Adds J_ii V_i V_i to the order-1/2 Taylor step.
  bool include_diagonal_half = false;
  /// 0 drops the bracket correction of dexp^{-1} in the Munthe-Kaas step.
  int dexpinv_order = 1;
  /// RK4 substeps for the Lie-series exponentiation; 0 selects 1 for
  /// order <= 1 schemes and 2 for order 3/2.
  int ode_substeps = 0;
};

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
/// Whether the method only supports one Wiener channel.
bool requires_single_channel(Method m);
/// Nominal strong order of the method.
double nominal_order(Method m);

State step_st_half(const Problem& P, const State& y, const StepNoise& n, bool include_diagonal = false);
State step_st_1(const Problem& P, const State& y, const StepNoise& n);
State step_st_32(const Problem& P, const State& y, const StepNoise& n);
State step_mk_half(const Problem& P, const State& y, const StepNoise& n);
State step_mk_1(const Problem& P, const State& y, const StepNoise& n, int dexpinv_order = 1);
State step_cg_half(const Problem& P, const State& y, const StepNoise& n, int ode_substeps = 1);
State step_cg_1(const Problem& P, const State& y, const StepNoise& n, int ode_substeps = 1);

enum class UlsVariant { order_1, order_32 };
State step_uls(const Problem& P, const State& y, const StepNoise& n, UlsVariant variant,
               int ode_substeps);

/// The d = 1 bracket [V_1, [V_1, V_0]] at y.
State double_bracket_110(const Problem& P, const State& y);
/// V_1^4 applied to the identity, by central differencing of V_1^3 along V_1.
State fourth_power_1(const Problem& P, const State& y);

/// Integrates u' = field(u) over [0, 1] with classical RK4.
State flow_rk4(const std::function<State(const State&)>& field, const State& u0, int substeps);

/// Checks method/problem/noise compatibility; throws std::invalid_argument.
void validate(Method m, const Problem& P, const MethodOptions& opt);

State step(Method m, const Problem& P, const State& y, const StepNoise& n,
           const MethodOptions& opt = {});

/// Applies step() along a noise sequence. The observer, if set, sees the
/// state after every step (1-based step count).
State integrate(Method m, const Problem& P, const State& y0, std::span<const StepNoise> noise,
                const MethodOptions& opt = {},
                const std::function<void(std::size_t, const State&)>& observer = {});

}  // namespace liesde
