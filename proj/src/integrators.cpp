#include "liesde/integrators.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace liesde {

namespace {

struct MethodInfo {
  Method method;
  std::string_view name;
  bool single_channel;
  double order;
};

constexpr std::array<MethodInfo, 9> kMethods = {{
    {Method::st_half, "sthalf", false, 0.5},
    {Method::st_1, "st1", false, 1.0},
    {Method::st_32, "st32", true, 1.5},
    {Method::mk_half, "mkhalf", false, 0.5},
    {Method::mk_1, "mk1", false, 1.0},
    {Method::cg_half, "cghalf", false, 0.5},
    {Method::cg_1, "cg1", false, 1.0},
    {Method::uls_1, "uls1", true, 1.0},
    {Method::uls_32, "uls32", true, 1.5},
}};

const MethodInfo& info(Method m) {
  for (const auto& mi : kMethods) {
    if (mi.method == m) return mi;
  }
  throw std::invalid_argument("unknown method");
}

void check_noise(const Problem& P, const StepNoise& n) {
  if (n.d != P.channels()) {
    throw std::invalid_argument("noise has " + std::to_string(n.d) + " channels, problem has " +
                                std::to_string(P.channels()));
  }
}

void check_single(const Problem& P) {
  if (P.channels() != 1) throw std::invalid_argument("method requires a single Wiener channel");
}

int substeps_or(int requested, int fallback) { return requested > 0 ? requested : fallback; }

// sum_{i=0}^d J_i V_i(u)
State first_order_sum(const Problem& P, const State& u, const StepNoise& n) {
  State out = n.h * P.field(0, u);
  for (int i = 1; i <= P.channels(); ++i) out += n.J(i) * P.field(i, u);
  return out;
}

}  // namespace

std::string_view method_name(Method m) { return info(m).name; }

Method parse_method(std::string_view name) {
  for (const auto& mi : kMethods) {
    if (mi.name == name) return mi.method;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

bool requires_single_channel(Method m) { return info(m).single_channel; }

double nominal_order(Method m) { return info(m).order; }

State step_st_half(const Problem& P, const State& y, const StepNoise& n, bool include_diagonal) {
  check_noise(P, n);
  State out = y + first_order_sum(P, y, n);
  if (include_diagonal) {
    for (int i = 1; i <= P.channels(); ++i) out += n.J(i, i) * P.compose(i, i, y);
  }
  return out;
}

State step_st_1(const Problem& P, const State& y, const StepNoise& n) {
  check_noise(P, n);
  State out = y + first_order_sum(P, y, n);
  for (int i = 1; i <= P.channels(); ++i) {
    for (int j = 1; j <= P.channels(); ++j) out += n.J(i, j) * P.compose(i, j, y);
  }
  return out;
}

State fourth_power_1(const Problem& P, const State& y) {
  const State v = P.field(1, y);
  const double vn = v.norm();
  if (vn == 0.0) return State::Zero(y.size());
  const double scale = std::max(1.0, y.norm());
  const double eps = std::cbrt(std::numeric_limits<double>::epsilon()) * scale / vn;
  const State yp = y + eps * v;
  const State ym = y - eps * v;
  return (P.compose3(1, 1, 1, yp) - P.compose3(1, 1, 1, ym)) / (2.0 * eps);
}

State step_st_32(const Problem& P, const State& y, const StepNoise& n) {
  check_single(P);
  check_noise(P, n);
  const double h = n.h;
  const double w = n.dW[0];
  State out = y + h * P.field(0, y) + w * P.field(1, y);
  out += n.J(1, 1) * P.compose(1, 1, y);
  out += n.J(0, 1) * P.compose(0, 1, y) + n.J(1, 0) * P.compose(1, 0, y);
  out += (w * w * w / 6.0) * P.compose3(1, 1, 1, y);
  // Deterministic h^2 terms: J_00 exactly, and the expectations of
  // J_011, J_110 (h^2/4) and J_1111 (h^2/8).
  out += n.J(0, 0) * P.compose(0, 0, y);
  out += (h * h / 4.0) * (P.compose3(0, 1, 1, y) + P.compose3(1, 1, 0, y));
  out += (h * h / 8.0) * fourth_power_1(P, y);
  return out;
}

State step_mk_half(const Problem& P, const State& y, const StepNoise& n) {
  check_noise(P, n);
  AlgebraElement sigma = n.h * P.xi(0, y);
  for (int i = 1; i <= P.channels(); ++i) sigma += n.J(i) * P.xi(i, y);
  return P.act(y, P.exp_alg(sigma));
}

State step_mk_1(const Problem& P, const State& y, const StepNoise& n, int dexpinv_order) {
  check_noise(P, n);
  if (dexpinv_order < 0) throw std::invalid_argument("dexpinv order must be nonnegative");
  const bool correction = dexpinv_order >= 1;
  AlgebraElement sigma = n.h * P.xi(0, y);
  for (int i = 1; i <= P.channels(); ++i) sigma += n.J(i) * P.xi(i, y);
  for (int i = 1; i <= P.channels(); ++i) {
    for (int j = 1; j <= P.channels(); ++j) sigma += n.J(i, j) * P.vv_o(i, j, y, correction);
  }
  return P.act(y, P.exp_alg(sigma));
}

State flow_rk4(const std::function<State(const State&)>& field, const State& u0, int substeps) {
  if (substeps < 1) throw std::invalid_argument("ODE substeps must be >= 1");
  const double dt = 1.0 / substeps;
  State u = u0;
  for (int s = 0; s < substeps; ++s) {
    const State k1 = field(u);
    const State k2 = field(u + 0.5 * dt * k1);
    const State k3 = field(u + 0.5 * dt * k2);
    const State k4 = field(u + dt * k3);
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

State step_cg_half(const Problem& P, const State& y, const StepNoise& n, int ode_substeps) {
  check_noise(P, n);
  return flow_rk4([&](const State& u) { return first_order_sum(P, u, n); }, y, ode_substeps);
}

State step_cg_1(const Problem& P, const State& y, const StepNoise& n, int ode_substeps) {
  check_noise(P, n);
  const bool two = P.channels() == 2;
  return flow_rk4(
      [&](const State& u) {
        State psi = first_order_sum(P, u, n);
        if (two) psi += (0.5 * n.L12) * (P.compose(1, 2, u) - P.compose(2, 1, u));
        return psi;
      },
      y, ode_substeps);
}

State double_bracket_110(const Problem& P, const State& y) {
  return P.compose3(1, 1, 0, y) - 2.0 * P.compose3(1, 0, 1, y) + P.compose3(0, 1, 1, y);
}

State step_uls(const Problem& P, const State& y, const StepNoise& n, UlsVariant variant,
               int ode_substeps) {
  check_single(P);
  check_noise(P, n);
  const double h2_12 = n.h * n.h / 12.0;
  const double area = variant == UlsVariant::order_32 ? 0.5 * (n.J(0, 1) - n.J(1, 0)) : 0.0;
  return flow_rk4(
      [&](const State& u) {
        State psi = first_order_sum(P, u, n) + h2_12 * double_bracket_110(P, u);
        if (area != 0.0) psi += area * (P.compose(0, 1, u) - P.compose(1, 0, u));
        return psi;
      },
      y, ode_substeps);
}

void validate(Method m, const Problem& P, const MethodOptions& opt) {
  if (requires_single_channel(m) && P.channels() != 1) {
    throw std::invalid_argument("method " + std::string(method_name(m)) +
                                " requires a single-channel problem");
  }
  if (opt.dexpinv_order < 0) throw std::invalid_argument("dexpinv order must be nonnegative");
  if (opt.ode_substeps < 0) throw std::invalid_argument("ODE substeps must be nonnegative");
}

State step(Method m, const Problem& P, const State& y, const StepNoise& n, const MethodOptions& opt) {
  switch (m) {
    case Method::st_half: return step_st_half(P, y, n, opt.include_diagonal_half);
    case Method::st_1: return step_st_1(P, y, n);
    case Method::st_32: return step_st_32(P, y, n);
    case Method::mk_half: return step_mk_half(P, y, n);
    case Method::mk_1: return step_mk_1(P, y, n, opt.dexpinv_order);
    case Method::cg_half: return step_cg_half(P, y, n, substeps_or(opt.ode_substeps, 1));
    case Method::cg_1: return step_cg_1(P, y, n, substeps_or(opt.ode_substeps, 1));
    case Method::uls_1:
      return step_uls(P, y, n, UlsVariant::order_1, substeps_or(opt.ode_substeps, 1));
    case Method::uls_32:
      return step_uls(P, y, n, UlsVariant::order_32, substeps_or(opt.ode_substeps, 2));
  }
  throw std::invalid_argument("unknown method");
}

State integrate(Method m, const Problem& P, const State& y0, std::span<const StepNoise> noise,
                const MethodOptions& opt,
                const std::function<void(std::size_t, const State&)>& observer) {
  validate(m, P, opt);
  State y = y0;
  for (std::size_t k = 0; k < noise.size(); ++k) {
    y = step(m, P, y, noise[k], opt);
    if (observer) observer(k + 1, y);
  }
  return y;
}

}  // namespace liesde
