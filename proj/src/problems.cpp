#include "liesde/problems.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace liesde {

State QuadraticProblem::derivative(int i, const State& y, const State& w) const {
  return bilinear(i, w, y) + bilinear(i, y, w);
}

State QuadraticProblem::compose(int i, int j, const State& y) const {
  return derivative(j, y, field(i, y));
}

State QuadraticProblem::compose3(int i, int j, int k, const State& y) const {
  const State vi = field(i, y);
  const State vj = field(j, y);
  // D^2 V_k[V_i, V_j] + D V_k[V_i V_j]
  return bilinear(k, vi, vj) + bilinear(k, vj, vi) + derivative(k, y, compose(i, j, y));
}

Vec3 A_map(const Vec3& y, const Vec3& z, const Vec3& alpha, const Vec3& beta) {
  return Vec3((y(1) * z(2) / alpha(1) - y(2) * z(1) / alpha(2)) / beta(0),
              (y(2) * z(0) / alpha(2) - y(0) * z(2) / alpha(0)) / beta(1),
              (y(0) * z(1) / alpha(0) - y(1) * z(0) / alpha(1)) / beta(2));
}

Constants3 default_rigid_body_alpha() {
  return {Vec3(3.0, 1.0, 2.0), Vec3(1.0, 0.5, 1.5), Vec3(0.25, 1.0, 0.5)};
}

Constants3 default_auv_beta() {
  return {Vec3(2.0, 2.0 / 3.0, 3.0), Vec3(1.5, 3.0, 0.5), Vec3(1.0 / 3.0, 2.0, 4.0)};
}

namespace {

Constants3 reciprocals(const Constants3& c, const char* what) {
  Constants3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (!(c[i](k) > 0.0) || !std::isfinite(c[i](k))) {
        throw std::invalid_argument(std::string(what) + " constants must be positive and finite");
      }
    }
    out[i] = c[i].cwiseInverse();
  }
  return out;
}

void check_channels(int d) {
  if (d != 1 && d != 2) throw std::invalid_argument("channel count must be 1 or 2");
}

void check_index(int i, int d) {
  if (i < 0 || i > d) throw std::out_of_range("field index out of range");
}

std::string format_row(const Vec3& v) {
  std::ostringstream os;
  os.precision(17);
  os << v(0) << ' ' << v(1) << ' ' << v(2);
  return os.str();
}

std::string format_state(const State& y) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index k = 0; k < y.size(); ++k) os << (k ? " " : "") << y(k);
  return os.str();
}

double defect(double value, double reference) {
  if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
  return std::abs(value - reference);
}

}  // namespace

RigidBodyProblem::RigidBodyProblem(int d, bool normalize, Constants3 alpha)
    : d_(d), normalize_(normalize), alpha_(alpha), inv_alpha_(reciprocals(alpha, "alpha")) {
  check_channels(d);
  y0_ = Vec3(std::sqrt(2.0), std::sqrt(2.0), 0.0);
  if (normalize_) y0_ /= y0_.norm();
}

RigidBodyProblem::RigidBodyProblem(int d, const Vec3& y0, Constants3 alpha)
    : d_(d), normalize_(false), alpha_(alpha), inv_alpha_(reciprocals(alpha, "alpha")), y0_(y0) {
  check_channels(d);
}

const Vec3& RigidBodyProblem::inv_alpha(int i) const {
  check_index(i, d_);
  return inv_alpha_[static_cast<std::size_t>(i)];
}

State RigidBodyProblem::bilinear(int i, const State& a, const State& b) const {
  const Vec3 xb = inv_alpha(i).cwiseProduct(b.head<3>());
  return xb.cross(a.head<3>());
}

AlgebraElement RigidBodyProblem::xi(int i, const State& y) const {
  return So3{inv_alpha(i).cwiseProduct(y.head<3>())};
}

AlgebraElement RigidBodyProblem::vv_o(int i, int j, const State& y, bool bracket_correction) const {
  check_index(i, d_);
  check_index(j, d_);
  const Vec3 yy = y.head<3>();
  AlgebraElement out = So3{A_map(yy, yy, alpha_[static_cast<std::size_t>(i)],
                                 alpha_[static_cast<std::size_t>(j)])};
  if (bracket_correction) out -= 0.5 * bracket(xi(i, y), xi(j, y));
  return out;
}

State RigidBodyProblem::act(const State& y, const GroupElement& g) const {
  const auto* r = std::get_if<Rot3>(&g);
  if (r == nullptr) throw std::invalid_argument("rigid body is acted on by SO(3)");
  return r->m * y.head<3>();
}

std::vector<double> RigidBodyProblem::manifold_defects(const State& y) const {
  return {defect(y.norm(), y0_.norm())};
}

std::vector<std::string> RigidBodyProblem::describe() const {
  std::vector<std::string> out{"problem=" + name(), "normalize=" + std::string(normalize_ ? "1" : "0"),
                               "y0=" + format_state(y0_)};
  for (std::size_t i = 0; i < 3; ++i) {
    out.push_back("alpha" + std::to_string(i) + "=" + format_row(alpha_[i]));
  }
  return out;
}

AuvProblem::AuvProblem(int d, Constants3 alpha, Constants3 beta)
    : d_(d),
      alpha_(alpha),
      beta_(beta),
      inv_alpha_(reciprocals(alpha, "inertia")),
      inv_beta_(reciprocals(beta, "mass")) {
  check_channels(d);
  const double r2 = std::sqrt(2.0);
  y0_.resize(6);
  y0_ << r2, r2, 0.0, 0.0, r2, r2;
}

State AuvProblem::bilinear(int i, const State& a, const State& b) const {
  check_index(i, d_);
  const auto k = static_cast<std::size_t>(i);
  const Vec3 pi_a = a.head<3>();
  const Vec3 p_a = a.tail<3>();
  const Vec3 omega_b = inv_alpha_[k].cwiseProduct(b.head<3>());
  const Vec3 u_b = inv_beta_[k].cwiseProduct(b.tail<3>());
  State out(6);
  out.head<3>() = pi_a.cross(omega_b) + p_a.cross(u_b);
  out.tail<3>() = p_a.cross(omega_b);
  return out;
}

AlgebraElement AuvProblem::xi(int i, const State& y) const {
  check_index(i, d_);
  const auto k = static_cast<std::size_t>(i);
  return Se3{-inv_alpha_[k].cwiseProduct(y.head<3>()), -inv_beta_[k].cwiseProduct(y.tail<3>())};
}

AlgebraElement AuvProblem::vv_o(int i, int j, const State& y, bool bracket_correction) const {
  check_index(i, d_);
  check_index(j, d_);
  const auto a = static_cast<std::size_t>(i);
  const auto b = static_cast<std::size_t>(j);
  const Vec3 pi = y.head<3>();
  const Vec3 p = y.tail<3>();
  AlgebraElement out = Se3{A_map(pi, pi, alpha_[a], alpha_[b]) + A_map(p, p, beta_[a], alpha_[b]),
                           A_map(pi, p, alpha_[a], beta_[b])};
  if (bracket_correction) out -= 0.5 * bracket(xi(i, y), xi(j, y));
  return out;
}

State AuvProblem::act(const State& y, const GroupElement& g) const {
  const auto* S = std::get_if<SE3Group>(&g);
  if (S == nullptr) throw std::invalid_argument("underwater vehicle is acted on by SE(3)");
  const Vec3 sp = S->s.m * y.tail<3>();
  State out(6);
  out.head<3>() = S->s.m * y.head<3>() + S->rho.cross(sp);
  out.tail<3>() = sp;
  return out;
}

double AuvProblem::casimir1(const State& y) { return y.head<3>().dot(y.tail<3>()); }

double AuvProblem::casimir2(const State& y) { return y.tail<3>().squaredNorm(); }

std::vector<double> AuvProblem::manifold_defects(const State& y) const {
  return {defect(casimir1(y), casimir1(y0_)), defect(casimir2(y), casimir2(y0_))};
}

std::vector<std::string> AuvProblem::describe() const {
  std::vector<std::string> out{"problem=" + name(), "y0=" + format_state(y0_)};
  for (std::size_t i = 0; i < 3; ++i) {
    out.push_back("alpha" + std::to_string(i) + "=" + format_row(alpha_[i]));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    out.push_back("beta" + std::to_string(i) + "=" + format_row(beta_[i]));
  }
  return out;
}

std::unique_ptr<Problem> make_problem(const std::string& id, bool normalize) {
  if (id == "rigidbody") return std::make_unique<RigidBodyProblem>(2, normalize);
  if (id == "rigidbody1") return std::make_unique<RigidBodyProblem>(1, normalize);
  if (id == "auv") return std::make_unique<AuvProblem>(2);
  throw std::invalid_argument("unknown problem '" + id + "'");
}

}  // namespace liesde
