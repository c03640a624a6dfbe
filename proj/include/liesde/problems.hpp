#pragma once

#include "liesde/problem.hpp"

#include <array>
#include <memory>
#include <string>

namespace liesde {

using Constants3 = std::array<Vec3, 3>;

/// A(y, z; alpha, beta)_k = ((alpha^{-1} y) x z)_k / beta_k, componentwise.
Vec3 A_map(const Vec3& y, const Vec3& z, const Vec3& alpha, const Vec3& beta);

/// Rows alpha_{i,.} of the rigid-body constant table, i = 0, 1, 2.
Constants3 default_rigid_body_alpha();
/// Mass constants beta_{i,.} for the underwater vehicle.
Constants3 default_auv_beta();

/// Free rigid body on the sphere of radius |y0| with V_i(y) = xi_i(y) y,
/// xi_i(y) = hat(y_k / alpha_{i,k}). With d = 1 only fields 0 and 1 are used.
class RigidBodyProblem final : public QuadraticProblem {
 public:
  RigidBodyProblem(int d = 2, bool normalize = false, Constants3 alpha = default_rigid_body_alpha());
  RigidBodyProblem(int d, const Vec3& y0, Constants3 alpha = default_rigid_body_alpha());

  std::string name() const override { return d_ == 2 ? "rigidbody" : "rigidbody1"; }
  int dim() const override { return 3; }
  int channels() const override { return d_; }
  State initial_state() const override { return y0_; }

  AlgebraElement xi(int i, const State& y) const override;
  AlgebraElement vv_o(int i, int j, const State& y, bool bracket_correction = true) const override;
  State act(const State& y, const GroupElement& g) const override;

  std::vector<double> manifold_defects(const State& y) const override;
  std::vector<std::string> defect_names() const override { return {"norm"}; }
  std::vector<std::string> describe() const override;

  const Constants3& alpha() const { return alpha_; }
  bool normalized() const { return normalize_; }

 protected:
  State bilinear(int i, const State& a, const State& b) const override;

 private:
  const Vec3& inv_alpha(int i) const;

  int d_;
  bool normalize_;
  Constants3 alpha_;
  Constants3 inv_alpha_;
  State y0_;
};

/// Ellipsoidal underwater vehicle on se(3)*: y = (pi, p),
/// V_i(y) = ad*_{xi_i(y)} y = (pi x omega_i + p x u_i, p x omega_i) with
/// omega_i = I_i^{-1} pi, u_i = M_i^{-1} p. The group acts by the coadjoint
/// action and the algebra hook is -xi_i(y).
class AuvProblem final : public QuadraticProblem {
 public:
  explicit AuvProblem(int d = 2, Constants3 alpha = default_rigid_body_alpha(),
                      Constants3 beta = default_auv_beta());

  std::string name() const override { return "auv"; }
  int dim() const override { return 6; }
  int channels() const override { return d_; }
  State initial_state() const override { return y0_; }

  AlgebraElement xi(int i, const State& y) const override;
  AlgebraElement vv_o(int i, int j, const State& y, bool bracket_correction = true) const override;
  State act(const State& y, const GroupElement& g) const override;

  std::vector<double> manifold_defects(const State& y) const override;
  std::vector<std::string> defect_names() const override { return {"casimir1", "casimir2"}; }
  std::vector<std::string> describe() const override;

  static double casimir1(const State& y);
  static double casimir2(const State& y);

 protected:
  State bilinear(int i, const State& a, const State& b) const override;

 private:
  int d_;
  Constants3 alpha_;
  Constants3 beta_;
  Constants3 inv_alpha_;
  Constants3 inv_beta_;
  State y0_;
};

/// Builds a problem by id: "rigidbody", "rigidbody1" or "auv".
std::unique_ptr<Problem> make_problem(const std::string& id, bool normalize = false);

}  // namespace liesde
