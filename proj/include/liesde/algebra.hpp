#pragma once

#include <Eigen/Dense>

#include <variant>

namespace liesde {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Element of so(3) in hat-map coordinates.
struct So3 {
  Vec3 v = Vec3::Zero();
};

/// Element of se(3): rotational part theta, translational part zeta.
struct Se3 {
  Vec3 theta = Vec3::Zero();
  Vec3 zeta = Vec3::Zero();
};

/// Rotation matrix in SO(3).
struct Rot3 {
  Mat3 m = Mat3::Identity();
};

/// Rigid motion (s, rho) in SE(3).
struct SE3Group {
  Rot3 s;
  Vec3 rho = Vec3::Zero();

  SE3Group operator*(const SE3Group& other) const;
  Mat4 matrix() const;
};

enum class AlgebraKind { so3, se3 };

/// Element of so(3) or se(3) stored in minimal coordinates.
///
/// Linear combinations and brackets require both operands to live in the
/// same algebra; mixing them throws std::invalid_argument.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(const So3& x);  // NOLINT(google-explicit-constructor)
  AlgebraElement(const Se3& x);  // NOLINT(google-explicit-constructor)

  static AlgebraElement zero(AlgebraKind kind);

  AlgebraKind kind() const { return kind_; }
  int size() const { return kind_ == AlgebraKind::so3 ? 3 : 6; }
  const Vec6& coords() const { return c_; }

  So3 as_so3() const;
  Se3 as_se3() const;

  /// Embedded matrix (3x3 hat for so(3), 4x4 block form for se(3)).
  Eigen::MatrixXd matrix() const;
  double norm() const { return c_.norm(); }

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(double s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }

 private:
  AlgebraKind kind_ = AlgebraKind::so3;
  Vec6 c_ = Vec6::Zero();
};

using GroupElement = std::variant<Rot3, SE3Group>;

Mat3 hat(const Vec3& v);
Vec3 vee(const Mat3& m);

/// Lie bracket [a, b] (matrix commutator in the embedded representation).
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

Rot3 exp_so3(const So3& theta);

/// The matrix f(theta) mapping translational coordinates under exp_se3.
Mat3 f_theta(const So3& theta);

SE3Group exp_se3(const Se3& sigma);

GroupElement exp_alg(const AlgebraElement& sigma);

/// Bernoulli number B_k for 0 <= k <= 10 (convention B_1 = -1/2).
double bernoulli(int k);

/// Truncated inverse right-trivialised tangent of exp:
/// sum_{k=0}^{order} B_k / k! ad_sigma^k xi.
AlgebraElement dexpinv(const AlgebraElement& sigma, const AlgebraElement& xi, int order);

}  // namespace liesde
