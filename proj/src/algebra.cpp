#include "liesde/algebra.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace liesde {

namespace {

constexpr double kSmallAngle = 1e-4;
constexpr double kSeriesAngle = 0.1;

void require_same(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.kind() != b.kind()) {
    throw std::invalid_argument("algebra elements from different Lie algebras");
  }
}

// Coefficients of the closed forms in t = |theta|, with Taylor branches below kSmallAngle.
double sinc(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0;
  }
  return std::sin(t) / t;
}

double one_minus_cos_over_t2(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 40320.0;
  }
  const double s = std::sin(0.5 * t) / t;
  return 2.0 * s * s;
}

// Cancels badly near zero, so the series is used up to kSeriesAngle.
double one_minus_sinc_over_t2(double t) {
  if (t < kSeriesAngle) {
    const double t2 = t * t;
    return 1.0 / 6.0 -
           t2 * (1.0 / 120.0 - t2 * (1.0 / 5040.0 - t2 * (1.0 / 362880.0 - t2 / 39916800.0)));
  }
  return (1.0 - std::sin(t) / t) / (t * t);
}

}  // namespace

SE3Group SE3Group::operator*(const SE3Group& other) const {
  SE3Group out;
  out.s.m = s.m * other.s.m;
  out.rho = s.m * other.rho + rho;
  return out;
}

Mat4 SE3Group::matrix() const {
  Mat4 out = Mat4::Identity();
  out.topLeftCorner<3, 3>() = s.m;
  out.topRightCorner<3, 1>() = rho;
  return out;
}

AlgebraElement::AlgebraElement(const So3& x) : kind_(AlgebraKind::so3) {
  c_.head<3>() = x.v;
}

AlgebraElement::AlgebraElement(const Se3& x) : kind_(AlgebraKind::se3) {
  c_.head<3>() = x.theta;
  c_.tail<3>() = x.zeta;
}

AlgebraElement AlgebraElement::zero(AlgebraKind kind) {
  return kind == AlgebraKind::so3 ? AlgebraElement(So3{}) : AlgebraElement(Se3{});
}

So3 AlgebraElement::as_so3() const {
  if (kind_ != AlgebraKind::so3) throw std::invalid_argument("element is not in so(3)");
  return So3{c_.head<3>()};
}

Se3 AlgebraElement::as_se3() const {
  if (kind_ != AlgebraKind::se3) throw std::invalid_argument("element is not in se(3)");
  return Se3{c_.head<3>(), c_.tail<3>()};
}

Eigen::MatrixXd AlgebraElement::matrix() const {
  if (kind_ == AlgebraKind::so3) return hat(c_.head<3>());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m.topLeftCorner(3, 3) = hat(c_.head<3>());
  m.topRightCorner(3, 1) = c_.tail<3>();
  return m;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same(*this, rhs);
  c_ += rhs.c_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same(*this, rhs);
  c_ -= rhs.c_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
  c_ *= s;
  return *this;
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v(2), v(1),
       v(2), 0.0, -v(0),
       -v(1), v(0), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  if (a.kind() == AlgebraKind::so3) {
    return So3{a.as_so3().v.cross(b.as_so3().v)};
  }
  const Se3 x = a.as_se3();
  const Se3 y = b.as_se3();
  return Se3{x.theta.cross(y.theta), x.theta.cross(y.zeta) - y.theta.cross(x.zeta)};
}

Rot3 exp_so3(const So3& theta) {
  const double t = theta.v.norm();
  const Mat3 k = hat(theta.v);
  return Rot3{Mat3::Identity() + sinc(t) * k + one_minus_cos_over_t2(t) * k * k};
}

Mat3 f_theta(const So3& theta) {
  const double t = theta.v.norm();
  const Mat3 k = hat(theta.v);
  return Mat3::Identity() + one_minus_cos_over_t2(t) * k + one_minus_sinc_over_t2(t) * k * k;
}

SE3Group exp_se3(const Se3& sigma) {
  const So3 theta{sigma.theta};
  return SE3Group{exp_so3(theta), f_theta(theta) * sigma.zeta};
}

GroupElement exp_alg(const AlgebraElement& sigma) {
  if (sigma.kind() == AlgebraKind::so3) return exp_so3(sigma.as_so3());
  return exp_se3(sigma.as_se3());
}

double bernoulli(int k) {
  static constexpr std::array<double, 11> table = {
      1.0, -1.0 / 2.0, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0, 0.0, 5.0 / 66.0};
  if (k < 0 || k >= static_cast<int>(table.size())) {
    throw std::out_of_range("Bernoulli numbers are tabulated for 0 <= k <= 10");
  }
  return table[static_cast<std::size_t>(k)];
}

AlgebraElement dexpinv(const AlgebraElement& sigma, const AlgebraElement& xi, int order) {
  require_same(sigma, xi);
  if (order < 0) throw std::invalid_argument("dexpinv order must be nonnegative");
  AlgebraElement sum = xi;
  AlgebraElement term = xi;  // ad_sigma^k xi
  double factorial = 1.0;
  for (int k = 1; k <= order; ++k) {
    term = bracket(sigma, term);
    factorial *= k;
    const double b = bernoulli(k);
    if (b != 0.0) sum += (b / factorial) * term;
  }
  return sum;
}

}  // namespace liesde
