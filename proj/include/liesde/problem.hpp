#pragma once

#include "liesde/algebra.hpp"

#include <string>
#include <vector>

namespace liesde {

/// State vector; never heap-allocates (dimension is at most 6).
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 6, 1>;

/// An autonomous Stratonovich SDE  dy = sum_{i=0}^d V_i(y) o dW^i  whose
/// fields are fundamental for a matrix Lie group action.
///
/// Composition convention: compose(i, j, y) is the operator product
/// V_i V_j applied to the identity, i.e. the derivative of V_j along V_i.
/// compose3(i, j, k, y) = V_i V_j V_k likewise.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  /// Number of Wiener channels d; fields are indexed 0..d.
  virtual int channels() const = 0;
  virtual State initial_state() const = 0;

  virtual State field(int i, const State& y) const = 0;
  virtual State compose(int i, int j, const State& y) const = 0;
  virtual State compose3(int i, int j, int k, const State& y) const = 0;

  /// Algebra element whose infinitesimal action at y is V_i(y).
  virtual AlgebraElement xi(int i, const State& y) const = 0;
  /// Second-order pulled-back composition v_{xi_i} v_{xi_j} at the algebra
  /// origin, anchored at y. Without the bracket correction dexp^{-1} is
  /// replaced by the identity.
  virtual AlgebraElement vv_o(int i, int j, const State& y, bool bracket_correction = true) const = 0;
  virtual State act(const State& y, const GroupElement& g) const = 0;
  virtual GroupElement exp_alg(const AlgebraElement& sigma) const { return liesde::exp_alg(sigma); }

  /// Invariant defects relative to the initial state; zero on the exact flow.
  virtual std::vector<double> manifold_defects(const State& y) const = 0;
  virtual std::vector<std::string> defect_names() const = 0;

  /// "key=value" lines describing the constants, for result-file headers.
  virtual std::vector<std::string> describe() const = 0;
};

/// Problems whose fields are quadratic, V_i(y) = Q_i(y, y) with Q_i bilinear.
/// Derivatives of every order follow from Q_i alone.
class QuadraticProblem : public Problem {
 public:
  State field(int i, const State& y) const override { return bilinear(i, y, y); }
  State compose(int i, int j, const State& y) const override;
  State compose3(int i, int j, int k, const State& y) const override;

  /// DV_i(y)[w].
  State derivative(int i, const State& y, const State& w) const;

 protected:
  virtual State bilinear(int i, const State& a, const State& b) const = 0;
};

}  // namespace liesde
