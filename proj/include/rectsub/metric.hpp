#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "rectsub/config.hpp"
#include "rectsub/expr.hpp"

namespace rectsub {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense rank-3 array with uniform extent.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}
  int extent() const { return n_; }
  double& operator()(int a, int b, int c) { return data_[(a * n_ + b) * n_ + c]; }
  double operator()(int a, int b, int c) const { return data_[(a * n_ + b) * n_ + c]; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}
  int extent() const { return n_; }
  double& operator()(int a, int b, int c, int d) { return data_[((a * n_ + b) * n_ + c) * n_ + d]; }
  double operator()(int a, int b, int c, int d) const { return data_[((a * n_ + b) * n_ + c) * n_ + d]; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// Metric components and their first two coordinate derivatives at a point.
/// dg(i, j, k) = d_k g_ij and d2g(i, j, k, l) = d_k d_l g_ij.
struct MetricAtPoint {
  Vector point;
  Matrix g;
  Tensor3 dg;
  Tensor4 d2g;
  int order = 0;  // highest derivative order available

  int dim() const { return static_cast<int>(g.rows()); }
};

/// Components V^i at a point and, when present, jacobian(i, j) = d_j V^i.
struct VectorAtPoint {
  Vector components;
  std::optional<Matrix> jacobian;
};

/// Builds a MetricAtPoint from row-major m*m jets of order >= 2 (or lower,
/// which limits the available operations).
MetricAtPoint metric_from_jets(std::span<const Jet> jets, int dim, Vector point);

/// Symmetric metric given by m x m expressions over the chart coordinates.
class MetricField {
 public:
  MetricField() = default;
  /// `components` is row-major m*m; only the lower triangle is read and the
  /// upper triangle mirrors it.
  MetricField(int dim, std::vector<Expression> components);

  static MetricField euclidean(int dim);

  int dim() const { return dim_; }
  const Expression& component(int i, int j) const;

  /// Row-major m*m jets of g_ij evaluated at the given coordinate jets.
  std::vector<Jet> jets(std::span<const Jet> coordinates) const;
  MetricAtPoint at(std::span<const double> point, int order = 2) const;

 private:
  int dim_ = 0;
  std::vector<Expression> components_;
};

/// Vector field V^i(x) over the chart coordinates.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Expression> components);

  int dim() const { return static_cast<int>(components_.size()); }
  const Expression& component(int i) const { return components_[i]; }

  std::vector<Jet> jets(std::span<const Jet> coordinates) const;
  Vector value(std::span<const double> point) const;
  /// Components and jacobian at the point.
  VectorAtPoint at(std::span<const double> point) const;

 private:
  std::vector<Expression> components_;
};

/// Inverse of an SPD matrix by Cholesky; SingularMetric when a pivot falls
/// below spd_tol.
Matrix spd_inverse(const Matrix& g, double spd_tol);

/// Levi-Civita symbols gamma(k, i, j) = Gamma^k_ij.
Tensor3 christoffel(const MetricAtPoint& metric, const Tolerances& tol = {});

/// dgamma(k, i, j, l) = d_l Gamma^k_ij; needs second metric derivatives.
Tensor4 christoffel_derivative(const MetricAtPoint& metric, const Tolerances& tol = {});

/// R(l, k, i, j) with R(X, Y)Z = R^l_kij Z^k X^i Y^j and
/// R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
Tensor4 riemann_tensor(const MetricAtPoint& metric, const Tolerances& tol = {});

Vector apply_riemann(const Tensor4& r, const Vector& x, const Vector& y, const Vector& z);

/// (nabla_X V)^k = X^i d_i V^k + Gamma^k_ij X^i V^j.
Vector covariant_derivative(const MetricAtPoint& metric, const VectorAtPoint& v, const Vector& x,
                            const Tolerances& tol = {});
Vector covariant_derivative(const Tensor3& gamma, const VectorAtPoint& v, const Vector& x);

Vector riemann(const MetricAtPoint& metric, const Vector& x, const Vector& y, const Vector& z,
               const Tolerances& tol = {});

/// g(R(u, v)v, u) / (g(u,u) g(v,v) - g(u,v)^2).
double sectional_curvature(const MetricAtPoint& metric, const Vector& u, const Vector& v,
                           const Tolerances& tol = {});
double sectional_curvature(const Tensor4& r, const Matrix& g, const Vector& u, const Vector& v,
                           const Tolerances& tol = {});

}  // namespace rectsub
