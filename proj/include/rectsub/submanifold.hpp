#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rectsub/config.hpp"
#include "rectsub/metric.hpp"

namespace rectsub {

/// Axis-aligned box of per-variable intervals.
struct Box {
  std::vector<std::pair<double, double>> intervals;

  int dim() const { return static_cast<int>(intervals.size()); }
  bool contains(std::span<const double> point) const;
};

/// Psi: parameter box in R^n -> ambient chart of dimension m, 1 <= n < m.
struct Immersion {
  int n = 0;
  int m = 0;
  std::vector<Expression> components;  // Psi^a over the parameter variables
  Box domain;

  Vector position(std::span<const double> u) const;
};

/// Jets in the parameter variables at one parameter point.
struct ImmersionJets {
  Vector u;
  std::vector<Jet> psi;        // m, order 3
  std::vector<Jet> tangent;    // m*n, d_i Psi^a at [a*n + i], order 2
  std::vector<Jet> ambient_g;  // m*m, g~_ab(Psi(u)), order 2
  std::vector<Jet> induced_g;  // n*n, order 2
};

ImmersionJets immersion_jets(const Immersion& imm, const MetricField& metric, std::span<const double> u);

/// Pullback metric g_ij = g~(d_i Psi, d_j Psi) with its first two derivatives.
MetricAtPoint induced_metric(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                             const Tolerances& tol = {});

struct FieldSplit {
  Vector field;
  Vector tangential;         // ambient components of V^T
  Vector normal;             // ambient components of V^perp
  Vector tangential_coords;  // V^T in the coordinate basis d/du^i
  double tangential_norm = 0.0;
  double normal_norm = 0.0;
};

/// Everything extrinsic at one submanifold point. Frames are g~-orthonormal.
struct FramePacket {
  int n = 0;
  int m = 0;
  Vector u;
  Vector point;                 // Psi(u)
  Matrix jacobian;              // m x n
  MetricAtPoint ambient;        // g~ at Psi(u), order 2
  Tensor3 ambient_gamma;
  Matrix induced;               // n x n, coordinate basis
  Matrix tangent;               // m x n, e_1..e_n
  Matrix tangent_coeffs;        // n x n, e_i = jacobian * tangent_coeffs.col(i)
  Matrix normal;                // m x (m-n), xi_1..xi_{m-n}
  std::vector<Matrix> h;        // per normal index alpha: h^alpha_ij in the e-frame
  std::vector<Vector> h_coord;  // h(d_i, d_j) as ambient vectors at [i*n + j]
  std::optional<FieldSplit> field;

  /// h(e_i, e_j) as an ambient vector.
  Vector h_frame(int i, int j) const;
  /// h(X, Y) for X, Y in parameter coordinates.
  Vector h_of(const Vector& x, const Vector& y) const;
  double ambient_inner(const Vector& a, const Vector& b) const { return a.dot(ambient.g * b); }
  double ambient_norm(const Vector& a) const;
};

struct FirstNormalSpace {
  Matrix basis;  // m x rank, orthonormal normal vectors spanning Im h
  int rank = 0;
  Vector singular_values;
};

struct SecondFundamentalForm {
  std::vector<Matrix> components;  // h^alpha_ij
  FirstNormalSpace first_normal;
  double max_norm = 0.0;           // max_ij |h(e_i, e_j)|
};

FramePacket frames(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                   const Tolerances& tol = {}, const VectorField* field = nullptr);

SecondFundamentalForm second_fundamental_form(const FramePacket& packet, const Tolerances& tol = {});
SecondFundamentalForm second_fundamental_form(const Immersion& imm, const MetricField& metric,
                                              std::span<const double> u, const Tolerances& tol = {});

/// A_xi in the orthonormal tangent frame: g(A_xi e_i, e_j) = g~(h(e_i, e_j), xi).
Matrix shape_operator(const FramePacket& packet, const Vector& xi, const Tolerances& tol = {});

/// H = (1/n) sum_i h(e_i, e_i), ambient components.
Vector mean_curvature(const FramePacket& packet);

FieldSplit decompose_field(const FramePacket& packet, const Vector& v);

/// |g(R(X,Y)Z,W) - g~(R~(X,Y)Z,W) - g~(h(X,W),h(Y,Z)) + g~(h(X,Z),h(Y,W))| for
/// X, Y, Z, W in parameter coordinates.
double gauss_equation_residual(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                               const Vector& x, const Vector& y, const Vector& z, const Vector& w,
                               const Tolerances& tol = {});

/// Largest Gauss residual over all quadruples of orthonormal frame vectors.
double gauss_equation_max_residual(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                                   const Tolerances& tol = {});

/// V^T and V^perp along M as order-1 jets in the parameters, so that their
/// derivatives along M are exact.
struct FieldSplitJets {
  std::vector<Jet> tangential_coords;  // n
  std::vector<Jet> tangential;         // m
  std::vector<Jet> normal;             // m
};

FieldSplitJets field_split_jets(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                std::span<const double> u, const Tolerances& tol = {});

/// Ambient covariant derivatives nabla~_{d_i} Y for a field Y along M given
/// as order-1 jets; column i of the result.
Matrix covariant_derivative_along(const FramePacket& packet, std::span<const Jet> field);

}  // namespace rectsub
