#include "rectsub/submanifold.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "jet_matrix.hpp"

namespace rectsub {
namespace {

std::vector<Jet> parameter_jets(std::span<const double> u, int order) {
  const int n = static_cast<int>(u.size());
  std::vector<Jet> out;
  for (int i = 0; i < n; ++i) out.push_back(Jet::variable(n, order, i, u[i]));
  return out;
}

void check_dimensions(const Immersion& imm, const MetricField& metric, std::span<const double> u) {
  if (imm.m != metric.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "immersion target dimension " + std::to_string(imm.m) +
                                                  " differs from ambient dimension " +
                                                  std::to_string(metric.dim()));
  }
  if (static_cast<int>(u.size()) != imm.n) {
    throw Error(ErrorCode::DimensionMismatch, "parameter point has " + std::to_string(u.size()) +
                                                  " coordinates, immersion has n = " + std::to_string(imm.n));
  }
  if (!(imm.n >= 1 && imm.n < imm.m)) {
    throw Error(ErrorCode::DimensionMismatch, "immersion needs 1 <= n < m");
  }
}

std::string format_point(std::span<const double> u) {
  std::string s = "(";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(u[i]);
  }
  return s + ")";
}

void check_rank(const Matrix& jacobian, std::span<const double> u, const Tolerances& tol) {
  Eigen::JacobiSVD<Matrix> svd(jacobian);
  const auto& sv = svd.singularValues();
  const double largest = sv.size() ? sv[0] : 0.0;
  const double smallest = sv.size() ? sv[sv.size() - 1] : 0.0;
  if (!(largest > 0.0) || !(smallest > tol.rank_tol * largest)) {
    throw Error(ErrorCode::RankDeficient, "immersion is degenerate at u = " + format_point(u));
  }
}

// Projects w onto the G-orthogonal complement of the columns of `basis`.
Vector orthogonalize(const Matrix& g, const Matrix& basis, int count, Vector w) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < count; ++j) {
      const Vector b = basis.col(j);
      w -= b.dot(g * w) * b;
    }
  }
  return w;
}

}  // namespace

bool Box::contains(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (point[i] < intervals[i].first || point[i] > intervals[i].second) return false;
  }
  return true;
}

Vector Immersion::position(std::span<const double> u) const {
  Vector p(m);
  for (int a = 0; a < m; ++a) p[a] = components[a].evaluate(u);
  return p;
}

ImmersionJets immersion_jets(const Immersion& imm, const MetricField& metric, std::span<const double> u) {
  check_dimensions(imm, metric, u);
  const int n = imm.n, m = imm.m;
  ImmersionJets out;
  out.u = Eigen::Map<const Vector>(u.data(), n);
  const auto vars = parameter_jets(u, 3);
  for (const auto& c : imm.components) out.psi.push_back(c.evaluate(vars));
  out.tangent.reserve(static_cast<std::size_t>(m) * n);
  for (int a = 0; a < m; ++a) {
    for (int i = 0; i < n; ++i) out.tangent.push_back(out.psi[a].partial(i));
  }
  std::vector<Jet> psi2;
  for (const Jet& j : out.psi) psi2.push_back(j.truncated(2));
  out.ambient_g = metric.jets(psi2);

  out.induced_g.assign(static_cast<std::size_t>(n) * n, Jet(n, 2));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      Jet s(n, 2);
      for (int a = 0; a < m; ++a) {
        Jet row(n, 2);
        for (int b = 0; b < m; ++b) row += out.ambient_g[a * m + b] * out.tangent[b * n + j];
        s += out.tangent[a * n + i] * row;
      }
      out.induced_g[i * n + j] = s;
      out.induced_g[j * n + i] = s;
    }
  }
  return out;
}

MetricAtPoint induced_metric(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                             const Tolerances& tol) {
  const ImmersionJets jets = immersion_jets(imm, metric, u);
  Matrix jac(imm.m, imm.n);
  for (int a = 0; a < imm.m; ++a) {
    for (int i = 0; i < imm.n; ++i) jac(a, i) = jets.tangent[a * imm.n + i].value();
  }
  check_rank(jac, u, tol);
  MetricAtPoint g = metric_from_jets(jets.induced_g, imm.n, jets.u);
  spd_inverse(g.g, tol.spd_tol);
  return g;
}

// FramePacket --------------------------------------------------------------------

Vector FramePacket::h_frame(int i, int j) const {
  Vector out = Vector::Zero(m);
  for (int a = 0; a < m - n; ++a) out += h[a](i, j) * normal.col(a);
  return out;
}

Vector FramePacket::h_of(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out += x[i] * y[j] * h_coord[i * n + j];
  }
  return out;
}

double FramePacket::ambient_norm(const Vector& a) const { return std::sqrt(std::max(0.0, ambient_inner(a, a))); }

FramePacket frames(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                   const Tolerances& tol, const VectorField* field) {
  check_dimensions(imm, metric, u);
  const int n = imm.n, m = imm.m;
  FramePacket p;
  p.n = n;
  p.m = m;
  p.u = Eigen::Map<const Vector>(u.data(), n);

  const auto vars = parameter_jets(u, 2);
  std::vector<Jet> psi;
  for (const auto& c : imm.components) psi.push_back(c.evaluate(vars));
  p.point = Vector(m);
  p.jacobian = Matrix(m, n);
  std::vector<Matrix> second(m, Matrix(n, n));
  for (int a = 0; a < m; ++a) {
    p.point[a] = psi[a].value();
    for (int i = 0; i < n; ++i) {
      p.jacobian(a, i) = psi[a].d(i);
      for (int j = 0; j < n; ++j) second[a](i, j) = psi[a].d(i, j);
    }
  }
  check_rank(p.jacobian, u, tol);

  p.ambient = metric.at(std::span<const double>(p.point.data(), m), 2);
  p.ambient_gamma = christoffel(p.ambient, tol);
  const Matrix& G = p.ambient.g;
  p.induced = p.jacobian.transpose() * G * p.jacobian;

  // Tangent frame: Gram-Schmidt on the coordinate tangents.
  p.tangent = Matrix::Zero(m, n);
  for (int i = 0; i < n; ++i) {
    Vector w = orthogonalize(G, p.tangent, i, p.jacobian.col(i));
    const double norm = std::sqrt(w.dot(G * w));
    if (!(norm > 0.0)) throw Error(ErrorCode::RankDeficient, "tangent frame collapsed at u = " + format_point(u));
    p.tangent.col(i) = w / norm;
  }
  const Matrix ginv = spd_inverse(p.induced, tol.spd_tol);
  p.tangent_coeffs = ginv * p.jacobian.transpose() * G * p.tangent;

  // Normal frame: complete with the ambient coordinate basis, taking the
  // candidate with the largest residual (ties to the lowest index).
  Matrix all(m, m);
  all.leftCols(n) = p.tangent;
  for (int slot = n; slot < m; ++slot) {
    int best = -1;
    double best_norm = 0.0;
    Vector best_w;
    for (int k = 0; k < m; ++k) {
      Vector w = orthogonalize(G, all, slot, Vector::Unit(m, k));
      const double norm = std::sqrt(std::max(0.0, w.dot(G * w)));
      if (norm > best_norm) {
        best = k;
        best_norm = norm;
        best_w = w;
      }
    }
    if (best < 0) throw Error(ErrorCode::RankDeficient, "normal frame completion failed");
    all.col(slot) = best_w / best_norm;
  }
  p.normal = all.rightCols(m - n);

  // Second fundamental form: normal part of nabla~_{d_i} d_j Psi.
  p.h_coord.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vector w(m);
      for (int k = 0; k < m; ++k) {
        double s = second[k](i, j);
        for (int a = 0; a < m; ++a) {
          for (int b = 0; b < m; ++b) s += p.ambient_gamma(k, a, b) * p.jacobian(a, i) * p.jacobian(b, j);
        }
        w[k] = s;
      }
      Vector normal_part = Vector::Zero(m);
      for (int a = 0; a < m - n; ++a) normal_part += p.normal.col(a).dot(G * w) * p.normal.col(a);
      p.h_coord[i * n + j] = normal_part;
    }
  }
  p.h.assign(m - n, Matrix::Zero(n, n));
  for (int a = 0; a < m - n; ++a) {
    Matrix hc(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) hc(i, j) = p.normal.col(a).dot(G * p.h_coord[i * n + j]);
    }
    Matrix hf = p.tangent_coeffs.transpose() * hc * p.tangent_coeffs;
    p.h[a] = 0.5 * (hf + hf.transpose());
  }

  if (field) {
    if (field->dim() != m) throw Error(ErrorCode::DimensionMismatch, "field dimension differs from ambient");
    p.field = decompose_field(p, field->value(std::span<const double>(p.point.data(), m)));
  }
  return p;
}

SecondFundamentalForm second_fundamental_form(const FramePacket& packet, const Tolerances& tol) {
  const int n = packet.n, k = packet.m - packet.n;
  SecondFundamentalForm out;
  out.components = packet.h;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.max_norm = std::max(out.max_norm, packet.ambient_norm(packet.h_frame(i, j)));
  }

  const int rows = n * (n + 1) / 2;
  Matrix hm(rows, k);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j, ++r) {
      for (int a = 0; a < k; ++a) hm(r, a) = packet.h[a](i, j);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(hm, Eigen::ComputeFullV);
  out.first_normal.singular_values = svd.singularValues();
  const auto& sv = out.first_normal.singular_values;
  const double largest = sv.size() ? sv[0] : 0.0;
  int rank = 0;
  if (largest > tol.totally_geodesic_tol) {
    for (int i = 0; i < sv.size(); ++i) {
      if (sv[i] > tol.svd_rank_tol * largest) ++rank;
    }
  }
  out.first_normal.rank = rank;
  out.first_normal.basis = packet.normal * svd.matrixV().leftCols(rank);
  return out;
}

SecondFundamentalForm second_fundamental_form(const Immersion& imm, const MetricField& metric,
                                              std::span<const double> u, const Tolerances& tol) {
  return second_fundamental_form(frames(imm, metric, u, tol), tol);
}

Matrix shape_operator(const FramePacket& packet, const Vector& xi, const Tolerances& tol) {
  if (xi.size() != packet.m) throw Error(ErrorCode::DimensionMismatch, "normal vector has wrong dimension");
  double tangential = 0.0;
  for (int i = 0; i < packet.n; ++i) {
    const double c = packet.ambient_inner(xi, packet.tangent.col(i));
    tangential += c * c;
  }
  tangential = std::sqrt(tangential);
  if (tangential > tol.frame_tol * std::max(1.0, packet.ambient_norm(xi))) {
    throw Error(ErrorCode::NonNormal, "vector is not normal to M (|xi^T| = " + std::to_string(tangential) + ")");
  }
  Matrix a = Matrix::Zero(packet.n, packet.n);
  for (int al = 0; al < packet.m - packet.n; ++al) {
    a += packet.h[al] * packet.ambient_inner(packet.normal.col(al), xi);
  }
  return a;
}

Vector mean_curvature(const FramePacket& packet) {
  Vector h = Vector::Zero(packet.m);
  for (int i = 0; i < packet.n; ++i) h += packet.h_frame(i, i);
  return h / packet.n;
}

FieldSplit decompose_field(const FramePacket& packet, const Vector& v) {
  FieldSplit out;
  out.field = v;
  Vector frame_coeffs(packet.n);
  for (int i = 0; i < packet.n; ++i) frame_coeffs[i] = packet.ambient_inner(v, packet.tangent.col(i));
  out.tangential = packet.tangent * frame_coeffs;
  out.normal = v - out.tangential;
  out.tangential_coords = packet.tangent_coeffs * frame_coeffs;
  out.tangential_norm = frame_coeffs.norm();
  out.normal_norm = packet.ambient_norm(out.normal);
  return out;
}

double gauss_equation_residual(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                               const Vector& x, const Vector& y, const Vector& z, const Vector& w,
                               const Tolerances& tol) {
  const FramePacket p = frames(imm, metric, u, tol);
  const MetricAtPoint g = induced_metric(imm, metric, u, tol);
  const Tensor4 r = riemann_tensor(g, tol);
  const Tensor4 ra = riemann_tensor(p.ambient, tol);
  const double lhs = apply_riemann(r, x, y, z).dot(g.g * w);
  const Vector jx = p.jacobian * x, jy = p.jacobian * y, jz = p.jacobian * z, jw = p.jacobian * w;
  const double rhs = p.ambient_inner(apply_riemann(ra, jx, jy, jz), jw) +
                     p.ambient_inner(p.h_of(x, w), p.h_of(y, z)) - p.ambient_inner(p.h_of(x, z), p.h_of(y, w));
  return std::abs(lhs - rhs);
}

double gauss_equation_max_residual(const Immersion& imm, const MetricField& metric, std::span<const double> u,
                                   const Tolerances& tol) {
  const FramePacket p = frames(imm, metric, u, tol);
  const MetricAtPoint g = induced_metric(imm, metric, u, tol);
  const Tensor4 r = riemann_tensor(g, tol);
  const Tensor4 ra = riemann_tensor(p.ambient, tol);
  const int n = p.n;
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const Vector x = p.tangent_coeffs.col(a), y = p.tangent_coeffs.col(b);
      for (int c = 0; c < n; ++c) {
        const Vector z = p.tangent_coeffs.col(c);
        const Vector intrinsic = apply_riemann(r, x, y, z);
        const Vector ambient = apply_riemann(ra, p.jacobian * x, p.jacobian * y, p.jacobian * z);
        for (int d = 0; d < n; ++d) {
          const Vector w = p.tangent_coeffs.col(d);
          const double lhs = intrinsic.dot(g.g * w);
          const double rhs = p.ambient_inner(ambient, p.jacobian * w) +
                             p.ambient_inner(p.h_frame(a, d), p.h_frame(b, c)) -
                             p.ambient_inner(p.h_frame(a, c), p.h_frame(b, d));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return worst;
}

FieldSplitJets field_split_jets(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                std::span<const double> u, const Tolerances& tol) {
  check_dimensions(imm, metric, u);
  const int n = imm.n, m = imm.m;
  const auto vars = parameter_jets(u, 2);
  std::vector<Jet> psi, psi1;
  for (const auto& c : imm.components) psi.push_back(c.evaluate(vars));
  for (const Jet& j : psi) psi1.push_back(j.truncated(1));

  detail::JetMatrix t(m, n, n, 1);
  for (int a = 0; a < m; ++a) {
    for (int i = 0; i < n; ++i) t(a, i) = psi[a].partial(i);
  }
  detail::JetMatrix g;
  g.rows = g.cols = m;
  g.data = metric.jets(psi1);
  detail::JetMatrix v;
  v.rows = m;
  v.cols = 1;
  v.data = field.jets(psi1);

  const detail::JetMatrix tt = detail::transpose(t);
  const detail::JetMatrix gt = detail::multiply(g, t);
  const detail::JetMatrix induced = detail::multiply(tt, gt);
  const detail::JetMatrix inv = detail::spd_inverse(induced, tol.spd_tol);
  const detail::JetMatrix coords = detail::multiply(inv, detail::multiply(detail::transpose(gt), v));
  const detail::JetMatrix tangential = detail::multiply(t, coords);

  FieldSplitJets out;
  out.tangential_coords = coords.data;
  out.tangential = tangential.data;
  for (int a = 0; a < m; ++a) out.normal.push_back(v.data[a] - tangential.data[a]);
  return out;
}

Matrix covariant_derivative_along(const FramePacket& packet, std::span<const Jet> field) {
  const int n = packet.n, m = packet.m;
  Matrix out(m, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      double s = field[k].d(i);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) s += packet.ambient_gamma(k, a, b) * packet.jacobian(a, i) * field[b].value();
      }
      out(k, i) = s;
    }
  }
  return out;
}

}  // namespace rectsub
