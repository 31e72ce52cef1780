#include "rectsub/metric.hpp"

#include <cmath>
#include <string>

namespace rectsub {
namespace {

void require_order(const MetricAtPoint& metric, int needed, const char* what) {
  if (metric.order < needed) {
    throw Error(ErrorCode::OrderInsufficient, std::string(what) + " needs metric jets of order " +
                                                  std::to_string(needed) + ", have " +
                                                  std::to_string(metric.order));
  }
}

}  // namespace

MetricAtPoint metric_from_jets(std::span<const Jet> jets, int dim, Vector point) {
  if (static_cast<int>(jets.size()) != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "metric jets must be dim*dim");
  }
  MetricAtPoint out;
  out.point = std::move(point);
  out.g = Matrix::Zero(dim, dim);
  int order = 2;
  for (const Jet& j : jets) order = std::min(order, j.order());
  out.order = order;
  const int nvars = jets[0].nvars();
  if (order >= 1 && nvars != dim) {
    throw Error(ErrorCode::DimensionMismatch, "metric jets must be taken in the metric's own coordinates");
  }
  out.dg = Tensor3(dim);
  out.d2g = Tensor4(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const Jet& jet = jets[i * dim + j];
      out.g(i, j) = jet.value();
      if (order >= 1) {
        for (int k = 0; k < dim; ++k) out.dg(i, j, k) = jet.d(k);
      }
      if (order >= 2) {
        for (int k = 0; k < dim; ++k) {
          for (int l = 0; l < dim; ++l) out.d2g(i, j, k, l) = jet.d(k, l);
        }
      }
    }
  }
  return out;
}

// MetricField ------------------------------------------------------------------

MetricField::MetricField(int dim, std::vector<Expression> components)
    : dim_(dim), components_(std::move(components)) {
  if (dim < 1 || static_cast<int>(components_.size()) != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "metric needs " + std::to_string(dim * dim) + " components");
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) components_[i * dim + j] = components_[j * dim + i];
  }
}

MetricField MetricField::euclidean(int dim) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
  std::vector<Expression> comps;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) comps.emplace_back(make_number(i == j ? 1.0 : 0.0), names);
  }
  return MetricField(dim, std::move(comps));
}

const Expression& MetricField::component(int i, int j) const { return components_[i * dim_ + j]; }

std::vector<Jet> MetricField::jets(std::span<const Jet> coordinates) const {
  if (static_cast<int>(coordinates.size()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "metric evaluated with " + std::to_string(coordinates.size()) +
                                                  " coordinates, expected " + std::to_string(dim_));
  }
  std::vector<Jet> out(static_cast<std::size_t>(dim_) * dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j <= i; ++j) {
      out[i * dim_ + j] = components_[i * dim_ + j].evaluate(coordinates);
      out[j * dim_ + i] = out[i * dim_ + j];
    }
  }
  return out;
}

MetricAtPoint MetricField::at(std::span<const double> point, int order) const {
  if (static_cast<int>(point.size()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match metric");
  }
  std::vector<Jet> coords;
  for (int i = 0; i < dim_; ++i) coords.push_back(Jet::variable(dim_, order, i, point[i]));
  const auto js = jets(coords);
  return metric_from_jets(js, dim_, Eigen::Map<const Vector>(point.data(), dim_));
}

// VectorField ------------------------------------------------------------------

VectorField::VectorField(std::vector<Expression> components) : components_(std::move(components)) {}

std::vector<Jet> VectorField::jets(std::span<const Jet> coordinates) const {
  std::vector<Jet> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(coordinates));
  return out;
}

Vector VectorField::value(std::span<const double> point) const {
  Vector v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = components_[i].evaluate(point);
  return v;
}

VectorAtPoint VectorField::at(std::span<const double> point) const {
  const int m = dim();
  if (static_cast<int>(point.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "vector field evaluated at a point of the wrong dimension");
  }
  std::vector<Jet> coords;
  for (int i = 0; i < m; ++i) coords.push_back(Jet::variable(m, 1, i, point[i]));
  const auto js = jets(coords);
  VectorAtPoint out;
  out.components = Vector(m);
  Matrix jac(m, m);
  for (int i = 0; i < m; ++i) {
    out.components[i] = js[i].value();
    for (int j = 0; j < m; ++j) jac(i, j) = js[i].d(j);
  }
  out.jacobian = jac;
  return out;
}

// Tensor calculus --------------------------------------------------------------

Matrix spd_inverse(const Matrix& g, double spd_tol) {
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularMetric, "metric is not positive definite");
  }
  const Matrix l = llt.matrixL();
  for (int i = 0; i < l.rows(); ++i) {
    const double pivot = l(i, i) * l(i, i);
    if (!(pivot > spd_tol)) {
      throw Error(ErrorCode::SingularMetric,
                  "metric Cholesky pivot " + std::to_string(pivot) + " below spd_tol");
    }
  }
  return llt.solve(Matrix::Identity(g.rows(), g.cols()));
}

Tensor3 christoffel(const MetricAtPoint& metric, const Tolerances& tol) {
  require_order(metric, 1, "christoffel");
  const int m = metric.dim();
  const Matrix ginv = spd_inverse(metric.g, tol.spd_tol);
  Tensor3 first(m);  // first(l, i, j) = Gamma_lij (lowered)
  for (int l = 0; l < m; ++l) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        first(l, i, j) = 0.5 * (metric.dg(l, j, i) + metric.dg(l, i, j) - metric.dg(i, j, l));
      }
    }
  }
  Tensor3 gamma(m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) s += ginv(k, l) * first(l, i, j);
        gamma(k, i, j) = s;
        gamma(k, j, i) = s;
      }
    }
  }
  return gamma;
}

Tensor4 christoffel_derivative(const MetricAtPoint& metric, const Tolerances& tol) {
  require_order(metric, 2, "christoffel derivative");
  const int m = metric.dim();
  const Matrix ginv = spd_inverse(metric.g, tol.spd_tol);

  // d_q g^{kl} = -g^{ka} d_q g_ab g^{bl}
  Tensor3 dginv(m);  // dginv(k, l, q)
  for (int q = 0; q < m; ++q) {
    Matrix dq(m, m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) dq(a, b) = metric.dg(a, b, q);
    }
    const Matrix prod = -ginv * dq * ginv;
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) dginv(k, l, q) = prod(k, l);
    }
  }

  Tensor4 out(m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        for (int q = 0; q < m; ++q) {
          double s = 0.0;
          for (int l = 0; l < m; ++l) {
            const double first = metric.dg(l, j, i) + metric.dg(l, i, j) - metric.dg(i, j, l);
            const double dfirst = metric.d2g(l, j, i, q) + metric.d2g(l, i, j, q) - metric.d2g(i, j, l, q);
            s += dginv(k, l, q) * first + ginv(k, l) * dfirst;
          }
          out(k, i, j, q) = 0.5 * s;
          out(k, j, i, q) = 0.5 * s;
        }
      }
    }
  }
  return out;
}

Tensor4 riemann_tensor(const MetricAtPoint& metric, const Tolerances& tol) {
  require_order(metric, 2, "riemann");
  const int m = metric.dim();
  const Tensor3 gamma = christoffel(metric, tol);
  const Tensor4 dgamma = christoffel_derivative(metric, tol);
  Tensor4 r(m);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          double s = dgamma(l, j, k, i) - dgamma(l, i, k, j);
          for (int p = 0; p < m; ++p) s += gamma(p, j, k) * gamma(l, i, p) - gamma(p, i, k) * gamma(l, j, p);
          r(l, k, i, j) = s;
        }
      }
    }
  }
  return r;
}

Vector apply_riemann(const Tensor4& r, const Vector& x, const Vector& y, const Vector& z) {
  const int m = r.extent();
  Vector out = Vector::Zero(m);
  for (int l = 0; l < m; ++l) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
      if (z[k] == 0.0) continue;
      for (int i = 0; i < m; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < m; ++j) s += r(l, k, i, j) * z[k] * x[i] * y[j];
      }
    }
    out[l] = s;
  }
  return out;
}

Vector covariant_derivative(const Tensor3& gamma, const VectorAtPoint& v, const Vector& x) {
  if (!v.jacobian) {
    throw Error(ErrorCode::InvalidArgument, "covariant derivative needs the field's jacobian");
  }
  const int m = gamma.extent();
  Vector out = (*v.jacobian) * x;
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) out[k] += gamma(k, i, j) * x[i] * v.components[j];
    }
  }
  return out;
}

Vector covariant_derivative(const MetricAtPoint& metric, const VectorAtPoint& v, const Vector& x,
                            const Tolerances& tol) {
  return covariant_derivative(christoffel(metric, tol), v, x);
}

Vector riemann(const MetricAtPoint& metric, const Vector& x, const Vector& y, const Vector& z,
               const Tolerances& tol) {
  return apply_riemann(riemann_tensor(metric, tol), x, y, z);
}

double sectional_curvature(const Tensor4& r, const Matrix& g, const Vector& u, const Vector& v,
                           const Tolerances& tol) {
  const double uu = u.dot(g * u), vv = v.dot(g * v), uv = u.dot(g * v);
  const double denom = uu * vv - uv * uv;
  if (!(denom > tol.degeneracy_tol * uu * vv)) {
    throw Error(ErrorCode::DegeneratePlane, "plane section is degenerate (u, v nearly dependent)");
  }
  const Vector rv = apply_riemann(r, u, v, v);
  return rv.dot(g * u) / denom;
}

double sectional_curvature(const MetricAtPoint& metric, const Vector& u, const Vector& v,
                           const Tolerances& tol) {
  return sectional_curvature(riemann_tensor(metric, tol), metric.g, u, v, tol);
}

}  // namespace rectsub
