#include "rectsub/warped.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rectsub {
namespace {

std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

std::string format_point(const Vector& u) {
  std::string s = "(";
  for (int i = 0; i < u.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(u[i]);
  }
  return s + ")";
}

struct TangentDirection {
  Vector coords;  // V^T in d/du^i
  double norm = 0.0;
};

TangentDirection tangent_direction(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                   const Vector& u, const Tolerances& tol) {
  const int n = imm.n, m = imm.m;
  std::vector<Jet> vars;
  for (int i = 0; i < n; ++i) vars.push_back(Jet::variable(n, 1, i, u[i]));
  Vector point(m);
  Matrix jac(m, n);
  for (int a = 0; a < m; ++a) {
    const Jet psi = imm.components[a].evaluate(vars);
    point[a] = psi.value();
    for (int i = 0; i < n; ++i) jac(a, i) = psi.d(i);
  }
  const MetricAtPoint g = metric.at(as_span(point), 0);
  const Vector v = field.value(as_span(point));
  const Matrix induced = jac.transpose() * g.g * jac;
  TangentDirection out;
  out.coords = spd_inverse(induced, tol.spd_tol) * (jac.transpose() * (g.g * v));
  out.norm = std::sqrt(std::max(0.0, out.coords.dot(induced * out.coords)));
  return out;
}

// Orthonormal frame of the ambient chart starting with e1, completed by the
// coordinate basis vector of largest residual (ties to the lowest index).
Matrix complete_frame(const Matrix& g, const Vector& e1) {
  const int m = static_cast<int>(g.rows());
  Matrix frame = Matrix::Zero(m, m);
  frame.col(0) = e1;
  for (int slot = 1; slot < m; ++slot) {
    double best = 0.0;
    Vector best_w;
    for (int k = 0; k < m; ++k) {
      Vector w = Vector::Unit(m, k);
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < slot; ++j) w -= frame.col(j).dot(g * w) * frame.col(j);
      }
      const double norm = std::sqrt(std::max(0.0, w.dot(g * w)));
      if (norm > best) {
        best = norm;
        best_w = w;
      }
    }
    if (!(best > 0.0)) throw Error(ErrorCode::RankDeficient, "ambient frame completion failed");
    frame.col(slot) = best_w / best;
  }
  return frame;
}

}  // namespace

IntegralCurve trace_integral_curve(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                   std::span<const double> u0, double length, double step, const Tolerances& tol) {
  if (!(step > 0.0) || !(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "curve length and step must be positive");
  if (static_cast<int>(u0.size()) != imm.n) throw Error(ErrorCode::DimensionMismatch, "start point has wrong dimension");
  const int steps = std::max(1, static_cast<int>(std::ceil(length / step - 1e-9)));
  IntegralCurve curve;
  curve.step = length / steps;
  const double h = curve.step;

  auto rhs = [&](const Vector& u) -> Vector {
    ++curve.evaluations;
    if (!imm.domain.contains(as_span(u))) {
      throw DomainExitError("integral curve left the parameter box at u = " + format_point(u), curve);
    }
    const TangentDirection t = tangent_direction(imm, metric, field, u, tol);
    if (!(t.norm > tol.proper_tol)) {
      throw Error(ErrorCode::VanishingTangent, "|V^T| = " + std::to_string(t.norm) + " at u = " + format_point(u));
    }
    return t.coords / t.norm;
  };
  auto record = [&](double s, const Vector& u) {
    const FramePacket p = frames(imm, metric, as_span(u), tol, &field);
    CurveSample c;
    c.s = s;
    c.u = u;
    c.lambda = p.field->tangential_norm;
    c.f = fit_torse_forming(metric, field, as_span(p.point), tol).f;
    const Vector dir = p.field->tangential_coords / c.lambda;
    curve.max_speed_error = std::max(curve.max_speed_error, std::abs(std::sqrt(dir.dot(p.induced * dir)) - 1.0));
    curve.samples.push_back(std::move(c));
  };

  Vector u = Eigen::Map<const Vector>(u0.data(), imm.n);
  if (!imm.domain.contains(u0)) throw DomainExitError("start point lies outside the parameter box", curve);
  record(0.0, u);
  for (int k = 0; k < steps; ++k) {
    try {
      const Vector k1 = rhs(u);
      const Vector k2 = rhs(u + 0.5 * h * k1);
      const Vector k3 = rhs(u + 0.5 * h * k2);
      const Vector k4 = rhs(u + h * k3);
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!imm.domain.contains(as_span(u))) {
        throw DomainExitError("integral curve left the parameter box at u = " + format_point(u), curve);
      }
    } catch (const DomainExitError& e) {
      IntegralCurve partial = curve;
      partial.exited = true;
      throw DomainExitError(e.what(), std::move(partial));
    }
    record((k + 1) * h, u);
  }
  return curve;
}

double warping_ode_residual(const IntegralCurve& curve) {
  const auto& c = curve.samples;
  if (c.size() < 5) {
    throw Error(ErrorCode::TooFewSamples, "warping ODE needs at least 5 curve samples, got " + std::to_string(c.size()));
  }
  const double h = curve.step;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < c.size(); ++i) {
    const double d = (-c[i + 2].lambda + 8.0 * c[i + 1].lambda - 8.0 * c[i - 1].lambda + c[i - 2].lambda) / (12.0 * h);
    worst = std::max(worst, std::abs(d - c[i].f * (1.0 - c[i].lambda * c[i].lambda)));
  }
  return worst;
}

WarpFit fit_tanh_integral(const IntegralCurve& curve) {
  const auto& c = curve.samples;
  const std::size_t n = c.size();
  if (n < 3) throw Error(ErrorCode::TooFewSamples, "tanh fit needs at least 3 curve samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c[i].lambda < 1.0)) {
      throw Error(ErrorCode::ModelViolation, "lambda = " + std::to_string(c[i].lambda) + " >= 1 at s = " +
                                                 std::to_string(c[i].s) + ", u = " + format_point(c[i].u));
    }
  }
  const double h = curve.step;
  WarpFit out;
  out.integral.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      out.integral[i] = out.integral[i - 2] + h / 3.0 * (c[i - 2].f + 4.0 * c[i - 1].f + c[i].f);
    } else if (i + 1 < n) {
      out.integral[i] = out.integral[i - 1] + h / 12.0 * (5.0 * c[i - 1].f + 8.0 * c[i].f - c[i + 1].f);
    } else {
      out.integral[i] = out.integral[i - 1] + h / 12.0 * (-c[i - 2].f + 8.0 * c[i - 1].f + 5.0 * c[i].f);
    }
  }
  const std::size_t mid = n / 2;
  out.constant = std::atanh(c[mid].lambda) - out.integral[mid];
  out.model.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.model[i] = std::tanh(out.integral[i] + out.constant);
    const double dev = std::abs(c[i].lambda - out.model[i]);
    if (dev > out.deviation) {
      out.deviation = dev;
      out.witness = i;
    }
  }
  return out;
}

TheoremReport verify_ambient_decomposition(const MetricField& metric, const VectorField& field,
                                           std::span<const Vector> sample, const Tolerances& tol) {
  if (sample.empty()) throw Error(ErrorCode::TooFewSamples, "no sample points");
  const int m = metric.dim();
  std::vector<ClassificationReport> fits;
  for (const auto& x : sample) fits.push_back(fit_torse_forming(metric, field, as_span(x), tol));
  Tolerances relaxed = tol;
  relaxed.class_min_points = std::min<int>(tol.class_min_points, static_cast<int>(fits.size()));
  const SceneClassification scene = classify(fits, relaxed);
  if (scene.verdict != Verdict::AntiTorqued) {
    throw Error(ErrorCode::Precondition,
                "ambient decomposition needs an anti-torqued field; classified as " +
                    std::string(to_string(scene.verdict)));
  }

  auto item = [](std::string name, double tolerance) {
    CheckItem out;
    out.name = std::move(name);
    out.tolerance = tolerance;
    return out;
  };
  CheckItem a = item("|nabla~_E1 E1|", tol.warp_geodesic_tol);
  CheckItem b = item("E1(|V|) - f(1 - |V|^2)", tol.decomposition_tol);
  CheckItem c = item("<nabla~_Ej E1, Ek> - (f/|V|) delta_jk", tol.decomposition_tol);
  CheckItem d = item("Ej(|V|)", tol.decomposition_tol);
  auto observe = [](CheckItem& item, double v, const Vector& x) {
    if (item.witness.size() == 0 || v > item.worst || std::isnan(v)) {
      item.worst = v;
      item.witness = x;
    }
  };

  for (std::size_t s = 0; s < sample.size(); ++s) {
    const Vector& x = sample[s];
    std::vector<Jet> coords;
    for (int i = 0; i < m; ++i) coords.push_back(Jet::variable(m, 1, i, x[i]));
    const std::vector<Jet> gj = metric.jets(coords);
    const std::vector<Jet> vj = field.jets(coords);
    Jet norm2(m, 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) norm2 += gj[i * m + j] * vj[i] * vj[j];
    }
    const Jet lambda = sqrt(norm2);
    std::vector<Jet> e1j;
    for (int i = 0; i < m; ++i) e1j.push_back(vj[i] / lambda);

    const MetricAtPoint g = metric.at(as_span(x), 1);
    const Tensor3 gamma = christoffel(g, tol);
    Vector e1(m), dlambda(m);
    Matrix de1(m, m);
    for (int i = 0; i < m; ++i) {
      e1[i] = e1j[i].value();
      dlambda[i] = lambda.d(i);
      for (int j = 0; j < m; ++j) de1(i, j) = e1j[i].d(j);
    }
    // cov.col(j) = nabla~_{d_j} E1
    Matrix cov(m, m);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        double v = de1(k, j);
        for (int i = 0; i < m; ++i) v += gamma(k, j, i) * e1[i];
        cov(k, j) = v;
      }
    }
    const double f = fits[s].f;
    const double lam = lambda.value();
    const Vector geo = cov * e1;
    observe(a, std::sqrt(std::max(0.0, geo.dot(g.g * geo))), x);
    observe(b, std::abs(dlambda.dot(e1) - f * (1.0 - lam * lam)), x);

    const Matrix frame = complete_frame(g.g, e1);
    double worst_c = 0.0, worst_d = 0.0;
    for (int j = 1; j < m; ++j) {
      const Vector dj = cov * frame.col(j);
      for (int k = 1; k < m; ++k) {
        const double expected = j == k ? f / lam : 0.0;
        worst_c = std::max(worst_c, std::abs(dj.dot(g.g * frame.col(k)) - expected));
      }
      worst_d = std::max(worst_d, std::abs(dlambda.dot(frame.col(j))));
    }
    observe(c, worst_c, x);
    observe(d, worst_d, x);
  }
  TheoremReport out;
  for (CheckItem* item : {&a, &b, &c, &d}) {
    item->pass = item->worst <= item->tolerance;
    out.items.push_back(*item);
  }
  return out;
}

WarpedAmbient build_warped_ambient(const Expression& lambda, std::span<const Expression> fiber,
                                   std::pair<double, double> s_interval, const Box& fiber_domain) {
  if (lambda.variables().size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "warping function must be an expression in s alone");
  }
  const int k = fiber_domain.dim();
  if (k < 1 || static_cast<int>(fiber.size()) != k * k) {
    throw Error(ErrorCode::DimensionMismatch, "fiber metric must be k x k with k = fiber domain dimension");
  }
  const int samples = 200;
  for (int i = 0; i <= samples; ++i) {
    const double s = s_interval.first + (s_interval.second - s_interval.first) * i / samples;
    double v = 0.0;
    try {
      v = lambda.evaluate(std::span<const double>(&s, 1));
    } catch (const Error&) {
      v = std::nan("");
    }
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NonPositiveWarp, "warping function is not positive at s = " + std::to_string(s));
    }
  }

  const int m = k + 1;
  std::vector<std::string> vars{"s"};
  for (int i = 1; i <= k; ++i) vars.push_back("y" + std::to_string(i));
  const int s_index[] = {0};
  std::vector<int> fiber_index;
  for (int i = 1; i <= k; ++i) fiber_index.push_back(i);
  const NodePtr lam2 = make_binary(Op::Power, lambda.remap(s_index, vars).root_ptr(), make_number(2.0));

  std::vector<Expression> g;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      NodePtr node;
      if (i == 0 || j == 0) {
        node = make_number(i == j ? 1.0 : 0.0);
      } else {
        const Expression& c = fiber[(i - 1) * k + (j - 1)];
        node = make_binary(Op::Multiply, lam2, c.remap(fiber_index, vars).root_ptr());
      }
      g.emplace_back(node, vars);
    }
  }
  std::vector<Expression> v;
  for (int i = 0; i < m; ++i) v.emplace_back(make_number(i == 0 ? 1.0 : 0.0), vars);

  WarpedAmbient out;
  out.metric = MetricField(m, std::move(g));
  out.field = VectorField(std::move(v));
  out.domain.intervals.push_back(s_interval);
  for (const auto& iv : fiber_domain.intervals) out.domain.intervals.push_back(iv);
  out.lambda = lambda;
  return out;
}

WarpedConverse warped_converse(const WarpedAmbient& ambient, std::span<const Vector> sample, const Tolerances& tol) {
  if (sample.empty()) throw Error(ErrorCode::TooFewSamples, "no sample points");
  std::vector<ClassificationReport> fits;
  WarpedConverse out;
  for (const auto& x : sample) {
    fits.push_back(fit_torse_forming(ambient.metric, ambient.field, as_span(x), tol));
    const Jet lam = eval_jet(ambient.lambda, std::span<const double>(x.data(), 1), 1);
    const double expected = lam.d(0) / lam.value();
    const double err = std::abs(fits.back().f - expected);
    if (out.witness.size() == 0 || err > out.f_error) {
      out.f_error = err;
      out.witness = x;
    }
  }
  Tolerances relaxed = tol;
  relaxed.class_min_points = std::min<int>(tol.class_min_points, static_cast<int>(fits.size()));
  out.verdict = classify(fits, relaxed).verdict;
  out.degenerate = out.verdict == Verdict::Parallel;
  out.pass = out.verdict == Verdict::AntiTorqued && out.f_error <= tol.warp_geodesic_tol;
  return out;
}

}  // namespace rectsub
