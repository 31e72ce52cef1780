#include "rectsub/rectifying.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    item_.name = std::move(name);
    item_.tolerance = tolerance;
  }

  void observe(double value, const Vector& u) {
    if (!seen_ || value > item_.worst || std::isnan(value)) {
      item_.worst = value;
      item_.witness = u;
      seen_ = true;
    }
  }

  CheckItem finish() {
    item_.pass = seen_ ? item_.worst <= item_.tolerance : true;
    return item_;
  }

 private:
  CheckItem item_;
  bool seen_ = false;
};

void require_sample(std::span<const Vector> sample) {
  if (sample.empty()) throw Error(ErrorCode::TooFewSamples, "no sample points");
}

// Worst |V^T| or |V^perp| across the sample; throws Precondition when it is
// not small.
void require_vanishing(const Immersion& imm, const MetricField& metric, const VectorField& field,
                       std::span<const Vector> sample, bool tangential, const Tolerances& tol) {
  double worst = -1.0;
  Vector witness;
  for (const auto& u : sample) {
    const FramePacket p = frames(imm, metric, as_span(u), tol, &field);
    const double v = tangential ? p.field->tangential_norm : p.field->normal_norm;
    if (v > worst) {
      worst = v;
      witness = u;
    }
  }
  if (worst > tol.vanish_tol) {
    throw Error(ErrorCode::Precondition, std::string(tangential ? "|V^T|" : "|V^perp|") + " = " +
                                             std::to_string(worst) + " at u = " + format_point(witness) +
                                             " exceeds " + std::to_string(tol.vanish_tol));
  }
}

double ambient_f(const MetricField& metric, const VectorField& field, const FramePacket& p, const Tolerances& tol) {
  return fit_torse_forming(metric, field, as_span(p.point), tol).f;
}

// Columns of `d` (ambient vectors along e_i) with their tangent part removed.
Matrix normal_part(const FramePacket& p, const Matrix& d) {
  Matrix out = d;
  for (int i = 0; i < d.cols(); ++i) {
    for (int j = 0; j < p.n; ++j) out.col(i) -= p.ambient_inner(d.col(i), p.tangent.col(j)) * p.tangent.col(j);
  }
  return out;
}

double max_column_norm(const FramePacket& p, const Matrix& d) {
  double worst = 0.0;
  for (int i = 0; i < d.cols(); ++i) worst = std::max(worst, p.ambient_norm(d.col(i)));
  return worst;
}

}  // namespace

bool TheoremReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

const CheckItem* TheoremReport::find(std::string_view name) const {
  for (const auto& c : items) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double rectifying_residual(const FramePacket& packet, const Tolerances& tol) {
  if (!packet.field) throw Error(ErrorCode::InvalidArgument, "frame packet carries no field");
  const Vector& vperp = packet.field->normal;
  const double vnorm = packet.field->normal_norm;
  const SecondFundamentalForm sff = second_fundamental_form(packet, tol);
  if (sff.max_norm <= tol.totally_geodesic_tol || vnorm <= tol.proper_tol) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < packet.n; ++i) {
    for (int j = i; j < packet.n; ++j) {
      worst = std::max(worst, std::abs(packet.ambient_inner(vperp, packet.h_frame(i, j))));
    }
  }
  return worst / (sff.max_norm * vnorm);
}

double rectifying_residual(const Immersion& imm, const MetricField& metric, const VectorField& field,
                           std::span<const double> u, const Tolerances& tol) {
  return rectifying_residual(frames(imm, metric, u, tol, &field), tol);
}

double check_avperp_zero(const FramePacket& packet, const Tolerances& tol) {
  if (!packet.field) throw Error(ErrorCode::InvalidArgument, "frame packet carries no field");
  return shape_operator(packet, packet.field->normal, tol).norm();
}

WeingartenSplit weingarten(const FramePacket& packet, std::span<const Jet> xi) {
  const Matrix cov = covariant_derivative_along(packet, xi) * packet.tangent_coeffs;
  WeingartenSplit out;
  out.shape = Matrix(packet.n, packet.n);
  for (int i = 0; i < packet.n; ++i) {
    for (int j = 0; j < packet.n; ++j) out.shape(j, i) = packet.ambient_inner(cov.col(i), packet.tangent.col(j));
  }
  out.normal = normal_part(packet, cov);
  return out;
}

TheoremReport verify_tangential_vanishes(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                         std::span<const Vector> sample, const Tolerances& tol) {
  require_sample(sample);
  require_vanishing(imm, metric, field, sample, true, tol);
  Tracker d("D_X V^perp", tol.vanish_tol);
  Tracker umbilic("A_V^perp + f Id", tol.umbilic_tol);
  for (const auto& u : sample) {
    const FramePacket p = frames(imm, metric, as_span(u), tol, &field);
    const FieldSplitJets jets = field_split_jets(imm, metric, field, as_span(u), tol);
    const WeingartenSplit w = weingarten(p, jets.normal);
    d.observe(max_column_norm(p, w.normal), u);
    const double f = ambient_f(metric, field, p, tol);
    const Matrix a = shape_operator(p, p.field->normal, tol);
    umbilic.observe((a + f * Matrix::Identity(p.n, p.n)).norm(), u);
  }
  return TheoremReport{{d.finish(), umbilic.finish()}};
}

TheoremReport verify_normal_vanishes(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                     std::span<const Vector> sample, const Tolerances& tol) {
  require_sample(sample);
  require_vanishing(imm, metric, field, sample, false, tol);
  Tracker det("det A_xi", tol.vanish_tol);
  Tracker hv("h(X, V^T)", tol.vanish_tol);
  Tracker curv("R~(X,Y)V^T - R(X,Y)V^T", tol.curvature_tol);
  Tracker sect("K~(X, V^T) - K(X, V^T)", tol.curvature_tol);
  bool any_plane = false;
  for (const auto& u : sample) {
    const FramePacket p = frames(imm, metric, as_span(u), tol, &field);
    const int n = p.n, m = p.m;
    double worst_det = 0.0;
    for (int al = 0; al < m - n; ++al) {
      worst_det = std::max(worst_det, std::abs(shape_operator(p, p.normal.col(al), tol).determinant()));
    }
    det.observe(worst_det, u);

    const Vector vt = p.field->tangential_coords;
    double worst_h = 0.0;
    for (int i = 0; i < n; ++i) worst_h = std::max(worst_h, p.ambient_norm(p.h_of(p.tangent_coeffs.col(i), vt)));
    hv.observe(worst_h, u);

    const MetricAtPoint g = induced_metric(imm, metric, as_span(u), tol);
    const Tensor4 r = riemann_tensor(g, tol);
    const Tensor4 ra = riemann_tensor(p.ambient, tol);
    double worst_r = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const Vector x = p.tangent_coeffs.col(a), y = p.tangent_coeffs.col(b);
        const Vector intrinsic = apply_riemann(r, x, y, vt);
        const Vector ambient = apply_riemann(ra, p.jacobian * x, p.jacobian * y, p.jacobian * vt);
        for (int c = 0; c < n; ++c) {
          const Vector w = p.tangent_coeffs.col(c);
          worst_r = std::max(worst_r, std::abs(intrinsic.dot(g.g * w) - p.ambient_inner(ambient, p.jacobian * w)));
        }
      }
    }
    curv.observe(worst_r, u);

    const double vnorm2 = vt.dot(g.g * vt);
    double worst_k = 0.0;
    bool plane = false;
    for (int i = 0; i < n; ++i) {
      Vector x = p.tangent_coeffs.col(i);
      x -= (x.dot(g.g * vt) / vnorm2) * vt;
      if (std::sqrt(x.dot(g.g * x)) < 1e-6) continue;
      plane = true;
      const double k = sectional_curvature(r, g.g, x, vt, tol);
      const double ka = sectional_curvature(ra, p.ambient.g, p.jacobian * x, p.jacobian * vt, tol);
      worst_k = std::max(worst_k, std::abs(k - ka));
    }
    if (plane) {
      any_plane = true;
      sect.observe(worst_k, u);
    }
  }
  CheckItem k = sect.finish();
  if (!any_plane) k.note = "no tangent plane contains V^T";
  return TheoremReport{{det.finish(), hv.finish(), curv.finish(), k}};
}

TheoremReport verify_torqued_props(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                   std::span<const Vector> sample, const Tolerances& tol) {
  require_sample(sample);
  std::vector<ClassificationReport> fits;
  std::vector<FramePacket> packets;
  double max_t = 0.0, max_n = 0.0;
  for (const auto& u : sample) {
    packets.push_back(frames(imm, metric, as_span(u), tol, &field));
    fits.push_back(fit_torse_forming(metric, field, as_span(packets.back().point), tol));
    max_t = std::max(max_t, packets.back().field->tangential_norm);
    max_n = std::max(max_n, packets.back().field->normal_norm);
  }
  Tolerances relaxed = tol;
  relaxed.class_min_points = std::min<int>(tol.class_min_points, static_cast<int>(fits.size()));
  const SceneClassification scene = classify(fits, relaxed);
  if (scene.verdict != Verdict::Torqued && scene.verdict != Verdict::Concircular) {
    throw Error(ErrorCode::Precondition,
                "torqued checks need a torqued field; classified as " + std::string(to_string(scene.verdict)));
  }

  TheoremReport out;
  if (max_n <= tol.vanish_tol) {
    Tracker conc("intrinsic concircular residual", tol.class_tol);
    Tracker fdiff("f_M - f", tol.class_tol);
    Tracker det("det A_xi", tol.vanish_tol);
    Tracker wt("|W^T|", tol.vanish_tol);
    bool w_tangent = false;
    for (std::size_t s = 0; s < sample.size(); ++s) {
      const Vector& u = sample[s];
      const FramePacket& p = packets[s];
      const int n = p.n;
      double w2 = 0.0;
      for (int i = 0; i < n; ++i) w2 += std::pow(p.ambient_inner(fits[s].dual, p.tangent.col(i)), 2);
      wt.observe(std::sqrt(w2), u);
      if (std::sqrt(w2) > tol.vanish_tol) w_tangent = true;
      const MetricAtPoint g = induced_metric(imm, metric, as_span(u), tol);
      const Tensor3 gamma = christoffel(g, tol);
      const FieldSplitJets jets = field_split_jets(imm, metric, field, as_span(u), tol);
      Matrix b(n, n);
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          double v = jets.tangential_coords[k].d(i);
          for (int j = 0; j < n; ++j) v += gamma(k, i, j) * jets.tangential_coords[j].value();
          b(k, i) = v;
        }
      }
      Eigen::LLT<Matrix> llt(g.g);
      const Matrix l = llt.matrixU();
      const Matrix linv = l.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
      const Matrix a = l * b * linv;
      const double fm = a.trace() / n;
      conc.observe((a - fm * Matrix::Identity(n, n)).norm() / std::max(1.0, a.norm()), u);
      fdiff.observe(std::abs(fm - fits[s].f), u);
      double worst_det = 0.0;
      for (int al = 0; al < p.m - n; ++al) {
        worst_det = std::max(worst_det, std::abs(shape_operator(p, p.normal.col(al), tol).determinant()));
      }
      det.observe(worst_det, u);
    }
    CheckItem w = wt.finish();
    w.pass = true;
    w.informational = true;
    w.flagged = w_tangent;
    if (w_tangent) w.note = "W^T != 0 on the sample: V^T need not be concircular";
    out.items = {conc.finish(), fdiff.finish(), det.finish(), w};
    return out;
  }
  if (max_t <= tol.vanish_tol) {
    Tracker umbilic("A_V^perp + f Id", tol.umbilic_tol);
    Tracker dperp("D_X V^perp, X orthogonal to W^T", tol.vanish_tol);
    Tracker dw("D_W^T V^perp - |W^T|^2 V^perp", tol.umbilic_tol);
    Tracker wt("|W^T|", tol.vanish_tol);
    bool w_vanishes = true;
    for (std::size_t s = 0; s < sample.size(); ++s) {
      const Vector& u = sample[s];
      const FramePacket& p = packets[s];
      const int n = p.n;
      const Vector& vperp = p.field->normal;
      const Matrix a = shape_operator(p, vperp, tol);
      umbilic.observe((a + fits[s].f * Matrix::Identity(n, n)).norm(), u);

      const FieldSplitJets jets = field_split_jets(imm, metric, field, as_span(u), tol);
      const WeingartenSplit split = weingarten(p, jets.normal);
      Vector wf(n);
      for (int i = 0; i < n; ++i) wf[i] = p.ambient_inner(fits[s].dual, p.tangent.col(i));
      const double wnorm = wf.norm();
      wt.observe(wnorm, u);
      if (wnorm > tol.vanish_tol) w_vanishes = false;

      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        Vector x = Vector::Unit(n, i);
        if (wnorm > tol.vanish_tol) x -= (wf[i] / (wnorm * wnorm)) * wf;
        worst = std::max(worst, p.ambient_norm(split.normal * x));
      }
      dperp.observe(worst, u);
      if (wnorm > tol.vanish_tol) {
        dw.observe(p.ambient_norm(split.normal * wf - wnorm * wnorm * vperp), u);
      }
    }
    CheckItem w = wt.finish();
    w.pass = true;
    w.informational = true;
    w.flagged = w_vanishes;
    if (w_vanishes) w.note = "W^T = 0 on the sample: V^perp is parallel in the normal bundle";
    out.items = {umbilic.finish(), dperp.finish(), dw.finish(), w};
    return out;
  }
  throw Error(ErrorCode::Precondition, "torqued checks need V tangent or normal to M (max |V^T| = " +
                                           std::to_string(max_t) + ", max |V^perp| = " + std::to_string(max_n) + ")");
}

std::string_view to_string(RectifyingMode mode) {
  switch (mode) {
    case RectifyingMode::Proper: return "proper-rectifying";
    case RectifyingMode::Rectifying: return "rectifying";
    case RectifyingMode::TangentAxisHypersurface: return "tangent-axis-hypersurface";
    case RectifyingMode::NormalVanishes: return "normal-vanishes";
    case RectifyingMode::NotRectifying: return "not-rectifying";
  }
  return "not-rectifying";
}

RectifyingReport verify_rectifying(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                   std::span<const Vector> sample, const Tolerances& tol) {
  require_sample(sample);
  RectifyingReport out;
  out.min_tangential = out.min_normal = std::numeric_limits<double>::infinity();
  double max_normal = 0.0;
  for (const auto& u : sample) {
    const FramePacket p = frames(imm, metric, as_span(u), tol, &field);
    RectifyingPoint pt;
    pt.u = u;
    pt.tangential_norm = p.field->tangential_norm;
    pt.normal_norm = p.field->normal_norm;
    pt.residual = rectifying_residual(p, tol);
    pt.avperp = check_avperp_zero(p, tol);
    pt.first_normal_rank = second_fundamental_form(p, tol).first_normal.rank;
    out.min_tangential = std::min(out.min_tangential, pt.tangential_norm);
    out.min_normal = std::min(out.min_normal, pt.normal_norm);
    max_normal = std::max(max_normal, pt.normal_norm);
    out.points.push_back(std::move(pt));
  }
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (out.points[i].residual > out.worst_residual || i == 0) {
      out.worst_residual = out.points[i].residual;
      out.witness = i;
    }
    out.worst_avperp = std::max(out.worst_avperp, out.points[i].avperp);
  }

  if (imm.m - imm.n == 1 && max_normal <= tol.vanish_tol) {
    out.mode = RectifyingMode::TangentAxisHypersurface;
    out.tangent_axis = verify_normal_vanishes(imm, metric, field, sample, tol);
    out.pass = out.tangent_axis->pass();
    return out;
  }
  if (out.min_normal <= tol.proper_tol) {
    out.mode = RectifyingMode::NormalVanishes;
    return out;
  }
  if (out.worst_residual > tol.rect_tol) {
    out.mode = RectifyingMode::NotRectifying;
    return out;
  }
  out.proper = out.min_tangential > tol.proper_tol;
  out.mode = out.proper ? RectifyingMode::Proper : RectifyingMode::Rectifying;
  out.pass = out.worst_avperp <= tol.avperp_tol;
  return out;
}

}  // namespace rectsub
