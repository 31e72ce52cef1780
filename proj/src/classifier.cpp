#include "rectsub/classifier.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

namespace rectsub {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Parallel: return "parallel";
    case Verdict::Concircular: return "concircular";
    case Verdict::AntiTorqued: return "anti-torqued";
    case Verdict::Torqued: return "torqued";
    case Verdict::TorseForming: return "torse-forming";
    case Verdict::None: return "none";
  }
  return "none";
}

double ClassificationReport::residual(Verdict v) const {
  switch (v) {
    case Verdict::Parallel: return gradient_norm;
    case Verdict::Concircular: return residual_concircular;
    case Verdict::AntiTorqued: return residual_antitorqued;
    case Verdict::Torqued: return residual_torqued;
    case Verdict::TorseForming: return residual_torse;
    case Verdict::None: return 0.0;
  }
  return 0.0;
}

namespace {

Verdict point_verdict(const ClassificationReport& r, const Tolerances& tol) {
  if (r.gradient_norm <= tol.parallel_tol) return Verdict::Parallel;
  for (Verdict v : {Verdict::Concircular, Verdict::AntiTorqued, Verdict::Torqued, Verdict::TorseForming}) {
    if (r.residual(v) <= tol.class_tol) return v;
  }
  return Verdict::None;
}

double class_tolerance(Verdict v, const Tolerances& tol) {
  return v == Verdict::Parallel ? tol.parallel_tol : tol.class_tol;
}

}  // namespace

ClassificationReport fit_torse_forming(const Matrix& g, const Vector& v, const Matrix& covariant,
                                       const Tolerances& tol) {
  const int m = static_cast<int>(g.rows());
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "torse-forming fit needs ambient dimension >= 2");

  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularMetric, "metric is not positive definite");
  spd_inverse(g, tol.spd_tol);
  // Orthonormal coordinates y = L x with g = L^T L.
  const Matrix l = llt.matrixU();
  const Matrix linv = l.triangularView<Eigen::Upper>().solve(Matrix::Identity(m, m));
  const Matrix a = l * covariant * linv;
  const Vector vh = l * v;

  ClassificationReport out;
  out.field_norm = vh.norm();
  if (!(out.field_norm > tol.zero_field_tol)) {
    throw Error(ErrorCode::ZeroField, "field vanishes at the point (|V| = " + std::to_string(out.field_norm) + ")");
  }

  // Least squares over entries a_ki ~ f delta_ki + vh_k omega_i.
  Matrix design = Matrix::Zero(m * m, m + 1);
  Vector rhs(m * m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      const int row = k * m + i;
      design(row, 0) = k == i ? 1.0 : 0.0;
      design(row, 1 + i) = vh[k];
      rhs[row] = a(k, i);
    }
  }
  const Matrix normal = design.transpose() * design;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(normal, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
  out.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  Eigen::LLT<Matrix> solver(normal);
  if (solver.info() != Eigen::Success || !(out.condition < 1e14)) {
    throw Error(ErrorCode::SingularSystem,
                "torse-forming normal equations are singular (condition number " + std::to_string(out.condition) + ")");
  }
  const Vector theta = solver.solve(design.transpose() * rhs);
  out.f = theta[0];
  const Vector omega_hat = theta.tail(m);

  out.gradient_norm = a.norm();
  const double scale = std::max(1.0, out.gradient_norm);
  out.residual_torse = (design * theta - rhs).norm() / scale;
  out.residual_concircular =
      std::max(out.residual_torse, omega_hat.norm() * out.field_norm / scale);
  out.residual_torqued = std::max(out.residual_torse, std::abs(omega_hat.dot(vh)) / scale);
  out.residual_antitorqued =
      std::max(out.residual_torse, (omega_hat + out.f * vh).norm() * out.field_norm / scale);
  out.geodesic = (a * vh).norm();

  out.omega = l.transpose() * omega_hat;
  out.dual = linv * omega_hat;
  out.verdict = point_verdict(out, tol);
  return out;
}

ClassificationReport fit_torse_forming(const MetricField& metric, const VectorField& field,
                                       std::span<const double> point, const Tolerances& tol) {
  const MetricAtPoint g = metric.at(point, 1);
  const Tensor3 gamma = christoffel(g, tol);
  const VectorAtPoint v = field.at(point);
  const int m = metric.dim();
  Matrix cov(m, m);
  for (int i = 0; i < m; ++i) cov.col(i) = covariant_derivative(gamma, v, Vector::Unit(m, i));
  ClassificationReport out = fit_torse_forming(g.g, v.components, cov, tol);
  out.point = Eigen::Map<const Vector>(point.data(), static_cast<int>(point.size()));
  return out;
}

SceneClassification classify(std::span<const ClassificationReport> reports, const Tolerances& tol) {
  if (static_cast<int>(reports.size()) < tol.class_min_points) {
    throw Error(ErrorCode::Precondition, "classification needs at least " + std::to_string(tol.class_min_points) +
                                             " sample points, got " + std::to_string(reports.size()));
  }
  SceneClassification out;
  out.points = reports.size();
  if (reports.empty()) return out;

  double min_torse = std::numeric_limits<double>::infinity();
  std::size_t worst_torse = 0;
  out.f_min = std::numeric_limits<double>::infinity();
  out.f_max = -std::numeric_limits<double>::infinity();
  double f_sum = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (r.residual_torse > out.max_residual_torse) worst_torse = i;
    out.max_residual_torse = std::max(out.max_residual_torse, r.residual_torse);
    out.max_residual_concircular = std::max(out.max_residual_concircular, r.residual_concircular);
    out.max_residual_torqued = std::max(out.max_residual_torqued, r.residual_torqued);
    out.max_residual_antitorqued = std::max(out.max_residual_antitorqued, r.residual_antitorqued);
    out.max_gradient = std::max(out.max_gradient, r.gradient_norm);
    min_torse = std::min(min_torse, r.residual_torse);
    out.f_min = std::min(out.f_min, r.f);
    out.f_max = std::max(out.f_max, r.f);
    f_sum += r.f;
  }
  out.f_mean = f_sum / static_cast<double>(reports.size());

  if (min_torse <= tol.class_tol && out.max_residual_torse > tol.inconsistency_band * tol.class_tol) {
    const auto& w = reports[worst_torse];
    std::string where;
    for (int i = 0; i < w.point.size(); ++i) where += (i ? ", " : "") + std::to_string(w.point[i]);
    throw Error(ErrorCode::InconsistentSample,
                "field is torse-forming at some sample points but not at (" + where +
                    ") (residual " + std::to_string(out.max_residual_torse) + ")");
  }

  out.verdict = Verdict::None;
  for (Verdict v : {Verdict::Parallel, Verdict::Concircular, Verdict::AntiTorqued, Verdict::Torqued,
                    Verdict::TorseForming}) {
    double worst = 0.0;
    for (const auto& r : reports) worst = std::max(worst, r.residual(v));
    if (worst <= class_tolerance(v, tol)) {
      out.verdict = v;
      break;
    }
  }
  const Verdict key = out.verdict == Verdict::None ? Verdict::TorseForming : out.verdict;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const double r = reports[i].residual(key);
    if (r > out.worst_residual || i == 0) {
      out.worst_residual = r;
      out.witness = i;
    }
  }
  return out;
}

double geodesic_unit_check(const MetricField& metric, const VectorField& field, std::span<const Vector> points,
                           const Tolerances& tol) {
  std::vector<ClassificationReport> reports;
  reports.reserve(points.size());
  for (const auto& p : points) reports.push_back(fit_torse_forming(metric, field, {p.data(), static_cast<std::size_t>(p.size())}, tol));
  const SceneClassification scene = classify(reports, tol);
  if (scene.verdict != Verdict::AntiTorqued) {
    throw Error(ErrorCode::Precondition,
                "geodesic check needs an anti-torqued field; classified as " + std::string(to_string(scene.verdict)));
  }
  double worst = 0.0, unit_dev = 0.0;
  for (const auto& r : reports) {
    unit_dev = std::max(unit_dev, std::abs(r.field_norm - 1.0));
    worst = std::max(worst, r.geodesic);
  }
  if (unit_dev > tol.unit_tol) {
    throw Error(ErrorCode::Precondition, "geodesic check needs a unit field (max ||V| - 1| = " +
                                             std::to_string(unit_dev) + ")");
  }
  return worst;
}

double SampleStream::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::vector<Vector> sample_box(std::span<const std::pair<double, double>> box, std::size_t count,
                               std::uint64_t seed) {
  return sample_box(box, count, seed, [](const Vector&) { return true; });
}

}  // namespace rectsub
