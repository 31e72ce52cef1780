#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rectsub/config.hpp"
#include "rectsub/metric.hpp"

namespace rectsub {

/// Ordered from most to least specific.
enum class Verdict { Parallel, Concircular, AntiTorqued, Torqued, TorseForming, None };

std::string_view to_string(Verdict v);

/// Fit of nabla~_X V = f X + omega(X) V at one point.
struct ClassificationReport {
  Vector point;
  double f = 0.0;
  Vector omega;        // covector components omega_a
  Vector dual;         // W with omega(X) = g~(W, X)
  double residual_torse = 0.0;
  double residual_concircular = 0.0;
  double residual_torqued = 0.0;
  double residual_antitorqued = 0.0;
  double gradient_norm = 0.0;  // |nabla~ V| (Frobenius, orthonormal frame)
  double field_norm = 0.0;     // |V|
  double geodesic = 0.0;       // |nabla~_V V|
  double condition = 0.0;      // of the normal equations
  Verdict verdict = Verdict::None;

  /// Residual of a class at this point (0 for Parallel when it holds).
  double residual(Verdict v) const;
};

ClassificationReport fit_torse_forming(const MetricField& metric, const VectorField& field,
                                       std::span<const double> point, const Tolerances& tol = {});

/// Same fit from precomputed data; `covariant` is the m x m matrix whose
/// column i is nabla~_{d_i} V.
ClassificationReport fit_torse_forming(const Matrix& g, const Vector& v, const Matrix& covariant,
                                       const Tolerances& tol = {});

struct SceneClassification {
  Verdict verdict = Verdict::None;
  std::size_t points = 0;
  std::size_t witness = 0;       // index of the worst point for the verdict's residual
  double worst_residual = 0.0;   // max residual of the chosen class
  double max_residual_torse = 0.0;
  double max_residual_concircular = 0.0;
  double max_residual_torqued = 0.0;
  double max_residual_antitorqued = 0.0;
  double max_gradient = 0.0;
  double f_min = 0.0;
  double f_max = 0.0;
  double f_mean = 0.0;
};

/// Most specific class whose residual stays within class_tol at every
/// point. Throws InconsistentSample when some points are torse-forming and
/// others miss by more than the tolerance band.
SceneClassification classify(std::span<const ClassificationReport> reports, const Tolerances& tol = {});

/// Uniform samples from `box` with a fixed 64-bit seed; points for which
/// `accept` returns false are redrawn.
template <class Accept>
std::vector<Vector> sample_box(std::span<const std::pair<double, double>> box, std::size_t count,
                               std::uint64_t seed, Accept&& accept);

std::vector<Vector> sample_box(std::span<const std::pair<double, double>> box, std::size_t count,
                               std::uint64_t seed);

/// max_p |nabla~_V V| for a unit anti-torqued field.
double geodesic_unit_check(const MetricField& metric, const VectorField& field, std::span<const Vector> points,
                           const Tolerances& tol = {});

// ---------------------------------------------------------------------------

/// splitmix64-based stream of doubles in [0, 1); identical on every platform.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : state_(seed) {}
  double next();

 private:
  std::uint64_t state_;
};

template <class Accept>
std::vector<Vector> sample_box(std::span<const std::pair<double, double>> box, std::size_t count,
                               std::uint64_t seed, Accept&& accept) {
  SampleStream stream(seed);
  std::vector<Vector> out;
  out.reserve(count);
  std::size_t attempts = 0;
  const std::size_t limit = 1000 * (count + 1);
  while (out.size() < count) {
    if (++attempts > limit) {
      throw Error(ErrorCode::InvalidArgument, "sampling rejected too many points; domain exclusion too large");
    }
    Vector p(static_cast<int>(box.size()));
    for (std::size_t i = 0; i < box.size(); ++i) {
      p[static_cast<int>(i)] = box[i].first + (box[i].second - box[i].first) * stream.next();
    }
    if (accept(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace rectsub
