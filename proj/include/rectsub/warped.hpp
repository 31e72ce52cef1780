#pragma once

#include <span>
#include <vector>

#include "rectsub/classifier.hpp"
#include "rectsub/rectifying.hpp"
#include "rectsub/submanifold.hpp"

namespace rectsub {

struct CurveSample {
  double s = 0.0;
  Vector u;
  double lambda = 0.0;  // |V^T| at u
  double f = 0.0;       // conformal scalar at Psi(u)
};

/// Unit-speed integral curve of V^T / |V^T| with uniform spacing `step`.
struct IntegralCurve {
  std::vector<CurveSample> samples;
  double step = 0.0;
  bool exited = false;  // left the parameter box before reaching `length`
  std::size_t evaluations = 0;
  double max_speed_error = 0.0;  // max ||dPsi(u)/ds| - 1| at the samples
};

/// Thrown when the curve leaves the parameter box; carries what was traced.
class DomainExitError : public Error {
 public:
  DomainExitError(const std::string& message, IntegralCurve partial)
      : Error(ErrorCode::DomainExit, message), partial_(std::move(partial)) {}
  const IntegralCurve& partial() const noexcept { return partial_; }

 private:
  IntegralCurve partial_;
};

/// RK4 on du/ds = V^T / |V^T|_g starting at u0.
IntegralCurve trace_integral_curve(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                   std::span<const double> u0, double length, double step,
                                   const Tolerances& tol = {});

/// max over interior samples of |dlambda/ds - f (1 - lambda^2)|.
double warping_ode_residual(const IntegralCurve& curve);

struct WarpFit {
  double constant = 0.0;
  std::vector<double> integral;  // int_{s_0}^{s} f, cumulative Simpson
  std::vector<double> model;     // tanh(integral + constant)
  double deviation = 0.0;
  std::size_t witness = 0;
};

/// Fits lambda(s) = tanh(int f + C) with C taken at the curve midpoint.
WarpFit fit_tanh_integral(const IntegralCurve& curve);

/// Ambient identities for an anti-torqued V with E_1 = V/|V|.
TheoremReport verify_ambient_decomposition(const MetricField& metric, const VectorField& field,
                                           std::span<const Vector> sample, const Tolerances& tol = {});

/// ds^2 + lambda(s)^2 g_F on I x F with V = d/ds. Chart coordinates are
/// (s, y1, ..., yk).
struct WarpedAmbient {
  MetricField metric;
  VectorField field;
  Box domain;
  Expression lambda;  // over the single variable s
};

/// `lambda` is over {s}; `fiber` is a row-major k x k metric over y1..yk.
/// Throws NonPositiveWarp when lambda <= 0 somewhere on the s-interval.
WarpedAmbient build_warped_ambient(const Expression& lambda, std::span<const Expression> fiber,
                                   std::pair<double, double> s_interval, const Box& fiber_domain);

struct WarpedConverse {
  Verdict verdict = Verdict::None;
  double f_error = 0.0;  // max |f - d log(lambda)/ds|
  Vector witness;
  bool degenerate = false;  // lambda' = 0 throughout: the field is parallel
  bool pass = false;
};

/// Classifies d/ds on the warped ambient and compares f with d log(lambda)/ds.
WarpedConverse warped_converse(const WarpedAmbient& ambient, std::span<const Vector> sample,
                               const Tolerances& tol = {});

}  // namespace rectsub
