#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "rectsub/classifier.hpp"
#include "rectsub/rectifying.hpp"
#include "rectsub/scene.hpp"
#include "rectsub/warped.hpp"

using namespace rectsub;

namespace {

std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* label, double value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.3e", label, value);
  return buf;
}

std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

std::vector<ClassificationReport> fit_all(const Scene& s, const std::vector<Vector>& pts) {
  std::vector<ClassificationReport> out;
  for (const auto& p : pts) out.push_back(fit_torse_forming(s.metric, *s.field, as_span(p), s.tolerances));
  return out;
}

Outcome radial_classification() {
  const Scene s = builtin_scene("radial-r4");
  const auto pts = s.ambient_sample(200, s.seed);
  const auto reports = fit_all(s, pts);
  const SceneClassification c = classify(reports, s.tolerances);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double f = 1.0 / pts[i].norm();
    worst = std::max(worst, std::abs(reports[i].f - f) / f);
  }
  return {c.verdict == Verdict::AntiTorqued && worst <= 1e-8,
          join({"verdict=" + std::string(to_string(c.verdict)), fmt("f_rel_err", worst)})};
}

Outcome geodesic_unit() {
  const Scene s = builtin_scene("radial-r4");
  const double g = geodesic_unit_check(s.metric, *s.field, s.ambient_sample(200, s.seed), s.tolerances);
  return {g <= 1e-9, fmt("max|nabla_V V|", g)};
}

double max_split(const Scene& s, const std::vector<Vector>& sample, bool tangential) {
  double worst = 0.0;
  for (const auto& u : sample) {
    const FramePacket p = frames(*s.immersion, s.metric, as_span(u), s.tolerances, &*s.field);
    worst = std::max(worst, tangential ? p.field->tangential_norm : p.field->normal_norm);
  }
  return worst;
}

Outcome clifford_torus() {
  const Scene s = builtin_scene("clifford-torus");
  const auto sample = s.parameter_sample(50, s.seed);
  const double vt = max_split(s, sample, true);
  const TheoremReport t = verify_tangential_vanishes(*s.immersion, s.metric, *s.field, sample, s.tolerances);
  const double a = t.find("A_V^perp + f Id")->worst;
  const double d = t.find("D_X V^perp")->worst;
  // f = 1 on the unit sphere that carries the torus
  return {vt <= 1e-10 && a <= 1e-8 && d <= 1e-8, join({fmt("|V^T|", vt), fmt("|A+Id|", a), fmt("|D V^perp|", d)})};
}

double max_induced_curvature(const Scene& s, const std::vector<Vector>& sample) {
  double worst = 0.0;
  for (const auto& u : sample) {
    const MetricAtPoint g = induced_metric(*s.immersion, s.metric, as_span(u), s.tolerances);
    Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
    e1[0] = 1.0;
    e2[1] = 1.0;
    worst = std::max(worst, std::abs(sectional_curvature(g, e1, e2, s.tolerances)));
  }
  return worst;
}

Outcome tangent_developable() {
  const Scene s = builtin_scene("tangent-developable");
  const auto sample = s.parameter_sample(50, s.seed);
  const double vn = max_split(s, sample, false);
  const TheoremReport t = verify_normal_vanishes(*s.immersion, s.metric, *s.field, sample, s.tolerances);
  const double det = t.find("det A_xi")->worst;
  const double dk = t.find("K~(X, V^T) - K(X, V^T)")->worst;
  const double k = max_induced_curvature(s, sample);
  return {vn <= 1e-8 && det <= 1e-8 && dk <= 1e-7 && k <= 1e-7,
          join({fmt("|V^perp|", vn), fmt("det A", det), fmt("|K~-K|", dk), fmt("|K|", k)})};
}

Outcome cone() {
  const Scene s = builtin_scene("cone");
  const auto sample = s.parameter_sample(100, s.seed);
  const double vn = max_split(s, sample, false);
  const TheoremReport t = verify_normal_vanishes(*s.immersion, s.metric, *s.field, sample, s.tolerances);
  const double det = t.find("det A_xi")->worst;
  return {vn <= 1e-8 && det <= 1e-8, join({fmt("|V^perp|", vn), fmt("det A", det)})};
}

Outcome rectifying_example() {
  const Scene s = builtin_scene("rectifying-psi");
  const auto sample = s.parameter_sample(50, s.seed);
  const RectifyingReport r = verify_rectifying(*s.immersion, s.metric, *s.field, sample, s.tolerances);
  const IntegralCurve c = trace_integral_curve(*s.immersion, s.metric, *s.field, std::span<const double>(s.curve->start),
                                               s.curve->length, s.curve->step, s.tolerances);
  const double ode = warping_ode_residual(c);
  const WarpFit fit = fit_tanh_integral(c);
  double dev = 0.0;
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    const double x = c.samples[i].u[0];
    dev = std::max(dev, std::abs(fit.model[i] - x / std::sqrt(1.0 + x * x)));
  }
  const bool ok = r.worst_residual <= 1e-7 && r.proper && r.worst_avperp <= 1e-8 && ode <= 1e-6 && dev <= 1e-6;
  return {ok, join({fmt("residual", r.worst_residual), std::string("proper=") + (r.proper ? "yes" : "no"),
                    fmt("|A_V^perp|", r.worst_avperp), fmt("ode", ode), fmt("fit_dev", dev)})};
}

Outcome warped_round_trip() {
  const std::vector<Expression> fiber{Expression::parse("1", {"y1", "y2"}), Expression::parse("0", {"y1", "y2"}),
                                      Expression::parse("0", {"y1", "y2"}), Expression::parse("1", {"y1", "y2"})};
  bool ok = true;
  std::string detail;
  for (const char* lambda : {"exp(s)", "cosh(s)", "2 + sin(s)"}) {
    const WarpedAmbient w =
        build_warped_ambient(Expression::parse(lambda, {"s"}), fiber, {0.0, 1.0}, Box{{{-1, 1}, {-1, 1}}});
    const auto sample = sample_box(w.domain.intervals, 50, 42);
    const WarpedConverse r = warped_converse(w, sample);
    const TheoremReport d = verify_ambient_decomposition(w.metric, w.field, sample);
    const bool this_ok = r.verdict == Verdict::AntiTorqued && r.f_error <= 1e-8 && d.pass();
    ok = ok && this_ok;
    detail += (detail.empty() ? "" : "; ") + std::string(lambda) + ": " + std::string(to_string(r.verdict)) + " " +
              fmt("f_err", r.f_error) + (d.pass() ? " (a)-(d) ok" : " (a)-(d) failed");
  }
  return {ok, detail};
}

Outcome gauss_everywhere() {
  double worst = 0.0;
  int scenes = 0;
  for (const auto& name : builtin_names()) {
    const Scene s = builtin_scene(name);
    if (!s.immersion) continue;
    ++scenes;
    for (const auto& u : s.parameter_sample(50, s.seed)) {
      worst = std::max(worst, gauss_equation_max_residual(*s.immersion, s.metric, as_span(u), s.tolerances));
    }
  }
  return {worst <= 1e-7, join({"scenes=" + std::to_string(scenes), fmt("max_residual", worst)})};
}

Outcome negative_control() {
  const Scene s = builtin_scene("unit-sphere");
  double least = 1e300, worst_a = 0.0;
  for (const auto& u : s.parameter_sample(50, s.seed)) {
    const FramePacket p = frames(*s.immersion, s.metric, as_span(u), s.tolerances, &*s.field);
    least = std::min(least, rectifying_residual(p, s.tolerances));
    const Matrix a = shape_operator(p, p.field->normal, s.tolerances);
    worst_a = std::max(worst_a, (a + Matrix::Identity(2, 2)).norm());
  }
  const RectifyingReport r = verify_rectifying(*s.immersion, s.metric, *s.field, s.parameter_sample(50, s.seed),
                                               s.tolerances);
  return {least >= 0.99 && worst_a <= 1e-8 && !r.pass,
          join({fmt("min_residual", least), fmt("|A+Id|", worst_a), std::string("rectifying=") + (r.pass ? "pass" : "fail")})};
}

double koszul_polar_sphere() {
  const MetricField g(2, {Expression::parse("1", {"th", "ph"}), Expression::parse("0", {"th", "ph"}),
                          Expression::parse("0", {"th", "ph"}), Expression::parse("sin(th)^2", {"th", "ph"})});
  double worst = 0.0;
  for (double th : {0.3, 0.9, 1.7, 2.6}) {
    const double p[2] = {th, 1.0};
    const MetricAtPoint at = g.at(p);
    const Tensor3 c = christoffel(at);
    worst = std::max(worst, std::abs(c(0, 1, 1) + std::sin(th) * std::cos(th)));
    worst = std::max(worst, std::abs(c(1, 0, 1) - std::cos(th) / std::sin(th)));
    worst = std::max(worst, std::abs(c(0, 0, 0)) + std::abs(c(1, 1, 1)) + std::abs(c(0, 0, 1)));
    const Tensor4 r = riemann_tensor(at);
    worst = std::max(worst, std::abs(r(0, 1, 0, 1) - std::sin(th) * std::sin(th)));
  }
  return worst;
}

double koszul_warped() {
  const MetricField g(2, {Expression::parse("1", {"s", "t"}), Expression::parse("0", {"s", "t"}),
                          Expression::parse("0", {"s", "t"}), Expression::parse("(2 + sin(s))^2", {"s", "t"})});
  double worst = 0.0;
  for (double s : {0.1, 0.5, 0.9}) {
    const double p[2] = {s, 0.0};
    const MetricAtPoint at = g.at(p);
    const double l = 2.0 + std::sin(s), dl = std::cos(s), ddl = -std::sin(s);
    const Tensor3 c = christoffel(at);
    worst = std::max(worst, std::abs(c(0, 1, 1) + l * dl));
    worst = std::max(worst, std::abs(c(1, 0, 1) - dl / l));
    Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
    e1[0] = 1.0;
    e2[1] = 1.0;
    worst = std::max(worst, std::abs(sectional_curvature(at, e1, e2) + ddl / l));
  }
  return worst;
}

double sphere_h() {
  const double r = 1.5;
  Immersion imm;
  imm.n = 2;
  imm.m = 3;
  for (const char* c : {"1.5*sin(a)*cos(b)", "1.5*sin(a)*sin(b)", "1.5*cos(a)"}) {
    imm.components.push_back(Expression::parse(c, {"a", "b"}));
  }
  imm.domain.intervals = {{0.3, 2.8}, {0, 6.2}};
  double worst = 0.0;
  for (const auto& u : sample_box(imm.domain.intervals, 20, 42)) {
    const FramePacket p = frames(imm, MetricField::euclidean(3), as_span(u));
    const Vector pos = imm.position(as_span(u));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        worst = std::max(worst, (p.h_coord[i * 2 + j] + (p.induced(i, j) / (r * r)) * pos).norm());
      }
    // K = 1/r^2 for the induced metric
    Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
    e1[0] = 1.0;
    e2[1] = 1.0;
    const MetricAtPoint g = induced_metric(imm, MetricField::euclidean(3), as_span(u));
    worst = std::max(worst, std::abs(sectional_curvature(g, e1, e2) - 1.0 / (r * r)));
  }
  return worst;
}

std::string random_expression(std::mt19937_64& rng, int depth) {
  static const char* unary[] = {"sin", "cos", "exp", "tanh", "atan", "asinh"};
  std::uniform_int_distribution<int> pick(0, 7);
  const int k = pick(rng);
  if (depth == 0 || k < 2) {
    if (k == 0) return std::to_string(std::uniform_real_distribution<double>(0.2, 2.0)(rng));
    return std::string(1, "abc"[std::uniform_int_distribution<int>(0, 2)(rng)]);
  }
  const std::string l = random_expression(rng, depth - 1);
  if (k < 4) return std::string(unary[std::uniform_int_distribution<int>(0, 5)(rng)]) + "(0.5*" + l + ")";
  const std::string r = random_expression(rng, depth - 1);
  if (k == 4) return "(" + l + ")*(" + r + ")";
  if (k == 5) return "(" + l + ")/(2+(" + r + ")^2)";
  if (k == 6) return "sqrt(1+(" + l + ")^2)";
  return "(" + l + ")-(" + r + ")";
}

double finite_difference_oracle() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Expression e = Expression::parse(random_expression(rng, 4), {"a", "b", "c"});
    const std::array<double, 3> p{coord(rng), coord(rng), coord(rng)};
    const Jet j = eval_jet(e, p, 1);
    for (int i = 0; i < 3; ++i) {
      auto central = [&](double h) {
        auto hi = p, lo = p;
        hi[i] += h;
        lo[i] -= h;
        return (e.evaluate(hi) - e.evaluate(lo)) / (2 * h);
      };
      const double rich = (4 * central(5e-4) - central(1e-3)) / 3;
      worst = std::max(worst, std::abs(rich - j.d(i)) / std::max(1.0, std::abs(j.d(i))));
    }
  }
  return worst;
}

Outcome oracle_equivalence() {
  const double a = koszul_polar_sphere(), b = koszul_warped(), c = sphere_h(), d = finite_difference_oracle();
  return {a <= 1e-9 && b <= 1e-9 && c <= 1e-9 && d <= 1e-6,
          join({fmt("polar_sphere", a), fmt("warped", b), fmt("sphere_h", c), fmt("jet_fd", d)})};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"radial axis classification", radial_classification},
      {"geodesic unit field", geodesic_unit},
      {"clifford torus", clifford_torus},
      {"tangent developable", tangent_developable},
      {"cone", cone},
      {"rectifying example", rectifying_example},
      {"warped round trip", warped_round_trip},
      {"gauss equation on built-ins", gauss_everywhere},
      {"negative control", negative_control},
      {"oracle equivalence", oracle_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
