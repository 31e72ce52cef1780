#include "rectsub/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>

#include <json.hpp>

#include "rectsub/rectifying.hpp"
#include "rectsub/warped.hpp"

namespace rectsub {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void fill_from(CheckResult& r, const TheoremReport& t) {
  double ratio = -1.0;
  std::string flags;
  for (const auto& item : t.items) {
    r.values.emplace_back(item.name, item.worst);
    const double q = item.tolerance > 0.0 ? item.worst / item.tolerance : item.worst;
    if (!item.informational && (q > ratio || std::isnan(q))) {
      ratio = q;
      r.residual = item.worst;
      r.tolerance = item.tolerance;
      r.witness = item.witness;
    }
    if (!item.pass) flags += (flags.empty() ? "" : "; ") + item.name + " exceeds tolerance";
    if (item.flagged) flags += (flags.empty() ? "" : "; ") + item.note;
  }
  r.status = t.pass() ? Status::Pass : Status::Fail;
  r.message = flags;
}

struct Context {
  const Scene& scene;
  std::uint64_t seed;
  int points;
  Tolerances tol;
  std::optional<std::vector<Vector>> ambient;
  std::optional<std::vector<Vector>> params;
  std::optional<std::vector<ClassificationReport>> fits;
  std::optional<SceneClassification> classification;
  std::optional<RectifyingReport> rectifying;
  std::optional<IntegralCurve> curve;
  std::optional<double> ode;

  const VectorField& field() const {
    if (!scene.field) throw NotApplicable("scene has no field");
    return *scene.field;
  }
  const Immersion& immersion() const {
    if (!scene.immersion) throw NotApplicable("scene has no submanifold");
    return *scene.immersion;
  }
  const std::vector<Vector>& ambient_sample() {
    if (!ambient) ambient = scene.ambient_sample(static_cast<std::size_t>(points), seed);
    return *ambient;
  }
  const std::vector<Vector>& parameter_sample() {
    if (!params) params = scene.parameter_sample(static_cast<std::size_t>(points), seed + 1);
    return *params;
  }
  const std::vector<ClassificationReport>& ambient_fits() {
    if (!fits) {
      std::vector<ClassificationReport> out;
      for (const auto& x : ambient_sample()) out.push_back(fit_torse_forming(scene.metric, field(), as_span(x), tol));
      fits = std::move(out);
    }
    return *fits;
  }
  const RectifyingReport& rectifying_report() {
    if (!rectifying) {
      rectifying = verify_rectifying(immersion(), scene.metric, field(), parameter_sample(), tol);
    }
    return *rectifying;
  }
  const IntegralCurve& integral_curve() {
    if (!curve) {
      if (!scene.curve) throw NotApplicable("scene has no curve specification");
      const RectifyingReport& r = rectifying_report();
      if (r.mode != RectifyingMode::Proper || !r.pass) {
        throw NotApplicable("submanifold is not proper rectifying (" + std::string(to_string(r.mode)) + ")");
      }
      curve = trace_integral_curve(immersion(), scene.metric, field(), scene.curve->start, scene.curve->length,
                                   scene.curve->step, tol);
    }
    return *curve;
  }
};

void check_classify(Context& ctx, CheckResult& r) {
  const auto& fits = ctx.ambient_fits();
  const SceneClassification c = classify(fits, ctx.tol);
  ctx.classification = c;
  r.tolerance = c.verdict == Verdict::Parallel ? ctx.tol.parallel_tol : ctx.tol.class_tol;
  r.residual = c.verdict == Verdict::None ? c.max_residual_torse : c.worst_residual;
  r.witness = fits[c.witness].point;
  r.values = {{"f", fits[c.witness].f},
              {"residual_torse", c.max_residual_torse},
              {"residual_concircular", c.max_residual_concircular},
              {"residual_antitorqued", c.max_residual_antitorqued},
              {"residual_torqued", c.max_residual_torqued}};
  r.status = c.verdict == Verdict::None ? Status::Fail : Status::Pass;
  r.message = "verdict " + std::string(to_string(c.verdict));
  if (ctx.scene.expected.verdict && *ctx.scene.expected.verdict != to_string(c.verdict)) {
    r.status = Status::Fail;
    r.message += ", expected " + *ctx.scene.expected.verdict;
  }
  if (ctx.scene.expected.f) {
    double worst = 0.0;
    for (const auto& fit : fits) {
      const double want = ctx.scene.expected.f->evaluate(as_span(fit.point));
      worst = std::max(worst, std::abs(fit.f - want) / std::max(std::abs(want), 1e-300));
    }
    r.values.emplace_back("f_relative_error", worst);
    if (!(worst <= ctx.tol.f_tol)) {
      r.status = Status::Fail;
      r.message += ", fitted f misses the expected closed form";
    }
  }
}

void check_geodesic(Context& ctx, CheckResult& r) {
  std::vector<Vector> pts = ctx.ambient_sample();
  r.residual = geodesic_unit_check(ctx.scene.metric, ctx.field(), pts, ctx.tol);
  r.tolerance = ctx.tol.geodesic_tol;
  const auto& fits = ctx.ambient_fits();
  std::size_t w = 0;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (fits[i].geodesic > fits[w].geodesic) w = i;
  }
  r.witness = fits[w].point;
  r.values = {{"|nabla~_V V|", fits[w].geodesic}, {"|V|", fits[w].field_norm}};
  r.status = r.residual <= r.tolerance ? Status::Pass : Status::Fail;
}

void check_ambient_decomposition(Context& ctx, CheckResult& r) {
  fill_from(r, verify_ambient_decomposition(ctx.scene.metric, ctx.field(), ctx.ambient_sample(), ctx.tol));
}

void check_warp_converse(Context& ctx, CheckResult& r) {
  if (!ctx.scene.warped) throw NotApplicable("scene has no warped-product description");
  Box fiber;
  fiber.intervals.assign(ctx.scene.domain.intervals.begin() + 1, ctx.scene.domain.intervals.end());
  const WarpedAmbient w =
      build_warped_ambient(ctx.scene.warped->lambda, ctx.scene.warped->fiber, ctx.scene.domain.intervals[0], fiber);
  const WarpedConverse c = warped_converse(w, ctx.ambient_sample(), ctx.tol);
  r.residual = c.f_error;
  r.tolerance = ctx.tol.warp_geodesic_tol;
  r.witness = c.witness;
  r.values = {{"f_error", c.f_error}};
  r.message = "verdict " + std::string(to_string(c.verdict));
  if (c.degenerate) throw NotApplicable("warping function is constant; d/ds is parallel (degenerate case)");
  r.status = c.pass ? Status::Pass : Status::Fail;
}

void check_gauss(Context& ctx, CheckResult& r) {
  const Immersion& imm = ctx.immersion();
  r.tolerance = ctx.tol.gauss_tol;
  r.residual = -1.0;
  for (const auto& u : ctx.parameter_sample()) {
    const double v = gauss_equation_max_residual(imm, ctx.scene.metric, as_span(u), ctx.tol);
    if (v > r.residual || std::isnan(v)) {
      r.residual = v;
      r.witness = u;
    }
  }
  r.status = r.residual <= r.tolerance ? Status::Pass : Status::Fail;
}

void check_rectifying(Context& ctx, CheckResult& r) {
  const RectifyingReport& rep = ctx.rectifying_report();
  r.message = std::string(to_string(rep.mode));
  if (rep.tangent_axis) {
    fill_from(r, *rep.tangent_axis);
    r.message = std::string(to_string(rep.mode)) + (r.message.empty() ? "" : "; " + r.message);
    return;
  }
  const RectifyingPoint& w = rep.points[rep.witness];
  r.residual = rep.worst_residual;
  r.tolerance = ctx.tol.rect_tol;
  r.witness = w.u;
  r.values = {{"|V^T|_min", rep.min_tangential},
              {"|V^perp|_min", rep.min_normal},
              {"|A_V^perp|_max", rep.worst_avperp},
              {"first_normal_rank", static_cast<double>(w.first_normal_rank)}};
  const FramePacket p = frames(ctx.immersion(), ctx.scene.metric, as_span(w.u), ctx.tol, &ctx.field());
  const Matrix a = shape_operator(p, p.field->normal, ctx.tol);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      r.values.emplace_back("A_V^perp[" + std::to_string(i) + "," + std::to_string(j) + "]", a(i, j));
    }
  }
  r.status = rep.pass ? Status::Pass : Status::Fail;
  if (rep.mode == RectifyingMode::Rectifying) r.message += "; not proper (V^T vanishes)";
  if (!rep.pass && rep.worst_avperp > ctx.tol.avperp_tol && rep.worst_residual <= ctx.tol.rect_tol) {
    r.message += "; A_V^perp does not vanish";
  }
}

void check_tangential(Context& ctx, CheckResult& r) {
  fill_from(r, verify_tangential_vanishes(ctx.immersion(), ctx.scene.metric, ctx.field(), ctx.parameter_sample(),
                                          ctx.tol));
}

void check_normal(Context& ctx, CheckResult& r) {
  fill_from(r, verify_normal_vanishes(ctx.immersion(), ctx.scene.metric, ctx.field(), ctx.parameter_sample(),
                                      ctx.tol));
}

void check_torqued(Context& ctx, CheckResult& r) {
  fill_from(r, verify_torqued_props(ctx.immersion(), ctx.scene.metric, ctx.field(), ctx.parameter_sample(),
                                    ctx.tol));
}

void check_warp_ode(Context& ctx, CheckResult& r) {
  const IntegralCurve& c = ctx.integral_curve();
  ctx.ode = warping_ode_residual(c);
  r.residual = *ctx.ode;
  r.tolerance = ctx.tol.ode_tol;
  r.witness = c.samples.front().u;
  r.values = {{"samples", static_cast<double>(c.samples.size())},
              {"step", c.step},
              {"speed_error", c.max_speed_error}};
  r.status = r.residual <= r.tolerance ? Status::Pass : Status::Fail;
}

void check_warp_fit(Context& ctx, CheckResult& r) {
  const IntegralCurve& c = ctx.integral_curve();
  if (!ctx.ode) ctx.ode = warping_ode_residual(c);
  if (!(*ctx.ode <= ctx.tol.ode_tol)) throw NotApplicable("warping ODE residual exceeds its tolerance");
  const WarpFit fit = fit_tanh_integral(c);
  r.residual = fit.deviation;
  r.tolerance = ctx.tol.warp_tol;
  r.witness = c.samples[fit.witness].u;
  r.values = {{"C", fit.constant}, {"deviation", fit.deviation}};
  bool ok = fit.deviation <= ctx.tol.warp_tol;
  if (ctx.scene.expected.lambda) {
    double worst = 0.0;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      const double want = ctx.scene.expected.lambda->evaluate(as_span(c.samples[i].u));
      worst = std::max({worst, std::abs(c.samples[i].lambda - want), std::abs(fit.model[i] - want)});
    }
    r.values.emplace_back("closed_form_deviation", worst);
    if (!(worst <= ctx.tol.warp_tol)) {
      ok = false;
      r.message = "lambda misses the expected closed form";
    }
  }
  r.status = ok ? Status::Pass : Status::Fail;
}

using CheckFn = void (*)(Context&, CheckResult&);

CheckFn check_function(std::string_view name) {
  if (name == "classify") return check_classify;
  if (name == "geodesic") return check_geodesic;
  if (name == "ambient-decomposition") return check_ambient_decomposition;
  if (name == "warp-converse") return check_warp_converse;
  if (name == "gauss") return check_gauss;
  if (name == "rectifying") return check_rectifying;
  if (name == "tangential-theorem") return check_tangential;
  if (name == "normal-theorem") return check_normal;
  if (name == "torqued") return check_torqued;
  if (name == "warp-ode") return check_warp_ode;
  if (name == "warp-fit") return check_warp_fit;
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + std::string(name) + "'");
}

std::string sci(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string format_point(const Vector& u) {
  if (u.size() == 0) return "-";
  std::string s = "(";
  for (int i = 0; i < u.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", u[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + ")";
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "n/a";
    case Status::Error: return "error";
  }
  return "error";
}

const CheckResult* Report::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Report run(const Scene& scene, const RunOptions& options) {
  std::set<std::string> wanted(options.checks.begin(), options.checks.end());
  if (options.checks.empty()) wanted.insert(scene.checks.begin(), scene.checks.end());
  for (const auto& name : wanted) check_function(name);

  Report report;
  report.scene = scene.name;
  report.seed = options.seed.value_or(scene.seed);
  report.points = options.points.value_or(scene.points);
  if (report.points < 1) throw Error(ErrorCode::InvalidArgument, "points must be positive");
  Context ctx{scene, report.seed, report.points, scene.tolerances, {}, {}, {}, {}, {}, {}, {}};

  for (const auto& name : check_names()) {
    if (!wanted.count(name)) continue;
    CheckResult r;
    r.name = name;
    r.residual = kNaN;
    r.tolerance = kNaN;
    try {
      check_function(name)(ctx, r);
    } catch (const NotApplicable& e) {
      r.status = Status::NotApplicable;
      r.message = e.what();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Precondition) {
        r.status = Status::NotApplicable;
      } else if (e.code() == ErrorCode::ModelViolation) {
        r.status = Status::Fail;
      } else {
        r.status = Status::Error;
      }
      r.message = std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      r.status = Status::Error;
      r.message = e.what();
    }
    report.checks.push_back(std::move(r));
  }
  report.classification = ctx.classification;
  return report;
}

std::string Report::to_json() const {
  using json = nlohmann::ordered_json;
  auto number = [](double v) -> json { return std::isfinite(v) ? json(v) : json(nullptr); };
  json doc;
  doc["scene"] = scene;
  doc["seed"] = seed;
  doc["points"] = points;
  json list = json::array();
  for (const auto& c : checks) {
    json item;
    item["name"] = c.name;
    item["status"] = std::string(to_string(c.status));
    item["residual"] = number(c.residual);
    item["tolerance"] = number(c.tolerance);
    json point = json::array();
    for (int i = 0; i < c.witness.size(); ++i) point.push_back(number(c.witness[i]));
    json values = json::object();
    for (const auto& [k, v] : c.values) values[k] = number(v);
    item["witness"] = {{"point", point}, {"values", values}};
    item["message"] = c.message;
    list.push_back(std::move(item));
  }
  doc["checks"] = std::move(list);
  if (classification) {
    const auto& s = *classification;
    doc["classification"] = {
        {"verdict", std::string(to_string(s.verdict))},
        {"f_summary", {{"min", number(s.f_min)}, {"max", number(s.f_max)}, {"mean", number(s.f_mean)}}},
        {"residuals",
         {{"torse_forming", number(s.max_residual_torse)},
          {"concircular", number(s.max_residual_concircular)},
          {"anti_torqued", number(s.max_residual_antitorqued)},
          {"torqued", number(s.max_residual_torqued)},
          {"gradient", number(s.max_gradient)}}}};
  } else {
    doc["classification"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string out = "scene " + scene + "  seed " + std::to_string(seed) + "  points " + std::to_string(points) + "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-6s %-10s %-10s %s\n", "check", "status", "residual", "tolerance", "witness");
  out += line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-22s %-6s %-10s %-10s %s\n", c.name.c_str(),
                  std::string(to_string(c.status)).c_str(), sci(c.residual).c_str(), sci(c.tolerance).c_str(),
                  format_point(c.witness).c_str());
    out += line;
  }
  for (const auto& c : checks) {
    if (!c.message.empty()) out += "  " + c.name + ": " + c.message + "\n";
  }
  if (classification) {
    out += "classification " + std::string(to_string(classification->verdict)) + "  f in [" +
           sci(classification->f_min) + ", " + sci(classification->f_max) + "]  mean " +
           sci(classification->f_mean) + "\n";
  }
  return out;
}

int Report::exit_code() const {
  bool fail = false, error = false, na = false;
  for (const auto& c : checks) {
    fail = fail || c.status == Status::Fail;
    error = error || c.status == Status::Error;
    na = na || c.status == Status::NotApplicable;
  }
  if (fail) return 1;
  if (error) return 3;
  if (na) return 1;
  return 0;
}

}  // namespace rectsub
