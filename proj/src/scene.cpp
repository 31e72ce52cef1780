#include "rectsub/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rectsub/classifier.hpp"

namespace rectsub {
namespace {

using json = nlohmann::json;

std::string join(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string join(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path, std::string("missing required key '") + key + "'");
  return *it;
}

void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(join(path, key), "unknown key");
    }
  }
}

const json& expect_array(const json& j, const std::string& path, std::optional<std::size_t> size = {}) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  if (size && j.size() != *size) {
    throw Error(ErrorCode::DimensionMismatch,
                path + ": expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  }
  return j;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

long long get_integer(const json& j, const std::string& path, long long min) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw SchemaError(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < min) throw SchemaError(path, "must be at least " + std::to_string(min));
  return v;
}

Expression get_expression(const json& j, const std::string& path, const std::vector<std::string>& vars) {
  std::string text;
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    text = os.str();
  } else {
    text = get_string(j, path);
  }
  try {
    return Expression::parse(text, vars);
  } catch (const ParseError& e) {
    throw SchemaError(path, std::string("parse error at ") + e.what());
  }
}

std::vector<std::string> get_variables(const json& parent, const std::string& path, int dim, const char* prefix) {
  std::vector<std::string> out;
  auto it = parent.find("variables");
  if (it == parent.end()) {
    for (int i = 1; i <= dim; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  }
  const std::string p = join(path, "variables");
  expect_array(*it, p, static_cast<std::size_t>(dim));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string name = get_string((*it)[i], join(p, i));
    bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw SchemaError(join(p, i), "'" + name + "' is not an identifier");
    if (name == "pi") throw SchemaError(join(p, i), "'pi' is reserved");
    for (int f = 0; f <= static_cast<int>(Function::Pow); ++f) {
      if (function_name(static_cast<Function>(f)) == name) throw SchemaError(join(p, i), "'" + name + "' is a function name");
    }
    if (!seen.insert(name).second) throw SchemaError(join(p, i), "duplicate variable '" + name + "'");
    out.push_back(name);
  }
  return out;
}

Box get_box(const json& j, const std::string& path, int dim) {
  expect_array(j, path, static_cast<std::size_t>(dim));
  Box box;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = join(path, i);
    expect_array(j[i], p);
    if (j[i].size() != 2) throw SchemaError(p, "expected [lo, hi]");
    const double lo = get_number(j[i][0], join(p, 0)), hi = get_number(j[i][1], join(p, 1));
    if (!(lo < hi)) throw SchemaError(p, "interval must satisfy lo < hi");
    box.intervals.emplace_back(lo, hi);
  }
  return box;
}

std::vector<Expression> get_matrix(const json& j, const std::string& path, int dim, const std::vector<std::string>& vars) {
  expect_array(j, path, static_cast<std::size_t>(dim));
  std::vector<Expression> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = join(path, i);
    expect_array(j[i], p, static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < j[i].size(); ++k) out.push_back(get_expression(j[i][k], join(p, k), vars));
  }
  return out;
}

bool known_status(const std::string& s) { return s == "pass" || s == "fail" || s == "n/a" || s == "error"; }

Scene parse_scene(const json& doc) {
  expect_object(doc, "", {"name", "description", "ambient", "field", "submanifold", "checks", "seed", "points",
                          "tolerances", "curve", "warped", "expected"});
  Scene scene;
  scene.name = get_string(require(doc, "", "name"), "/name");
  if (auto it = doc.find("description"); it != doc.end()) scene.description = get_string(*it, "/description");

  const json& amb = require(doc, "", "ambient");
  expect_object(amb, "/ambient", {"dim", "variables", "metric", "domain", "exclude_radius"});
  scene.m = static_cast<int>(get_integer(require(amb, "/ambient", "dim"), "/ambient/dim", 2));
  if (scene.m > kMaxJetVars) throw SchemaError("/ambient/dim", "at most " + std::to_string(kMaxJetVars) + " dimensions");
  scene.ambient_variables = get_variables(amb, "/ambient", scene.m, "x");
  scene.metric = MetricField(scene.m, get_matrix(require(amb, "/ambient", "metric"), "/ambient/metric", scene.m,
                                                 scene.ambient_variables));
  scene.domain = get_box(require(amb, "/ambient", "domain"), "/ambient/domain", scene.m);
  if (auto it = amb.find("exclude_radius"); it != amb.end()) {
    scene.exclude_radius = get_number(*it, "/ambient/exclude_radius");
    if (scene.exclude_radius < 0.0) throw SchemaError("/ambient/exclude_radius", "must be non-negative");
  }

  if (auto it = doc.find("field"); it != doc.end()) {
    expect_array(*it, "/field", static_cast<std::size_t>(scene.m));
    std::vector<Expression> comps;
    for (std::size_t i = 0; i < it->size(); ++i) {
      comps.push_back(get_expression((*it)[i], join("/field", i), scene.ambient_variables));
    }
    scene.field = VectorField(std::move(comps));
  }

  if (auto it = doc.find("submanifold"); it != doc.end()) {
    const json& sub = *it;
    expect_object(sub, "/submanifold", {"dim", "variables", "immersion", "domain"});
    Immersion imm;
    imm.m = scene.m;
    imm.n = static_cast<int>(get_integer(require(sub, "/submanifold", "dim"), "/submanifold/dim", 1));
    if (imm.n >= scene.m) {
      throw Error(ErrorCode::DimensionMismatch, "/submanifold/dim: must be below the ambient dimension");
    }
    scene.parameter_variables = get_variables(sub, "/submanifold", imm.n, "u");
    const json& comps = require(sub, "/submanifold", "immersion");
    expect_array(comps, "/submanifold/immersion", static_cast<std::size_t>(scene.m));
    for (std::size_t i = 0; i < comps.size(); ++i) {
      imm.components.push_back(get_expression(comps[i], join("/submanifold/immersion", i), scene.parameter_variables));
    }
    imm.domain = get_box(require(sub, "/submanifold", "domain"), "/submanifold/domain", imm.n);
    scene.immersion = std::move(imm);
  }
  if (!scene.field && !scene.immersion) throw SchemaError("", "scene needs a field, a submanifold, or both");

  const json& checks = require(doc, "", "checks");
  expect_array(checks, "/checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string name = get_string(checks[i], join("/checks", i));
    const auto& known = check_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw SchemaError(join("/checks", i), "unknown check '" + name + "'");
    }
    scene.checks.push_back(name);
  }
  if (auto it = doc.find("seed"); it != doc.end()) scene.seed = static_cast<std::uint64_t>(get_integer(*it, "/seed", 0));
  if (auto it = doc.find("points"); it != doc.end()) scene.points = static_cast<int>(get_integer(*it, "/points", 1));

  if (auto it = doc.find("tolerances"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("/tolerances", "expected an object");
    for (const auto& [key, value] : it->items()) {
      const std::string p = join("/tolerances", key);
      if (!scene.tolerances.set(key, get_number(value, p))) throw SchemaError(p, "unknown tolerance");
    }
  }

  if (auto it = doc.find("curve"); it != doc.end()) {
    expect_object(*it, "/curve", {"start", "length", "step"});
    if (!scene.immersion) throw SchemaError("/curve", "a curve needs a submanifold");
    CurveSpec c;
    const json& start = require(*it, "/curve", "start");
    expect_array(start, "/curve/start", static_cast<std::size_t>(scene.immersion->n));
    for (std::size_t i = 0; i < start.size(); ++i) c.start.push_back(get_number(start[i], join("/curve/start", i)));
    if (auto l = it->find("length"); l != it->end()) c.length = get_number(*l, "/curve/length");
    if (auto s = it->find("step"); s != it->end()) c.step = get_number(*s, "/curve/step");
    if (!(c.length > 0.0)) throw SchemaError("/curve/length", "must be positive");
    if (!(c.step > 0.0)) throw SchemaError("/curve/step", "must be positive");
    scene.curve = std::move(c);
  }

  if (auto it = doc.find("warped"); it != doc.end()) {
    expect_object(*it, "/warped", {"lambda", "fiber"});
    WarpedSpec w;
    w.lambda = get_expression(require(*it, "/warped", "lambda"), "/warped/lambda", {"s"});
    std::vector<std::string> fiber_vars;
    for (int i = 1; i < scene.m; ++i) fiber_vars.push_back("y" + std::to_string(i));
    w.fiber = get_matrix(require(*it, "/warped", "fiber"), "/warped/fiber", scene.m - 1, fiber_vars);
    scene.warped = std::move(w);
  }

  if (auto it = doc.find("expected"); it != doc.end()) {
    expect_object(*it, "/expected", {"verdict", "f", "lambda", "status"});
    if (auto v = it->find("verdict"); v != it->end()) {
      const std::string s = get_string(*v, "/expected/verdict");
      bool ok = false;
      for (Verdict x : {Verdict::Parallel, Verdict::Concircular, Verdict::AntiTorqued, Verdict::Torqued,
                        Verdict::TorseForming, Verdict::None}) {
        ok = ok || to_string(x) == s;
      }
      if (!ok) throw SchemaError("/expected/verdict", "unknown verdict '" + s + "'");
      scene.expected.verdict = s;
    }
    if (auto f = it->find("f"); f != it->end()) {
      scene.expected.f = get_expression(*f, "/expected/f", scene.ambient_variables);
    }
    if (auto l = it->find("lambda"); l != it->end()) {
      if (!scene.immersion) throw SchemaError("/expected/lambda", "needs a submanifold");
      scene.expected.lambda = get_expression(*l, "/expected/lambda", scene.parameter_variables);
    }
    if (auto s = it->find("status"); s != it->end()) {
      if (!s->is_object()) throw SchemaError("/expected/status", "expected an object");
      for (const auto& [key, value] : s->items()) {
        const std::string p = join("/expected/status", key);
        const std::string status = get_string(value, p);
        if (!known_status(status)) throw SchemaError(p, "unknown status '" + status + "'");
        scene.expected.status[key] = status;
      }
    }
  }
  return scene;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "classify",   "geodesic",           "ambient-decomposition", "warp-converse", "gauss",   "rectifying",
      "tangential-theorem", "normal-theorem", "torqued",            "warp-ode",      "warp-fit",
  };
  return names;
}

std::vector<Vector> Scene::ambient_sample(std::size_t count, std::uint64_t s) const {
  const double r = exclude_radius;
  return sample_box(domain.intervals, count, s, [r](const Vector& p) { return p.norm() >= r; });
}

std::vector<Vector> Scene::parameter_sample(std::size_t count, std::uint64_t s) const {
  if (!immersion) throw Error(ErrorCode::Precondition, "scene has no submanifold");
  return sample_box(immersion->domain.intervals, count, s);
}

Scene load_scene(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_scene(doc);
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read scene file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scene(buffer.str());
}

Scene builtin_scene(std::string_view name) { return load_scene(builtin_document(name)); }

}  // namespace rectsub
