#include "rectsub.h"

#include <sstream>
#include <string>

#include "rectsub/expr.hpp"
#include "rectsub/runner.hpp"
#include "rectsub/scene.hpp"

struct rs_scene {
  rectsub::Scene scene;
};

struct rs_report {
  rectsub::Report report;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string last_error;

rs_status fail(rs_status code, const std::string& message) {
  last_error = message;
  return code;
}

rs_status map_error(const rectsub::Error& e) {
  using rectsub::ErrorCode;
  switch (e.code()) {
    case ErrorCode::Parse: return fail(RS_ERR_PARSE, e.what());
    case ErrorCode::Schema: return fail(RS_ERR_SCHEMA, e.what());
    case ErrorCode::DimensionMismatch: return fail(RS_ERR_DIMENSION, e.what());
    case ErrorCode::Domain: return fail(RS_ERR_DOMAIN, e.what());
    case ErrorCode::InvalidArgument: return fail(RS_ERR_INVALID_ARGUMENT, e.what());
    default: return fail(RS_ERR_NUMERIC, e.what());
  }
}

template <class F>
rs_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RS_OK;
  } catch (const rectsub::Error& e) {
    return map_error(e);
  } catch (const std::exception& e) {
    return fail(RS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RS_ERR_INTERNAL, "unknown failure");
  }
}

}  // namespace

extern "C" {

const char* rs_last_error(void) { return last_error.c_str(); }

const char* rs_version(void) { return "0.1.0"; }

rs_status rs_scene_from_json(const char* document, rs_scene** out) {
  if (!document || !out) return fail(RS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rs_scene{rectsub::load_scene(document)}; });
}

rs_status rs_scene_from_file(const char* path, rs_scene** out) {
  if (!path || !out) return fail(RS_ERR_INVALID_ARGUMENT, "null argument");
  try {
    *out = new rs_scene{rectsub::load_scene_file(path)};
    last_error.clear();
    return RS_OK;
  } catch (const rectsub::Error& e) {
    if (e.code() == rectsub::ErrorCode::InvalidArgument) return fail(RS_ERR_IO, e.what());
    return map_error(e);
  } catch (const std::exception& e) {
    return fail(RS_ERR_INTERNAL, e.what());
  }
}

rs_status rs_scene_builtin(const char* name, rs_scene** out) {
  if (!name || !out) return fail(RS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rs_scene{rectsub::builtin_scene(name)}; });
}

const char* rs_scene_name(const rs_scene* scene) { return scene ? scene->scene.name.c_str() : nullptr; }

void rs_scene_free(rs_scene* scene) { delete scene; }

size_t rs_builtin_count(void) { return rectsub::builtin_names().size(); }

const char* rs_builtin_name(size_t index) {
  const auto& names = rectsub::builtin_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

const char* rs_builtin_document(const char* name) {
  if (!name) return nullptr;
  static thread_local std::string doc;
  try {
    doc = rectsub::builtin_document(name);
  } catch (const rectsub::Error& e) {
    last_error = e.what();
    return nullptr;
  }
  return doc.c_str();
}

rs_status rs_run(const rs_scene* scene, const rs_run_options* options, rs_report** out) {
  if (!scene || !out) return fail(RS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    rectsub::RunOptions opts;
    if (options) {
      if (options->checks) {
        std::stringstream list(options->checks);
        std::string item;
        while (std::getline(list, item, ',')) {
          if (!item.empty()) opts.checks.push_back(item);
        }
      }
      if (options->has_seed) opts.seed = options->seed;
      if (options->points > 0) opts.points = options->points;
      if (options->points < 0) throw rectsub::Error(rectsub::ErrorCode::InvalidArgument, "points must be positive");
    }
    auto* r = new rs_report{rectsub::run(scene->scene, opts), {}, {}};
    r->json = r->report.to_json();
    r->text = r->report.to_text();
    *out = r;
  });
}

const char* rs_report_json(const rs_report* report) { return report ? report->json.c_str() : nullptr; }

const char* rs_report_text(const rs_report* report) { return report ? report->text.c_str() : nullptr; }

int rs_report_exit_code(const rs_report* report) { return report ? report->report.exit_code() : 3; }

void rs_report_free(rs_report* report) { delete report; }

rs_status rs_eval(const char* expression, const char* const* names, const double* values, size_t n, double* value,
                  double* gradient, double* hessian) {
  if (!expression || (n > 0 && (!names || !values)) || !value) return fail(RS_ERR_INVALID_ARGUMENT, "null argument");
  if (n > static_cast<size_t>(rectsub::kMaxJetVars)) {
    return fail(RS_ERR_INVALID_ARGUMENT, "at most " + std::to_string(rectsub::kMaxJetVars) + " variables");
  }
  return guarded([&] {
    std::vector<std::string> vars(names, names + n);
    const rectsub::Expression e = rectsub::Expression::parse(expression, vars);
    const int order = hessian ? 2 : (gradient ? 1 : 0);
    const rectsub::Jet j = rectsub::eval_jet(e, std::span<const double>(values, n), order);
    *value = j.value();
    for (size_t i = 0; gradient && i < n; ++i) gradient[i] = j.d(static_cast<int>(i));
    for (size_t i = 0; hessian && i < n; ++i) {
      for (size_t k = 0; k < n; ++k) hessian[i * n + k] = j.d(static_cast<int>(i), static_cast<int>(k));
    }
  });
}

}  // extern "C"
