#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rectsub/config.hpp"
#include "rectsub/metric.hpp"
#include "rectsub/submanifold.hpp"

namespace rectsub {

/// Schema violation; the message starts with a JSON-pointer style path.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(ErrorCode::Schema, path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Names accepted in a scene's check list, in execution order.
const std::vector<std::string>& check_names();

struct CurveSpec {
  std::vector<double> start;
  double length = 1.0;
  double step = 0.01;
};

struct WarpedSpec {
  Expression lambda;                // over s
  std::vector<Expression> fiber;    // k x k over y1..yk
};

struct Expectations {
  std::optional<std::string> verdict;
  std::optional<Expression> f;       // over the ambient variables
  std::optional<Expression> lambda;  // |V^T| along M, over the parameter variables
  std::map<std::string, std::string> status;
};

struct Scene {
  std::string name;
  std::string description;
  int m = 0;
  std::vector<std::string> ambient_variables;
  MetricField metric;
  Box domain;
  double exclude_radius = 0.0;
  std::optional<VectorField> field;
  std::optional<Immersion> immersion;
  std::vector<std::string> parameter_variables;
  std::vector<std::string> checks;
  std::uint64_t seed = 42;
  int points = 50;
  Tolerances tolerances;
  std::optional<CurveSpec> curve;
  std::optional<WarpedSpec> warped;
  Expectations expected;

  /// Draws `count` ambient points from the domain box outside exclude_radius.
  std::vector<Vector> ambient_sample(std::size_t count, std::uint64_t seed) const;
  /// Draws `count` parameter points from the immersion's box.
  std::vector<Vector> parameter_sample(std::size_t count, std::uint64_t seed) const;
};

/// Validates and loads a scene document (JSON text).
Scene load_scene(std::string_view document);
Scene load_scene_file(const std::string& path);

/// Built-in scenes addressable by name.
const std::vector<std::string>& builtin_names();
/// JSON text of a built-in scene; InvalidArgument for unknown names.
std::string builtin_document(std::string_view name);
Scene builtin_scene(std::string_view name);

}  // namespace rectsub
