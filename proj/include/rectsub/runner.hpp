#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectsub/classifier.hpp"
#include "rectsub/scene.hpp"

namespace rectsub {

enum class Status { Pass, Fail, NotApplicable, Error };

std::string_view to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Error;
  double residual = 0.0;  // NaN when the check produced no number
  double tolerance = 0.0;
  Vector witness;
  std::vector<std::pair<std::string, double>> values;
  std::string message;
};

struct RunOptions {
  std::vector<std::string> checks;  // empty: the scene's own list
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
};

struct Report {
  std::string scene;
  std::uint64_t seed = 0;
  int points = 0;
  std::vector<CheckResult> checks;
  std::optional<SceneClassification> classification;

  const CheckResult* find(std::string_view name) const;
  /// Machine block; full precision, byte-identical across identical runs.
  std::string to_json() const;
  /// Human block; residuals in scientific notation with 3 significant digits.
  std::string to_text() const;
  /// 0 all pass, 1 any fail or n/a, 3 numeric errors without failures.
  int exit_code() const;
};

/// Runs the selected checks in dependency order. Failures inside a check are
/// recorded on that check and never abort the run.
Report run(const Scene& scene, const RunOptions& options = {});

}  // namespace rectsub
