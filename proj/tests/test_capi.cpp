#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "rectsub.h"

TEST_CASE("version and builtins") {
  CHECK(std::string(rs_version()) == "0.1.0");
  REQUIRE(rs_builtin_count() == 12);
  for (size_t i = 0; i < rs_builtin_count(); ++i) {
    const char* name = rs_builtin_name(i);
    REQUIRE(name);
    CHECK(rs_builtin_document(name) != nullptr);
  }
  CHECK(rs_builtin_name(rs_builtin_count()) == nullptr);
  CHECK(rs_builtin_document("missing") == nullptr);
}

TEST_CASE("run a built-in scene") {
  rs_scene* scene = nullptr;
  REQUIRE(rs_scene_builtin("hypersphere", &scene) == RS_OK);
  CHECK(std::string(rs_scene_name(scene)) == "hypersphere");
  rs_run_options opts{"gauss,tangential-theorem", 1, 5, 20};
  rs_report* report = nullptr;
  REQUIRE(rs_run(scene, &opts, &report) == RS_OK);
  CHECK(rs_report_exit_code(report) == 0);
  const std::string json = rs_report_json(report);
  CHECK(json.find("\"seed\": 5") != std::string::npos);
  CHECK(json.find("\"points\": 20") != std::string::npos);
  CHECK(std::strstr(rs_report_text(report), "tangential-theorem") != nullptr);
  rs_report_free(report);
  rs_scene_free(scene);
}

TEST_CASE("negative control through the C API") {
  rs_scene* scene = nullptr;
  REQUIRE(rs_scene_builtin("unit-sphere", &scene) == RS_OK);
  rs_run_options opts{"rectifying", 0, 0, 0};
  rs_report* report = nullptr;
  REQUIRE(rs_run(scene, &opts, &report) == RS_OK);
  CHECK(rs_report_exit_code(report) == 1);
  rs_report_free(report);
  rs_scene_free(scene);
}

TEST_CASE("error codes") {
  rs_scene* scene = nullptr;
  CHECK(rs_scene_from_json(nullptr, &scene) == RS_ERR_INVALID_ARGUMENT);
  CHECK(rs_scene_from_json("{", &scene) == RS_ERR_SCHEMA);
  CHECK(std::strlen(rs_last_error()) > 0);
  CHECK(rs_scene_from_json(R"json({"name": "x", "ambient": {"dim": 2, "metric": [["1"]], "domain": [[0, 1], [0, 1]]},
                               "field": ["1", "0"], "checks": ["classify"]})json",
                           &scene) == RS_ERR_DIMENSION);
  CHECK(rs_scene_from_file("/nonexistent/scene.json", &scene) == RS_ERR_IO);
  CHECK(rs_scene_builtin("no-such-scene", &scene) == RS_ERR_INVALID_ARGUMENT);
  rs_report* report = nullptr;
  CHECK(rs_run(nullptr, nullptr, &report) == RS_ERR_INVALID_ARGUMENT);
  REQUIRE(rs_scene_builtin("cone", &scene) == RS_OK);
  rs_run_options bad{"classify", 0, 0, -4};
  CHECK(rs_run(scene, &bad, &report) == RS_ERR_INVALID_ARGUMENT);
  rs_scene_free(scene);
  rs_scene_free(nullptr);
  rs_report_free(nullptr);
  CHECK(rs_report_exit_code(nullptr) == 3);
}

TEST_CASE("expression evaluation") {
  const char* names[] = {"x", "y"};
  const double at[] = {0.5, 2.0};
  double value = 0, grad[2] = {}, hess[4] = {};
  REQUIRE(rs_eval("x^2*y + sin(y)", names, at, 2, &value, grad, hess) == RS_OK);
  CHECK(value == doctest::Approx(0.5 + std::sin(2.0)));
  CHECK(grad[0] == doctest::Approx(2.0));
  CHECK(grad[1] == doctest::Approx(0.25 + std::cos(2.0)));
  CHECK(hess[0] == doctest::Approx(4.0));
  CHECK(hess[1] == doctest::Approx(1.0));
  CHECK(hess[3] == doctest::Approx(-std::sin(2.0)));
  CHECK(rs_eval("x +", names, at, 2, &value, nullptr, nullptr) == RS_ERR_PARSE);
  CHECK(rs_eval("log(x - 1)", names, at, 2, &value, nullptr, nullptr) == RS_ERR_DOMAIN);
}
