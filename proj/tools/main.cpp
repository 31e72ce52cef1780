#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rectsub.h"

namespace {

int check(const std::string& target, const std::string& checks, const std::string& seed, int points,
          const std::string& json_out) {
  rs_scene* scene = nullptr;
  const std::string prefix = "builtin:";
  const rs_status st = target.rfind(prefix, 0) == 0 ? rs_scene_builtin(target.substr(prefix.size()).c_str(), &scene)
                                                     : rs_scene_from_file(target.c_str(), &scene);
  if (st != RS_OK) {
    std::cerr << "error: " << rs_last_error() << "\n";
    return 2;
  }
  rs_run_options opts{checks.empty() ? nullptr : checks.c_str(), 0, 0, points};
  if (!seed.empty()) {
    try {
      opts.seed = std::stoull(seed);
      opts.has_seed = 1;
    } catch (const std::exception&) {
      std::cerr << "error: --seed expects a non-negative integer\n";
      rs_scene_free(scene);
      return 2;
    }
  }
  rs_report* report = nullptr;
  if (rs_run(scene, &opts, &report) != RS_OK) {
    std::cerr << "error: " << rs_last_error() << "\n";
    rs_scene_free(scene);
    return 2;
  }
  std::cout << rs_report_text(report);
  if (json_out == "-") {
    std::cout << rs_report_json(report);
  } else if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::cerr << "error: cannot write " << json_out << "\n";
    } else {
      out << rs_report_json(report);
    }
  }
  const int code = rs_report_exit_code(report);
  rs_report_free(report);
  rs_scene_free(scene);
  return code;
}

int eval(const std::string& expr, const std::string& at) {
  std::vector<std::string> names;
  std::vector<double> values;
  std::stringstream list(at);
  std::string item;
  while (std::getline(list, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --at expects name=value pairs\n";
      return 2;
    }
    names.push_back(item.substr(0, eq));
    try {
      values.push_back(std::stod(item.substr(eq + 1)));
    } catch (const std::exception&) {
      std::cerr << "error: bad value for " << names.back() << "\n";
      return 2;
    }
  }
  std::vector<const char*> cnames;
  for (const auto& n : names) cnames.push_back(n.c_str());
  double value = 0.0;
  std::vector<double> grad(names.size());
  if (rs_eval(expr.c_str(), cnames.data(), values.data(), names.size(), &value, grad.data(), nullptr) != RS_OK) {
    std::cerr << "error: " << rs_last_error() << "\n";
    return 2;
  }
  std::printf("%.17g\n", value);
  for (std::size_t i = 0; i < names.size(); ++i) std::printf("d/d%s %.17g\n", names[i].c_str(), grad[i]);
  return 0;
}

int export_builtins(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  for (std::size_t i = 0; i < rs_builtin_count(); ++i) {
    const std::string name = rs_builtin_name(i);
    const std::string path = (std::filesystem::path(dir) / (name + ".json")).string();
    std::ofstream out(path);
    if (!out) {
      std::cerr << "error: cannot write " << path << "\n";
      return 2;
    }
    out << rs_builtin_document(name.c_str()) << "\n";
    std::cout << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rectsub: torse-forming fields and rectifying submanifolds"};
  app.require_subcommand(1);

  std::string target, checks, seed, json_out;
  int points = 0;
  auto* check_cmd = app.add_subcommand("check", "run the checks of a scene");
  check_cmd->add_option("scene", target, "scene.json or builtin:NAME")->required();
  check_cmd->add_option("--checks", checks, "comma-separated check names");
  check_cmd->add_option("--seed", seed, "sampling seed");
  check_cmd->add_option("--points", points, "number of sample points")->check(CLI::PositiveNumber);
  check_cmd->add_option("--json", json_out, "write the machine report here ('-' for stdout)");

  auto* list_cmd = app.add_subcommand("list-builtins", "list the built-in scenes");

  std::string expr, at;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression and its gradient");
  eval_cmd->add_option("expr", expr, "expression")->required();
  eval_cmd->add_option("--at", at, "x1=..,x2=..");

  std::string dir;
  auto* export_cmd = app.add_subcommand("export-builtins", "write the built-in scenes as JSON files");
  export_cmd->add_option("dir", dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*check_cmd) return check(target, checks, seed, points, json_out);
  if (*list_cmd) {
    for (std::size_t i = 0; i < rs_builtin_count(); ++i) std::cout << rs_builtin_name(i) << "\n";
    return 0;
  }
  if (*eval_cmd) return eval(expr, at);
  if (*export_cmd) return export_builtins(dir);
  return 2;
}
