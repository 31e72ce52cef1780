#pragma once

#include <string>
#include <vector>

#include "rectsub/metric.hpp"
#include "rectsub/submanifold.hpp"

namespace testing {

inline rectsub::Expression ex(const std::string& text, std::vector<std::string> vars) {
  return rectsub::Expression::parse(text, std::move(vars));
}

inline std::vector<std::string> xs(int m) {
  std::vector<std::string> out;
  for (int i = 1; i <= m; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

inline rectsub::MetricField metric(const std::vector<std::string>& rows, const std::vector<std::string>& vars) {
  std::vector<rectsub::Expression> e;
  for (const auto& r : rows) e.push_back(ex(r, vars));
  int m = 1;
  while (m * m < static_cast<int>(rows.size())) ++m;
  return rectsub::MetricField(m, std::move(e));
}

inline rectsub::VectorField field(const std::vector<std::string>& comps, const std::vector<std::string>& vars) {
  std::vector<rectsub::Expression> e;
  for (const auto& c : comps) e.push_back(ex(c, vars));
  return rectsub::VectorField(std::move(e));
}

/// Unit radial field on E^m.
inline rectsub::VectorField radial(int m) {
  std::string norm = "sqrt(";
  for (int i = 1; i <= m; ++i) norm += (i > 1 ? "+x" : "x") + std::to_string(i) + "^2";
  norm += ")";
  std::vector<std::string> comps;
  for (int i = 1; i <= m; ++i) comps.push_back("x" + std::to_string(i) + "/" + norm);
  return field(comps, xs(m));
}

inline rectsub::Immersion immersion(const std::vector<std::string>& comps, const std::vector<std::string>& vars,
                                    std::vector<std::pair<double, double>> box) {
  rectsub::Immersion imm;
  imm.n = static_cast<int>(vars.size());
  imm.m = static_cast<int>(comps.size());
  for (const auto& c : comps) imm.components.push_back(ex(c, vars));
  imm.domain.intervals = std::move(box);
  return imm;
}

inline rectsub::Vector vec(std::initializer_list<double> v) {
  rectsub::Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline std::span<const double> span(const rectsub::Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace testing
