#include "rectsub/config.hpp"

#include <utility>

namespace rectsub {
namespace {

using Member = double Tolerances::*;

const std::vector<std::pair<std::string, Member>>& table() {
  static const std::vector<std::pair<std::string, Member>> entries = {
      {"spd_tol", &Tolerances::spd_tol},
      {"degeneracy_tol", &Tolerances::degeneracy_tol},
      {"frame_tol", &Tolerances::frame_tol},
      {"svd_rank_tol", &Tolerances::svd_rank_tol},
      {"rank_tol", &Tolerances::rank_tol},
      {"zero_field_tol", &Tolerances::zero_field_tol},
      {"totally_geodesic_tol", &Tolerances::totally_geodesic_tol},
      {"gauss_tol", &Tolerances::gauss_tol},
      {"class_tol", &Tolerances::class_tol},
      {"parallel_tol", &Tolerances::parallel_tol},
      {"unit_tol", &Tolerances::unit_tol},
      {"geodesic_tol", &Tolerances::geodesic_tol},
      {"f_tol", &Tolerances::f_tol},
      {"inconsistency_band", &Tolerances::inconsistency_band},
      {"proper_tol", &Tolerances::proper_tol},
      {"rect_tol", &Tolerances::rect_tol},
      {"avperp_tol", &Tolerances::avperp_tol},
      {"vanish_tol", &Tolerances::vanish_tol},
      {"umbilic_tol", &Tolerances::umbilic_tol},
      {"curvature_tol", &Tolerances::curvature_tol},
      {"ode_tol", &Tolerances::ode_tol},
      {"warp_tol", &Tolerances::warp_tol},
      {"decomposition_tol", &Tolerances::decomposition_tol},
      {"warp_geodesic_tol", &Tolerances::warp_geodesic_tol},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& Tolerances::names() {
  static const std::vector<std::string> list = [] {
    std::vector<std::string> out;
    for (const auto& [name, member] : table()) out.push_back(name);
    out.push_back("class_min_points");
    return out;
  }();
  return list;
}

bool Tolerances::set(std::string_view name, double value) {
  if (name == "class_min_points") {
    class_min_points = static_cast<int>(value);
    return true;
  }
  for (const auto& [key, member] : table()) {
    if (key == name) {
      this->*member = value;
      return true;
    }
  }
  return false;
}

std::optional<double> Tolerances::get(std::string_view name) const {
  if (name == "class_min_points") return static_cast<double>(class_min_points);
  for (const auto& [key, member] : table()) {
    if (key == name) return this->*member;
  }
  return std::nullopt;
}

}  // namespace rectsub
