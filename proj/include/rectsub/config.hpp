#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rectsub {

/// Every numeric threshold used by the toolkit. Scenes may override any entry
/// by name.
struct Tolerances {
  // jet-kernel
  double spd_tol = 1e-12;         // Cholesky pivot floor
  double degeneracy_tol = 1e-10;  // plane sections, relative to |u|^2 |v|^2

  // submanifold
  double frame_tol = 1e-10;
  double svd_rank_tol = 1e-8;     // first normal space, relative
  double rank_tol = 1e-10;        // immersion regularity, relative
  double zero_field_tol = 1e-12;
  double totally_geodesic_tol = 1e-9;
  double gauss_tol = 1e-7;

  // field-classifier
  double class_tol = 1e-7;
  double parallel_tol = 1e-9;
  double unit_tol = 1e-8;
  double geodesic_tol = 1e-8;
  double f_tol = 1e-8;            // fitted f against a closed form, relative
  double inconsistency_band = 100.0;
  int class_min_points = 50;

  // rectifying-verifier
  double proper_tol = 1e-8;
  double rect_tol = 1e-7;
  double avperp_tol = 1e-8;
  double vanish_tol = 1e-8;       // V^T = 0 / V^perp = 0 preconditions, D_X V^perp, det A, h(X, V^T)
  double umbilic_tol = 1e-7;      // |A + f Id|
  double curvature_tol = 1e-7;    // Gauss-type curvature identities

  // warped-product
  double ode_tol = 1e-6;
  double warp_tol = 1e-6;
  double decomposition_tol = 1e-7;
  double warp_geodesic_tol = 1e-8;

  /// Names accepted by set().
  static const std::vector<std::string>& names();

  /// Sets the tolerance called `name`; returns false when the name is unknown.
  bool set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;
};

}  // namespace rectsub
