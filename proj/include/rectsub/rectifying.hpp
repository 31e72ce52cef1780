#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rectsub/classifier.hpp"
#include "rectsub/submanifold.hpp"

namespace rectsub {

/// One numeric identity checked over a sample: the worst value and where it
/// occurred.
struct CheckItem {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  Vector witness;  // parameter point of the worst value
  bool pass = true;
  bool informational = false;  // reported value, not checked against the tolerance
  bool flagged = false;        // condition worth reporting that is neither pass nor fail
  std::string note;
};

struct TheoremReport {
  std::vector<CheckItem> items;
  bool pass() const;
  const CheckItem* find(std::string_view name) const;
};

/// max_{i<=j} |g~(V^perp, h(e_i, e_j))| / (max_ij |h(e_i, e_j)| |V^perp|),
/// 0 when h or V^perp vanishes. Invariant under V -> cV, c > 0.
double rectifying_residual(const FramePacket& packet, const Tolerances& tol = {});
double rectifying_residual(const Immersion& imm, const MetricField& metric, const VectorField& field,
                           std::span<const double> u, const Tolerances& tol = {});

/// Frobenius norm of A_{V^perp}; the packet must carry the field split.
double check_avperp_zero(const FramePacket& packet, const Tolerances& tol = {});

/// Weingarten split of nabla~_X xi along the orthonormal frame:
/// nabla~_{e_i} xi = -A_xi e_i + D_{e_i} xi.
struct WeingartenSplit {
  Matrix shape;   // n x n, column i = frame components of -A_xi e_i
  Matrix normal;  // m x n, column i = D_{e_i} xi (ambient components)
};

/// `xi` is a normal field along M as order-1 jets in the parameters.
WeingartenSplit weingarten(const FramePacket& packet, std::span<const Jet> xi);

/// V^T = 0 on M: D_X V^perp = 0 and A_{V^perp} = -f Id.
TheoremReport verify_tangential_vanishes(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                         std::span<const Vector> sample, const Tolerances& tol = {});

/// V^perp = 0 on M: det A_xi = 0, h(X, V^T) = 0, R~(X,Y)V^T = R(X,Y)V^T and
/// K~(X, V^T) = K(X, V^T).
TheoremReport verify_normal_vanishes(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                     std::span<const Vector> sample, const Tolerances& tol = {});

/// Torqued axis tangent (V^perp = 0) or normal (V^T = 0) to M.
TheoremReport verify_torqued_props(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                   std::span<const Vector> sample, const Tolerances& tol = {});

enum class RectifyingMode {
  Proper,                   // rectifying with V^T != 0 and V^perp != 0
  Rectifying,               // rectifying, V^T vanishes somewhere
  TangentAxisHypersurface,  // m - n = 1 with V tangent; never called proper
  NormalVanishes,           // V^perp = 0 somewhere, not a hypersurface
  NotRectifying,
};

std::string_view to_string(RectifyingMode mode);

struct RectifyingPoint {
  Vector u;
  double residual = 0.0;
  double tangential_norm = 0.0;
  double normal_norm = 0.0;
  double avperp = 0.0;
  int first_normal_rank = 0;
};

struct RectifyingReport {
  std::vector<RectifyingPoint> points;
  RectifyingMode mode = RectifyingMode::NotRectifying;
  bool proper = false;
  bool pass = false;
  double worst_residual = 0.0;
  std::size_t witness = 0;
  double worst_avperp = 0.0;
  double min_tangential = 0.0;
  double min_normal = 0.0;
  std::optional<TheoremReport> tangent_axis;  // set in TangentAxisHypersurface mode
};

RectifyingReport verify_rectifying(const Immersion& imm, const MetricField& metric, const VectorField& field,
                                   std::span<const Vector> sample, const Tolerances& tol = {});

}  // namespace rectsub
