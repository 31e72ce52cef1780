#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rectsub/rectifying.hpp"
#include "rectsub/scene.hpp"

using namespace rectsub;

namespace {

Immersion sphere(double r) {
  const std::string R = std::to_string(r);
  return testing::immersion({R + "*sin(a)*cos(b)", R + "*sin(a)*sin(b)", R + "*cos(a)"}, {"a", "b"},
                            {{0.3, 2.8}, {0, 6.2}});
}

VectorField scaled(const VectorField& v, double c) {
  std::vector<std::string> comps;
  for (int i = 0; i < v.dim(); ++i) comps.push_back(std::to_string(c) + "*(" + v.component(i).to_string() + ")");
  return testing::field(comps, v.component(0).variables());
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("rectifying residual is invariant under positive scaling") {
  const Immersion imm = testing::immersion({"u", "v", "u^2 + 0.3*v", "u*v + 1"}, {"u", "v"}, {{0.2, 1}, {0.2, 1}});
  const MetricField flat = MetricField::euclidean(4);
  const VectorField v = testing::radial(4);
  const VectorField w = scaled(v, 3.7);
  for (const Vector& u : sample_box(imm.domain.intervals, 10, 1)) {
    const double a = rectifying_residual(imm, flat, v, testing::span(u));
    const double b = rectifying_residual(imm, flat, w, testing::span(u));
    CHECK(a > 1e-3);
    CHECK(std::abs(a - b) <= 1e-9);
  }
}

TEST_CASE("plane has zero residual") {
  const Immersion imm = testing::immersion({"u", "v", "1"}, {"u", "v"}, {{-1, 1}, {-1, 1}});
  const double u[2] = {0.3, 0.6};
  CHECK(rectifying_residual(imm, MetricField::euclidean(3), testing::radial(3), u) == 0.0);
}

TEST_CASE("unit sphere is umbilic but not rectifying") {
  const Immersion imm = sphere(1.0);
  const MetricField flat = MetricField::euclidean(3);
  const VectorField v = testing::radial(3);
  for (const Vector& u : sample_box(imm.domain.intervals, 10, 2)) {
    const FramePacket p = frames(imm, flat, testing::span(u), {}, &v);
    CHECK(rectifying_residual(p) >= 0.99);
    CHECK(check_avperp_zero(p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK((shape_operator(p, p.field->normal) + Matrix::Identity(2, 2)).norm() <= 1e-10);
  }
  const auto sample = sample_box(imm.domain.intervals, 20, 2);
  const RectifyingReport r = verify_rectifying(imm, flat, v, sample);
  CHECK(r.mode == RectifyingMode::NotRectifying);
  CHECK_FALSE(r.pass);
  const TheoremReport t = verify_tangential_vanishes(imm, flat, v, sample);
  CHECK(t.pass());
  CHECK(t.find("A_V^perp + f Id")->worst <= 1e-8);
}

TEST_CASE("Weingarten split of the unit normal on a sphere") {
  const double r = 2.0;
  const Immersion imm = sphere(r);
  const double u[2] = {1.1, 0.3};
  const FramePacket p = frames(imm, MetricField::euclidean(3), u);
  std::vector<Jet> xi;
  for (const auto& c : imm.components) xi.push_back(eval_jet(c, u, 1) / r);
  const WeingartenSplit w = weingarten(p, xi);
  CHECK((w.shape - Matrix::Identity(2, 2) / r).norm() <= 1e-12);
  CHECK(w.normal.norm() <= 1e-12);
}

TEST_CASE("rectifying implies A_V^perp vanishes") {
  const Scene s = builtin_scene("rectifying-psi");
  const auto sample = s.parameter_sample(50, 5);
  const RectifyingReport r = verify_rectifying(*s.immersion, s.metric, *s.field, sample, s.tolerances);
  CHECK(r.mode == RectifyingMode::Proper);
  CHECK(r.proper);
  for (const auto& pt : r.points) {
    CHECK(pt.residual <= 1e-7);
    CHECK(pt.avperp <= 1e-8);
    CHECK(pt.first_normal_rank == 1);
  }
  CHECK(r.pass);
}

TEST_CASE("tangent axis on a hypersurface") {
  const Scene s = builtin_scene("cone");
  const auto sample = s.parameter_sample(30, 6);
  const RectifyingReport r = verify_rectifying(*s.immersion, s.metric, *s.field, sample, s.tolerances);
  CHECK(r.mode == RectifyingMode::TangentAxisHypersurface);
  CHECK_FALSE(r.proper);
  REQUIRE(r.tangent_axis);
  CHECK(r.tangent_axis->pass());
  const TheoremReport t = verify_normal_vanishes(*s.immersion, s.metric, *s.field, sample, s.tolerances);
  CHECK(t.find("det A_xi")->worst <= 1e-8);
  CHECK(t.find("K~(X, V^T) - K(X, V^T)")->worst <= 1e-7);
}

TEST_CASE("theorem preconditions") {
  const MetricField flat = MetricField::euclidean(3);
  const VectorField v = testing::radial(3);
  const auto sphere_pts = sample_box(sphere(1.0).domain.intervals, 10, 7);
  CHECK(code_of([&] { verify_normal_vanishes(sphere(1.0), flat, v, sphere_pts); }) == ErrorCode::Precondition);
  const Scene cone = builtin_scene("cone");
  const auto cone_pts = cone.parameter_sample(10, 7);
  CHECK(code_of([&] { verify_tangential_vanishes(*cone.immersion, flat, v, cone_pts); }) == ErrorCode::Precondition);
  CHECK(code_of([&] { verify_torqued_props(sphere(1.0), flat, v, sphere_pts); }) == ErrorCode::Precondition);
}

TEST_CASE("torqued axis tangent and normal") {
  for (const char* name : {"torqued-leaf", "torqued-fiber"}) {
    INFO(name);
    const Scene s = builtin_scene(name);
    const auto sample = s.parameter_sample(30, 8);
    const TheoremReport t = verify_torqued_props(*s.immersion, s.metric, *s.field, sample, s.tolerances);
    CHECK(t.pass());
    const CheckItem* w = t.find("|W^T|");
    REQUIRE(w);
    CHECK(w->informational);
  }
}
