#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rectsub/classifier.hpp"

using namespace rectsub;

namespace {

Immersion sphere(double r) {
  const std::string R = std::to_string(r);
  return testing::immersion({R + "*sin(a)*cos(b)", R + "*sin(a)*sin(b)", R + "*cos(a)"}, {"a", "b"},
                            {{0.3, 2.8}, {0, 6.2}});
}

}  // namespace

TEST_CASE("sphere second fundamental form matches the closed form") {
  const double r = 1.5;
  const Immersion imm = sphere(r);
  const MetricField flat = MetricField::euclidean(3);
  for (const Vector& u : sample_box(imm.domain.intervals, 10, 3)) {
    const FramePacket p = frames(imm, flat, testing::span(u));
    const Vector pos = imm.position(testing::span(u));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Vector oracle = -(p.induced(i, j) / (r * r)) * pos;
        CHECK((p.h_coord[i * 2 + j] - oracle).norm() <= 1e-9);
      }
    const SecondFundamentalForm sff = second_fundamental_form(p);
    CHECK(sff.first_normal.rank == 1);
    CHECK(sff.max_norm == doctest::Approx(1.0 / r).epsilon(1e-12));
    const Matrix a = shape_operator(p, pos / r);
    CHECK((a + Matrix::Identity(2, 2) / r).norm() <= 1e-9);
    CHECK(mean_curvature(p).norm() == doctest::Approx(1.0 / r).epsilon(1e-12));
    CHECK(gauss_equation_max_residual(imm, flat, testing::span(u)) <= 1e-9);
  }
}

TEST_CASE("frames are orthonormal in the ambient metric") {
  const auto metric = testing::metric({"1", "0", "0", "0", "exp(2*x1)", "0", "0", "0", "1 + x2^2"}, testing::xs(3));
  const Immersion imm = testing::immersion({"u + 0.1*v^2", "v", "u*v"}, {"u", "v"}, {{-1, 1}, {-1, 1}});
  const double u[2] = {0.3, -0.4};
  const FramePacket p = frames(imm, metric, u);
  Matrix basis(3, 3);
  basis << p.tangent, p.normal;
  const Matrix gram = basis.transpose() * p.ambient.g * basis;
  CHECK((gram - Matrix::Identity(3, 3)).norm() <= 1e-12);
  CHECK(gauss_equation_max_residual(imm, metric, u) <= 1e-8);
}

TEST_CASE("plane in E^3 is totally geodesic") {
  const Immersion imm = testing::immersion({"u", "v", "2*u - v + 1"}, {"u", "v"}, {{-1, 1}, {-1, 1}});
  const double u[2] = {0.2, 0.5};
  const SecondFundamentalForm sff = second_fundamental_form(imm, MetricField::euclidean(3), u);
  CHECK(sff.first_normal.rank == 0);
  CHECK(sff.max_norm <= 1e-12);
}

TEST_CASE("first normal space of a surface in E^4") {
  const Immersion imm = testing::immersion({"u", "v", "u^2", "v^2"}, {"u", "v"}, {{-1, 1}, {-1, 1}});
  const double u[2] = {0.2, 0.5};
  CHECK(second_fundamental_form(imm, MetricField::euclidean(4), u).first_normal.rank == 2);
  const Immersion cyl = testing::immersion({"cos(u)", "sin(u)", "v", "0"}, {"u", "v"}, {{-1, 1}, {-1, 1}});
  CHECK(second_fundamental_form(cyl, MetricField::euclidean(4), u).first_normal.rank == 1);
}

TEST_CASE("field decomposition on the sphere and cone") {
  const MetricField flat = MetricField::euclidean(3);
  const VectorField v = testing::radial(3);
  const double u[2] = {1.0, 2.0};
  const FramePacket s = frames(sphere(2.0), flat, u, {}, &v);
  REQUIRE(s.field);
  CHECK(s.field->tangential_norm <= 1e-12);
  CHECK(s.field->normal_norm == doctest::Approx(1.0));
  const Immersion cone = testing::immersion({"r*cos(t)", "r*sin(t)", "r"}, {"r", "t"}, {{0.5, 2}, {0, 6}});
  const FramePacket c = frames(cone, flat, u, {}, &v);
  CHECK(c.field->normal_norm <= 1e-12);
  const FieldSplitJets j = field_split_jets(cone, flat, v, u);
  for (int a = 0; a < 3; ++a) {
    CHECK(j.tangential[a].value() == doctest::Approx(c.field->tangential[a]));
    CHECK(std::abs(j.normal[a].value()) <= 1e-12);
  }
}

TEST_CASE("covariant derivative along M of the position field") {
  // nabla~_X P = X for the position vector field in flat space.
  const Immersion imm = sphere(1.0);
  const double u[2] = {0.9, 0.4};
  const FramePacket p = frames(imm, MetricField::euclidean(3), u);
  std::vector<Jet> pos;
  for (const auto& c : imm.components) pos.push_back(eval_jet(c, u, 1));
  const Matrix d = covariant_derivative_along(p, pos);
  CHECK((d - p.jacobian).norm() <= 1e-12);
}

TEST_CASE("submanifold failures") {
  const MetricField flat = MetricField::euclidean(3);
  const Immersion s = sphere(1.0);
  const double u[2] = {1.0, 1.0};
  const FramePacket p = frames(s, flat, u);
  try {
    shape_operator(p, p.tangent.col(0));
    FAIL("expected NonNormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNormal);
  }
  const Immersion bad = testing::immersion({"u + v", "u + v", "0"}, {"u", "v"}, {{-1, 1}, {-1, 1}});
  try {
    frames(bad, flat, u);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
}
