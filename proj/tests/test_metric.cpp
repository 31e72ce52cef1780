#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace rectsub;

namespace {

double max_diff(const Tensor3& a, const Tensor3& b) {
  double out = 0.0;
  const int n = a.extent();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out = std::max(out, std::abs(a(i, j, k) - b(i, j, k)));
  return out;
}

}  // namespace

TEST_CASE("polar sphere Christoffel symbols and curvature") {
  const auto metric = testing::metric({"1", "0", "0", "sin(th)^2"}, {"th", "ph"});
  for (double th : {0.4, 1.0, 2.2}) {
    const double p[2] = {th, 0.7};
    const MetricAtPoint at = metric.at(p);
    Tensor3 oracle(2);
    oracle(0, 1, 1) = -std::sin(th) * std::cos(th);
    oracle(1, 0, 1) = oracle(1, 1, 0) = std::cos(th) / std::sin(th);
    CHECK(max_diff(christoffel(at), oracle) <= 1e-9);

    const Tensor4 r = riemann_tensor(at);
    const Vector x = testing::vec({0.3, -1.2}), y = testing::vec({1.1, 0.4}), z = testing::vec({-0.5, 0.9});
    const Vector expected = (y.dot(at.g * z)) * x - (x.dot(at.g * z)) * y;
    CHECK((apply_riemann(r, x, y, z) - expected).norm() <= 1e-9);
    CHECK(sectional_curvature(at, x, y) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("warped 2-metric Christoffel symbols and curvature") {
  const auto metric = testing::metric({"1", "0", "0", "cosh(s)^2"}, {"s", "t"});
  for (double s : {-0.8, 0.0, 0.6}) {
    const double p[2] = {s, 2.0};
    const MetricAtPoint at = metric.at(p);
    const double l = std::cosh(s), dl = std::sinh(s);
    Tensor3 oracle(2);
    oracle(0, 1, 1) = -l * dl;
    oracle(1, 0, 1) = oracle(1, 1, 0) = dl / l;
    CHECK(max_diff(christoffel(at), oracle) <= 1e-9);
    const Vector e1 = testing::vec({1, 0}), e2 = testing::vec({0, 1});
    CHECK(std::abs(sectional_curvature(at, e1, e2) + 1.0) <= 1e-9);
    const Tensor4 r = riemann_tensor(at);
    // R(e1, e2)e2 = -K g22 e1
    CHECK(std::abs(r(0, 1, 0, 1) - (-1.0) * l * l) <= 1e-9);
  }
}

TEST_CASE("Christoffel symbols of a generic metric match finite differences of g") {
  const auto metric = testing::metric({"2 + x1^2", "x1*x2", "0.1*x3", "x1*x2", "1 + x3^2", "0",
                                       "0.1*x3", "0", "exp(x1)"},
                                      testing::xs(3));
  const double p[3] = {0.4, -0.3, 0.8};
  const MetricAtPoint at = metric.at(p);
  const double h = 1e-5;
  Tensor3 dg(3);
  for (int k = 0; k < 3; ++k) {
    double hi[3] = {p[0], p[1], p[2]}, lo[3] = {p[0], p[1], p[2]};
    hi[k] += h;
    lo[k] -= h;
    const Matrix gh = metric.at(hi, 0).g, gl = metric.at(lo, 0).g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dg(i, j, k) = (gh(i, j) - gl(i, j)) / (2 * h);
  }
  const Matrix inv = at.g.inverse();
  Tensor3 oracle(3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l) s += 0.5 * inv(k, l) * (dg(l, i, j) + dg(l, j, i) - dg(i, j, l));
        oracle(k, i, j) = s;
      }
  CHECK(max_diff(christoffel(at), oracle) <= 1e-8);
}

TEST_CASE("flat metric in curvilinear coordinates has zero curvature") {
  const auto metric = testing::metric({"1", "0", "0", "r^2"}, {"r", "t"});
  const double p[2] = {1.7, 0.2};
  const Tensor4 r = riemann_tensor(metric.at(p));
  double worst = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) worst = std::max(worst, std::abs(r(a, b, c, d)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("metric failures") {
  Matrix g(2, 2);
  g << 1, 2, 2, 1;
  CHECK_THROWS_AS(spd_inverse(g, 1e-12), Error);
  const auto metric = testing::metric({"1", "0", "0", "1"}, {"a", "b"});
  const double p[2] = {0, 0};
  const MetricAtPoint at = metric.at(p);
  try {
    sectional_curvature(at, testing::vec({1, 2}), testing::vec({2, 4}));
    FAIL("expected degenerate plane");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegeneratePlane);
  }
}
