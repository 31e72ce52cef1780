#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "rectsub/warped.hpp"

using namespace rectsub;

namespace {

IntegralCurve synthetic(double s0, double s1, int steps, double (*f)(double), double (*lambda)(double)) {
  IntegralCurve c;
  c.step = (s1 - s0) / steps;
  for (int i = 0; i <= steps; ++i) {
    CurveSample p;
    p.s = s0 + i * c.step;
    p.f = f(p.s);
    p.lambda = lambda(p.s);
    c.samples.push_back(p);
  }
  return c;
}

WarpedAmbient flat_fiber_ambient(const std::string& lambda, std::pair<double, double> interval) {
  const std::vector<Expression> fiber{testing::ex("1", {"y1", "y2"}), testing::ex("0", {"y1", "y2"}),
                                      testing::ex("0", {"y1", "y2"}), testing::ex("1", {"y1", "y2"})};
  return build_warped_ambient(testing::ex(lambda, {"s"}), fiber, interval, Box{{{-1, 1}, {-1, 1}}});
}

}  // namespace

TEST_CASE("radial line has lambda = 1 and f = 1/s") {
  const Immersion line = testing::immersion({"0.6*s^3", "0.8*s^3"}, {"s"}, {{0.8, 2.0}});
  const double u0[1] = {1.0};
  const IntegralCurve c = trace_integral_curve(line, MetricField::euclidean(2), testing::radial(2), u0, 1.0, 0.01);
  REQUIRE(c.samples.size() == 101);
  CHECK_FALSE(c.exited);
  CHECK(c.max_speed_error <= 1e-12);
  for (const auto& p : c.samples) {
    CHECK(p.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.f * (1.0 + p.s) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(warping_ode_residual(c) <= 1e-9);
  CHECK_THROWS_AS(fit_tanh_integral(c), Error);
}

TEST_CASE("RK4 converges at fourth order") {
  const Immersion line = testing::immersion({"0.6*s^3", "0.8*s^3"}, {"s"}, {{0.8, 2.0}});
  const double u0[1] = {1.0};
  auto endpoint_error = [&](double h) {
    const IntegralCurve c = trace_integral_curve(line, MetricField::euclidean(2), testing::radial(2), u0, 1.0, h);
    return std::abs(c.samples.back().u[0] - std::cbrt(2.0));
  };
  const double e1 = endpoint_error(0.2), e2 = endpoint_error(0.1);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("curve leaving the box carries its partial trace") {
  const Immersion line = testing::immersion({"0.6*s^3", "0.8*s^3"}, {"s"}, {{0.8, 1.2}});
  const double u0[1] = {1.0};
  try {
    trace_integral_curve(line, MetricField::euclidean(2), testing::radial(2), u0, 5.0, 0.05);
    FAIL("expected a domain exit");
  } catch (const DomainExitError& e) {
    CHECK(e.partial().exited);
    CHECK(e.partial().samples.size() > 2);
  }
}

TEST_CASE("tanh fit recovers the constant") {
  const IntegralCurve c = synthetic(
      0.0, 1.0, 100, [](double s) { return s; }, [](double s) { return std::tanh(0.5 * s * s + 0.3); });
  const WarpFit fit = fit_tanh_integral(c);
  CHECK(std::abs(fit.constant - 0.3) <= 1e-8);
  CHECK(fit.deviation <= 1e-8);
  CHECK(std::abs(fit.integral.back() - 0.5) <= 1e-14);
  CHECK(warping_ode_residual(c) <= 1e-7);

  const IntegralCurve flat = synthetic(
      0.0, 1.0, 10, [](double) { return 0.0; }, [](double) { return 0.5; });
  const WarpFit f0 = fit_tanh_integral(flat);
  CHECK(f0.constant == doctest::Approx(std::atanh(0.5)));
  CHECK(f0.deviation <= 1e-15);
  CHECK(warping_ode_residual(flat) <= 1e-15);
}

TEST_CASE("Simpson integral of a smooth function") {
  for (int steps : {10, 11}) {
    const IntegralCurve c = synthetic(
        0.0, 1.0, steps, [](double s) { return std::cos(s); }, [](double) { return 0.1; });
    const WarpFit fit = fit_tanh_integral(c);
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      CHECK(std::abs(fit.integral[i] - std::sin(c.samples[i].s)) <= 1e-5);
    }
  }
  CHECK_THROWS_AS(warping_ode_residual(synthetic(0, 1, 3, [](double) { return 0.0; }, [](double) { return 0.1; })),
                  Error);
}

TEST_CASE("warped ambient round trip for random warping functions") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> a(1.0, 2.0), b(-0.5, 0.5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::string lambda = std::to_string(a(rng)) + " + " + std::to_string(b(rng)) + "*s + " +
                               std::to_string(b(rng)) + "*s^2 + 0.1*sin(3*s)";
    INFO(lambda);
    const WarpedAmbient w = flat_fiber_ambient(lambda, {0.0, 1.0});
    const auto sample = sample_box(w.domain.intervals, 50, 100 + trial);
    const WarpedConverse r = warped_converse(w, sample);
    CHECK(r.verdict == Verdict::AntiTorqued);
    CHECK(r.f_error <= 1e-8);
    CHECK(r.pass);
    CHECK(verify_ambient_decomposition(w.metric, w.field, sample).pass());
  }
}

TEST_CASE("constant warping function is degenerate") {
  const WarpedAmbient w = flat_fiber_ambient("1", {0.0, 1.0});
  const auto sample = sample_box(w.domain.intervals, 50, 5);
  const WarpedConverse r = warped_converse(w, sample);
  CHECK(r.degenerate);
  CHECK(r.verdict == Verdict::Parallel);
  CHECK_FALSE(r.pass);
}

TEST_CASE("non-positive warping function is rejected") {
  try {
    flat_fiber_ambient("s - 0.5", {0.0, 1.0});
    FAIL("expected NonPositiveWarp");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveWarp);
  }
}
