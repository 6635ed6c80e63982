#include "doctest.h"
#include "pvszeta/quadrature.hpp"

#include <cmath>

#include "pvszeta/common.hpp"

using namespace pvs;

namespace {

QuadratureSpec spec(Exec e = Exec::Serial) {
  QuadratureSpec q;
  q.exec = e;
  return q;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("half-line examples") {
  const QuadResult a = integrate_halfline([](double x) { return Complex(std::exp(-x)); }, 0.0, spec());
  CHECK(a.converged);
  CHECK(rel(a.value, 1.0) < 1e-13);
  const QuadResult b = integrate_halfline([](double x) { return Complex(std::sqrt(x) * std::exp(-x)); }, 0.5, spec());
  CHECK(rel(b.value, std::sqrt(kPi) / 2) < 1e-12);
  const QuadResult c = integrate_halfline([](double x) { return Complex(x * std::pow(1 + x * x, -3.0)); }, 1.0, spec());
  CHECK(rel(c.value, 0.25) < 1e-12);
  const QuadResult d = integrate_halfline([](double x) { return Complex(std::pow(x, -0.5) * std::exp(-x)); }, -0.5, spec());
  CHECK(rel(d.value, std::sqrt(kPi)) < 1e-11);
}

TEST_CASE("polynomials times exp(-x)") {
  for (int k = 0; k <= 10; ++k) {
    const QuadResult r = integrate_halfline([k](double x) { return Complex(std::pow(x, k) * std::exp(-x)); },
                                            static_cast<double>(k), spec());
    CHECK(rel(r.value, std::tgamma(k + 1.0)) < 1e-12);
  }
}

TEST_CASE("non-integrable endpoint is rejected") {
  CHECK_THROWS_AS(integrate_halfline([](double x) { return Complex(1.0 / x); }, -1.0, spec()), RegionError);
  QuadratureSpec q;
  q.target_rel_tol = 1e-15;
  CHECK_THROWS_AS(q.validate(), ValidationError);
  q = QuadratureSpec{};
  q.max_level = 0;
  CHECK_THROWS_AS(q.validate(), ValidationError);
}

TEST_CASE("unit interval and line") {
  const QuadResult u = integrate_unit([](double x, double y) { return Complex(std::pow(x * y, -0.5)); }, spec());
  CHECK(rel(u.value, kPi) < 1e-10);
  const QuadResult l = integrate_line([](double x) { return Complex(std::exp(-kPi * x * x), x * std::exp(-x * x)); }, spec());
  CHECK(std::abs(l.value - 1.0) < 1e-13);
}

TEST_CASE("cone integrals") {
  const auto expsum = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v;
    return Complex(std::exp(-s));
  };
  for (int n = 1; n <= 3; ++n) {
    CHECK(rel(integrate_cone(expsum, n, ConeMode::Orthant, spec()).value, 1.0) < 1e-11);
  }
  const auto gauss = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return Complex(std::exp(-s));
  };
  CHECK(rel(integrate_cone(gauss, 2, ConeMode::Ordered, spec()).value, kPi / 8) < 1e-11);
  CHECK(rel(integrate_cone(gauss, 3, ConeMode::Ordered, spec()).value, std::pow(kPi, 1.5) / 48) < 1e-10);
  const QuadResult one = integrate_cone(expsum, 1, ConeMode::Ordered, spec());
  const QuadResult half = integrate_halfline([](double x) { return Complex(std::exp(-x)); }, 0.0, spec());
  CHECK(one.value == half.value);
}

TEST_CASE("cone serial and parallel agree") {
  const auto g = [](std::span<const double> x) {
    double s = 0, p = 1;
    for (double v : x) {
      s += v * v;
      p *= v;
    }
    return Complex(p * std::exp(-kPi * s), std::exp(-s));
  };
  const QuadResult a = integrate_cone(g, 3, ConeMode::Ordered, spec(Exec::Serial));
  const QuadResult b = integrate_cone(g, 3, ConeMode::Ordered, spec(Exec::Parallel));
  CHECK(std::abs(a.value - b.value) <= 1e-14 * std::abs(a.value));
}

TEST_CASE("Monte Carlo Gaussian on R^4") {
  MonteCarloSpec mc;
  mc.samples = 200000;
  mc.proposal_scale = 1.3;
  const auto g = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return Complex(std::exp(-kPi * s));
  };
  const MonteCarloResult r = integrate_mc_fullspace(g, 4, mc);
  CHECK(r.samples == mc.samples);
  CHECK(std::abs(r.value - 1.0) < 3 * r.std_error);
  CHECK_FALSE(r.variance_warning);

  SUBCASE("deterministic and thread independent") {
    const MonteCarloResult again = integrate_mc_fullspace(g, 4, mc);
    CHECK(again.value == r.value);
    MonteCarloSpec serial = mc;
    serial.exec = Exec::Serial;
    const MonteCarloResult s = integrate_mc_fullspace(g, 4, serial);
    CHECK(std::abs(s.value - r.value) < 1e-12);
  }
  SUBCASE("standard error scales like N^(-1/2)") {
    MonteCarloSpec big = mc;
    big.samples = 4 * mc.samples;
    const MonteCarloResult b = integrate_mc_fullspace(g, 4, big);
    const double ratio = r.std_error / b.std_error;
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
  }
  SUBCASE("different seeds differ") {
    MonteCarloSpec other = mc;
    other.seed = mc.seed + 1;
    CHECK(integrate_mc_fullspace(g, 4, other).value != r.value);
  }
}
