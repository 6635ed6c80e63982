#include "doctest.h"
#include "pvszeta/representation_ops.hpp"

#include <cmath>

#include "pvszeta/special_functions.hpp"

using namespace pvs;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

StructureConstants line() {
  GroupCase g = GroupCase::row(12);
  g.p = 1;
  return lookup_case(g);
}

}  // namespace

TEST_CASE("line functions") {
  const KTypeVector h = KTypeVector::spherical(Complex(1.5, 0.3));
  const double x = 0.7;
  CHECK(rel(h.eval(x), std::pow(Complex(1.0 + x * x), -(h.s + 1.0) / 2.0)) < 1e-14);
  const LineFunction f = h.line();
  const double dx = 1e-5;
  CHECK(rel(f.derivative().eval(x), (f.eval(x + dx) - f.eval(x - dx)) / (2 * dx)) < 1e-8);
  CHECK(f.growth_exponent() == doctest::Approx(-2.5));
  const KTypeVector k{2.0, {{1, 1.0}}};
  CHECK(std::abs(k.eval(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(k.eval(1.0) - Complex(0.0, std::pow(2.0, -1.5))) < 1e-15);
}

TEST_CASE("intertwining integral") {
  const QuadratureSpec q;
  SUBCASE("spherical vector at 0") {
    for (double s : {1.5, 0.2}) {
      const ZetaResult a = intertwine_A(KTypeVector::spherical(s), 0.0, q);
      CHECK(a.converged);
      CHECK(rel(a.value, beta(s / 2.0, 0.5)) < 1e-10);
    }
  }
  SUBCASE("spherical vector is mapped to a multiple of h_{-s}") {
    for (double s : {1.5, 0.2}) {
      const Complex a0 = intertwine_A(KTypeVector::spherical(s), 0.0, q).value;
      for (double X : {0.5, 3.0, 1e6}) {
        const Complex a = intertwine_A(KTypeVector::spherical(s), X, q).value;
        CHECK(rel(a, a0 * std::pow(1.0 + X * X, (s - 1.0) / 2.0)) < 1e-9);
        CHECK(rel(intertwine_A(KTypeVector::spherical(s), -X, q).value, a) < 1e-12);
      }
    }
  }
  SUBCASE("Gaussian") {
    const GaussPoly g = GaussPoly::gaussian(1);
    CHECK(rel(intertwine_A(g, 3.0, 0.0, q).value, std::pow(kPi, -1.5) * std::tgamma(1.5)) < 1e-12);
    // continued: int e^{-pi x^2} |x|^u dx = pi^{-(u+1)/2} Gamma((u+1)/2)
    const Complex u(-1.5, 0.4);
    const ZetaResult z = translated_zeta(g, 0.0, u, q);
    CHECK(z.path == ZetaPath::Continued);
    CHECK(rel(z.value, std::pow(kPi, -(u + 1.0) / 2.0) * complex_gamma((u + 1.0) / 2.0)) < 1e-10);
    CHECK_THROWS_AS(translated_zeta(g, 0.0, -3.0, q), PoleError);
  }
  SUBCASE("translation agrees with direct line integral") {
    const GaussPoly g = GaussPoly::gaussian(1) + GaussPoly::monomial(1, {1}, GaussRational(Rational(0), Rational(2)));
    const auto f = [&](double x) { return gp_eval(g, std::span<const double>(&x, 1)); };
    for (double X : {-1.3, 0.4, 2.5}) {
      const Complex u(0.6, -0.2);
      CHECK(rel(translated_zeta(g, X, u, q).value, line_zeta_direct(f, X, u, 0.0, q).value) < 1e-10);
    }
  }
  SUBCASE("divergent input is rejected") {
    CHECK_THROWS_AS(translated_zeta(KTypeVector::spherical(0.5), 0.0, 0.8, q), RegionError);
  }
}

TEST_CASE("hermitian form") {
  const QuadratureSpec q;
  SUBCASE("conjugate symmetry for real parameters") {
    const KTypeVector F{1.5, {{0, 1.0}, {1, Complex(0.3, 0.2)}}};
    const KTypeVector G{1.5, {{0, 0.5}, {-1, Complex(0.0, 1.0)}}};
    const HermResult a = hermitian_form(F, G, {1.5, 0.4, q});
    const HermResult b = hermitian_form(G, F, {1.5, 0.4, q});
    CHECK(a.converged);
    CHECK(std::abs(a.value - std::conj(b.value)) < 1e-9 * std::abs(a.value));
  }
  SUBCASE("outside the convergence region") {
    CHECK_THROWS_AS(hermitian_form(KTypeVector::spherical(0.5), KTypeVector::spherical(0.5), {0.5, 1.6, q}),
                    RegionError);
  }
  SUBCASE("positivity on the complementary range") {
    for (const PositivityPoint& p : positivity_scan({0.25, 0.5, 0.75}, q)) {
      CHECK(p.positive);
      CHECK(p.value.real() > 0.0);
    }
  }
  SUBCASE("identity with the weighted L2 pairing") {
    for (auto [s, t] : {std::pair{1.5, 0.5}, std::pair{0.8, 0.3}, std::pair{2.0, 0.7}}) {
      const HermIdentity h = herm_identity(s, t, q);
      CHECK(h.rel_err < 1e-5);
      CHECK(std::abs(h.ratio - 1.0) < 1e-5);
    }
    CHECK_THROWS_AS(herm_identity(1.5, 1.2, q), RegionError);
  }
}

TEST_CASE("weighted L2 pairing") {
  const QuadratureSpec q;
  const GaussPoly g = GaussPoly::gaussian(1);
  CHECK(rel(l2_weighted_inner(g, g, 0.0, q).value, std::sqrt(0.5)) < 1e-12);
  const GaussPoly f = g + GaussPoly::monomial(1, {1}, GaussRational(Rational(1), Rational(1)));
  const Complex ab = l2_weighted_inner(f, g, 0.4, q).value;
  const Complex ba = l2_weighted_inner(g, f, 0.4, q).value;
  CHECK(std::abs(ab - std::conj(ba)) < 1e-12 * std::abs(ab));
  const SphericalVector h{1.5, line()};
  CHECK(l2_weighted_inner(h, h, 0.3, q).value.real() > 0.0);
  CHECK_THROWS_AS(l2_weighted_inner(h, h, 1.2, q), RegionError);
}

TEST_CASE("transform of h_s decays faster than any power") {
  const std::vector<double> orders = fourier_decay_orders(SphericalVector{1.5, line()}, QuadratureSpec{});
  REQUIRE(orders.size() == 4);
  for (std::size_t i = 1; i < orders.size(); ++i) CHECK(orders[i] > 1.5 * orders[i - 1]);
  CHECK(orders.back() > 100.0);
}

TEST_CASE("seminorms") {
  const NuResult a = nu_seminorm(KTypeVector::spherical(1.5), 0, 0);
  CHECK(a.grid_max == doctest::Approx(1.0));
  CHECK_FALSE(a.divergent);
  CHECK(a.tail_bound < 1e-3);
  CHECK(nu_seminorm(KTypeVector::spherical(1.5), 2, 0).divergent);
  const NuResult g = nu_seminorm(GaussPoly::gaussian(1), 1, 0);
  CHECK_FALSE(g.divergent);
  CHECK(g.grid_max == doctest::Approx(1.0));
  const NuResult s = nu_seminorm(SphericalVector{1.5, line()}, 0, 1);
  CHECK_FALSE(s.divergent);
  CHECK(s.grid_max > 1.0);
}
