#include "doctest.h"
#include "pvszeta/special_functions.hpp"

#include <cmath>
#include <random>

using namespace pvs;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

StructureConstants euclid(int m) {
  StructureConstants c;
  c.n = 1;
  c.e = m - 1;
  c.invariant_kind = InvariantKind::EuclideanNorm;
  return c;
}

StructureConstants absdet(int n) {
  StructureConstants c;
  c.n = n;
  c.d = HalfInt::from_int(1);
  c.invariant_kind = InvariantKind::AbsDet;
  return c;
}

}  // namespace

TEST_CASE("gamma at simple points") {
  CHECK(rel(complex_gamma(1.0), 1.0) < 1e-15);
  CHECK(rel(complex_gamma(0.5), std::sqrt(kPi)) < 1e-14);
  CHECK(rel(complex_gamma(5.0), 24.0) < 1e-14);
}

TEST_CASE("gamma against high-precision values") {
  // 30-digit reference values.
  CHECK(rel(complex_gamma({2.0, 3.0}), {-0.0823952726656118836738703143646, 0.0917742874352593145956674172938}) < 1e-13);
  CHECK(rel(complex_gamma({0.5, 20.0}), {-3.43078415914548175319367595464e-14, 4.54288035746334336354218858927e-14}) <
        1e-12);
  CHECK(rel(complex_gamma({-3.7, 1.2}), {0.00491073509001359444103398689691, 0.00996255171918667048606718877327}) <
        1e-13);
}

TEST_CASE("gamma poles") {
  CHECK_THROWS_AS(complex_gamma(0.0), PoleError);
  CHECK_THROWS_AS(complex_gamma(-3.0), PoleError);
  CHECK(reciprocal_gamma(-2.0) == Complex(0.0));
  CHECK(distance_to_nonpositive_integer({-2.0, 0.5}) == doctest::Approx(0.5));
}

TEST_CASE("recurrence and reflection on a random grid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const Complex z(u(rng), u(rng));
    if (distance_to_nonpositive_integer(z) < 0.05 || distance_to_nonpositive_integer(1.0 - z) < 0.05) continue;
    const Complex g = complex_gamma(z);
    CHECK(rel(complex_gamma(z + 1.0), z * g) < 1e-12);
    if (std::abs(z.imag()) < 15.0) {
      CHECK(std::abs(g * complex_gamma(1.0 - z) * std::sin(kPi * z) / kPi - 1.0) < 1e-10);
    }
    ++checked;
  }
  CHECK(checked > 150);
}

TEST_CASE("log gamma exponentiates to gamma") {
  for (Complex z : {Complex(3.5, 1.0), Complex(-2.3, 4.0), Complex(0.1, -7.0)}) {
    CHECK(rel(std::exp(log_gamma(z)), complex_gamma(z)) < 1e-12);
  }
}

TEST_CASE("beta and the half-line beta") {
  CHECK(rel(beta(2.0, 3.0), 1.0 / 12.0) < 1e-14);
  // int_0^inf x (1+x^2)^{-3} dx = B(1,2)/2 = 1/4.
  CHECK(rel(half_line_beta(1.0, 3.0), 0.25) < 1e-14);
}

TEST_CASE("Gamma_n") {
  CHECK(rel(gamma_n(2.0, {1, HalfInt{0}}), 1.0) < 1e-15);
  CHECK(rel(gamma_n(3.0, {2, HalfInt::from_int(1)}), std::sqrt(kPi) / 2.0) < 1e-14);
  CHECK_THROWS_AS(gamma_n(1.0, {2, HalfInt::from_int(1)}), PoleError);
  CHECK(reciprocal_gamma_n(1.0, {2, HalfInt::from_int(1)}) == Complex(0.0));
  const Complex t(0.7, 0.4);
  CHECK(rel(reciprocal_gamma_n(t, {3, HalfInt{3}}) * gamma_n(t, {3, HalfInt{3}}), 1.0) < 1e-13);
}

TEST_CASE("pole distances") {
  CHECK(gamma_n_pole_distance(-2.0, {1, HalfInt{0}}) == 0.0);
  CHECK(gamma_n_pole_distance({1.0, 1.0}, {1, HalfInt{0}}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(gamma_n_pole_distance(1.0, {2, HalfInt::from_int(1)}) == 0.0);
  CHECK(gamma_n_pole_distance(0.5, {2, HalfInt{1}}) == 0.0);
}

TEST_CASE("b-functions") {
  const ExactPolynomial b1 = bernstein_b(euclid(1));
  CHECK(b1 == ExactPolynomial({0, -1, 1}));
  CHECK(bernstein_bk(InvariantKind::EuclideanNorm, 3.3, 0, euclid(3)) == Complex(1.0));
  StructureConstants one = absdet(1);
  CHECK(bernstein_bk(InvariantKind::AbsDet, 5.0, 2, one) == Complex(120.0));
  const Complex t(0.3, 1.1);
  CHECK(rel(bernstein_bk(InvariantKind::EuclideanNorm, t, 1, euclid(5)), t * (t + 3.0)) < 1e-15);
  CHECK(rel(bernstein_bk(InvariantKind::AbsDet, t, 1, absdet(2)), t * (t - 1.0) * (t + 1.0) * t) < 1e-14);
}

TEST_CASE("b_k composes exactly") {
  for (const StructureConstants& c : {euclid(1), euclid(3), absdet(1), absdet(2), absdet(3)}) {
    for (int j = 0; j <= 2; ++j) {
      for (int k = 0; k <= 2; ++k) {
        const ExactPolynomial lhs = bernstein_bk_polynomial(c, j + k);
        const ExactPolynomial rhs = bernstein_bk_polynomial(c, j) * bernstein_bk_polynomial(c, k).shifted(2 * j);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("b_k roots are roots") {
  const StructureConstants c = absdet(2);
  for (double r : bernstein_bk_roots(c, 2)) CHECK(std::abs(bernstein_bk(c.invariant_kind, r, 2, c)) < 1e-9);
}

TEST_CASE("unsupported kinds have no b-function") {
  StructureConstants c;
  c.n = 2;
  c.d = HalfInt::from_int(2);
  c.invariant_kind = InvariantKind::Pfaffian;
  CHECK_THROWS_AS(bernstein_b(c), UnsupportedError);
}
