#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "pvszeta/common.hpp"
#include "pvszeta/structure_tables.hpp"

namespace pvs {

using Rational = boost::multiprecision::cpp_rational;

/// Gamma on the complex plane. Throws PoleError within 1e-12 of a nonpositive integer.
Complex complex_gamma(Complex z);

/// A logarithm of Gamma(z); exp(log_gamma(z)) == Gamma(z). The imaginary part
/// is not normalized to the principal branch on the reflected half plane.
Complex log_gamma(Complex z);

/// 1 / Gamma(z), entire; exact zero at the poles of Gamma.
Complex reciprocal_gamma(Complex z);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
Complex beta(Complex a, Complex b);

/// int_0^inf x^a (1+x^2)^{-b} dx = B((a+1)/2, b - (a+1)/2) / 2.
Complex half_line_beta(Complex a, Complex b);

double distance_to_nonpositive_integer(Complex z);

struct GammaFactorSpec {
  int n = 1;
  HalfInt d;

  static GammaFactorSpec from(const StructureConstants& c) { return {c.n, c.d}; }
};

/// Gamma_n(t) = prod_{j<n} Gamma((t - j d)/2).
Complex gamma_n(Complex t, const GammaFactorSpec& spec);

/// 1 / Gamma_n(t), entire.
Complex reciprocal_gamma_n(Complex t, const GammaFactorSpec& spec);

/// Distance from t to the nearest pole j d - 2k (j < n, k >= 0) of Gamma_n.
double gamma_n_pole_distance(Complex t, const GammaFactorSpec& spec);

/// Polynomial in t with exact rational coefficients (ascending powers).
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<Rational> coeffs);

  static ExactPolynomial constant(Rational c);
  /// The linear factor (t + shift).
  static ExactPolynomial linear(Rational shift);

  ExactPolynomial operator*(const ExactPolynomial& other) const;
  ExactPolynomial operator*(const Rational& scalar) const;
  bool operator==(const ExactPolynomial& other) const;

  /// p(t - delta).
  ExactPolynomial shifted(const Rational& delta) const;

  Complex eval(Complex t) const;
  Rational eval(const Rational& t) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// b(t) with grad(d)^2 grad^t = b(t) grad^{t-2} for the supported invariants:
/// euclidean-norm on R^m: t(t+m-2);
/// abs-det on M(n): prod_j (t+j)(t-1+j);
/// quadratic form |(X,X)|/2 on R^{p-1,q-1}: t(t-1)(t+N/2-1)(t+N/2-2), N = p+q-2.
ExactPolynomial bernstein_b(const StructureConstants& c);

/// b_k(t) = prod_{r<k} b(t - 2r) as an exact polynomial.
ExactPolynomial bernstein_bk_polynomial(const StructureConstants& c, int k);

/// b_k evaluated at complex t.
Complex bernstein_bk(InvariantKind kind, Complex t, int k, const StructureConstants& c);

/// Roots of b_k (all real rationals) as doubles.
std::vector<double> bernstein_bk_roots(const StructureConstants& c, int k);

}  // namespace pvs
