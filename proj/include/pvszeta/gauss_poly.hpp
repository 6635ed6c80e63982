#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pvszeta/special_functions.hpp"
#include "pvszeta/structure_tables.hpp"

namespace pvs {

/// a + b i with exact rational parts.
struct GaussRational {
  Rational re = 0;
  Rational im = 0;

  GaussRational() = default;
  GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(int r) : re(r) {}

  static GaussRational i_unit() { return {0, 1}; }
  bool is_zero() const { return re == 0 && im == 0; }
  Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }

  GaussRational operator+(const GaussRational& o) const { return {re + o.re, im + o.im}; }
  GaussRational operator-(const GaussRational& o) const { return {re - o.re, im - o.im}; }
  GaussRational operator-() const { return {-re, -im}; }
  GaussRational operator*(const GaussRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
};

/// (sum_alpha c_alpha X^alpha) exp(-pi |X|^2) on R^dim, each c_alpha a sum of
/// Gaussian rationals times integer powers of pi (pi kept symbolic).
class GaussPoly {
 public:
  struct Key {
    std::vector<int> alpha;
    int pi_pow = 0;
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, GaussRational>;

  explicit GaussPoly(int dim = 1);

  /// exp(-pi |X|^2).
  static GaussPoly gaussian(int dim);
  static GaussPoly monomial(int dim, std::vector<int> alpha, GaussRational coeff = 1, int pi_pow = 0);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(std::vector<int> alpha, int pi_pow, const GaussRational& coeff);

  GaussPoly operator+(const GaussPoly& other) const;
  GaussPoly operator-(const GaussPoly& other) const;
  /// c * pi^pi_shift * f.
  GaussPoly scaled(const GaussRational& c, int pi_shift = 0) const;
  /// x_j f.
  GaussPoly times_coordinate(int j) const;
  /// P(X) f where P is the polynomial part of `poly` (its Gaussian factor is ignored).
  GaussPoly times_polynomial(const GaussPoly& poly) const;
  /// f(-X).
  GaussPoly reflected() const;
  bool operator==(const GaussPoly& other) const { return dim_ == other.dim_ && terms_ == other.terms_; }

 private:
  void check_index(int j) const;
  int dim_;
  Terms terms_;
};

GaussPoly gp_differentiate(const GaussPoly& f, int idx);

/// Coordinate layout expected for full-space kinds: euclidean-norm on R^m,
/// abs-det on row-major n x n matrices, quadratic-form on R^{p+q-2} with the
/// first p-1 coordinates positive.
int full_space_dim(const StructureConstants& c);

/// grad^2 as a polynomial (times exp(-pi|X|^2), ignored):
/// |X|^2, det(X)^2, or (X,X)^2 / 4.
GaussPoly invariant_square_polynomial(const StructureConstants& c);

/// Applies the constant-coefficient operator grad^2(d) k times:
/// Laplacian, det(d)^2, or box^2 / 4.
GaussPoly gp_apply_invariant_operator(const GaussPoly& f, const StructureConstants& c, int k);

/// f^(Y) = int f(X) exp(-2 pi i <X,Y>) dX, exact.
GaussPoly gp_fourier(const GaussPoly& f);

Complex gp_eval(const GaussPoly& f, std::span<const double> point);

/// Polynomial part only (no Gaussian factor), for use on ratios.
Complex gp_eval_polynomial(const GaussPoly& f, std::span<const double> point);

}  // namespace pvs
