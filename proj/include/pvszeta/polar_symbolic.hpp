#pragma once

#include <span>
#include <vector>

#include "pvszeta/common.hpp"
#include "pvszeta/function_space.hpp"

namespace pvs {

/// c prod_j x_j^{p_j} (1 + x_j^2)^{w_j}.
struct SymTerm {
  Complex coeff;
  std::vector<Complex> p;
  std::vector<Complex> w;
};

/// Finite sums of SymTerm in n variables. Exponents are complex so formal
/// powers such as x^t are representable; coefficients are complex doubles.
class PolarSymbolicFunction {
 public:
  explicit PolarSymbolicFunction(int n = 1);

  static PolarSymbolicFunction constant(int n, Complex c);
  /// prod_j (1 + x_j^2)^{-(s+m/n)/2}.
  static PolarSymbolicFunction spherical(const SphericalVector& h);
  static PolarSymbolicFunction term(Complex coeff, std::vector<Complex> p, std::vector<Complex> w);

  int rank() const { return n_; }
  const std::vector<SymTerm>& terms() const { return terms_; }

  void add(const SymTerm& t);
  PolarSymbolicFunction operator+(const PolarSymbolicFunction& o) const;
  PolarSymbolicFunction operator-(const PolarSymbolicFunction& o) const;
  PolarSymbolicFunction operator*(Complex c) const;
  /// Product of two symbolic functions (exponents add).
  PolarSymbolicFunction operator*(const PolarSymbolicFunction& o) const;

  PolarSymbolicFunction derivative(int j) const;
  /// x_j^k f (k may be negative or complex).
  PolarSymbolicFunction times_power(int j, Complex k) const;
  /// (1 + x_j^2)^k f.
  PolarSymbolicFunction times_one_plus_sq(int j, Complex k) const;
  /// Substitutes x_j -> y for a fixed numeric y > 0, leaving the other variables.
  PolarSymbolicFunction restrict(int j, double y) const;
  /// Substitutes x_from -> x_to: exponents of `from` are added to `to`.
  PolarSymbolicFunction merge_variable(int from, int to) const;
  /// True when every canonical term is bounded on (R+)^n.
  bool is_bounded() const;

  Complex eval(std::span<const double> x) const;
  Complex eval(const PolarPoint& pt) const { return eval(pt.x); }

  /// Expands (1+x^2) powers that differ by integers within a class and
  /// merges equal monomials; used for structural comparison.
  PolarSymbolicFunction canonical() const;
  /// Largest |coeff| after canonicalization.
  double max_coeff() const;

 private:
  void check(int j) const;
  int n_;
  std::vector<SymTerm> terms_;
};

/// max |coeff| of canonical(a - b) relative to the larger operand.
double symbolic_distance(const PolarSymbolicFunction& a, const PolarSymbolicFunction& b);

}  // namespace pvs
