#pragma once

// Rank-one (GL(2,R), nbar = R) constructions: the intertwining integral, the
// hermitian form, the weighted L2 pairing on the transform side and the
// nu(M,N) seminorm.

#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "pvszeta/function_space.hpp"
#include "pvszeta/gauss_poly.hpp"
#include "pvszeta/quadrature.hpp"
#include "pvszeta/zeta_engine.hpp"

namespace pvs {

/// c (1+ix)^alpha (1-ix)^beta, principal branches.
struct LineTerm {
  Complex coeff;
  Complex alpha;
  Complex beta;
};

/// Finite sums of LineTerm on R; closed under d/dx.
class LineFunction {
 public:
  LineFunction() = default;
  explicit LineFunction(std::vector<LineTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<LineTerm>& terms() const { return terms_; }
  LineFunction derivative() const;
  LineFunction derivative(int order) const;
  Complex eval(double x) const;
  /// max Re(alpha + beta): |f(x)| <= C (1+x^2)^{g/2}.
  double growth_exponent() const;
  /// |c| e^{pi/2 (|Im alpha| + |Im beta|)}: |term| <= this (1+x^2)^{Re(alpha+beta)/2}.
  static double majorant_constant(const LineTerm& term);

 private:
  std::vector<LineTerm> terms_;
};

/// K-finite vector of I(s) at rank one:
/// (1+x^2)^{-(s+1)/2} sum_k c_k ((1+ix)/(1-ix))^k.
struct KTypeVector {
  Complex s;
  std::map<int, Complex> coeffs{{0, 1.0}};

  static KTypeVector spherical(Complex s) { return {s, {{0, 1.0}}}; }
  KTypeVector at(Complex s_new) const { return {s_new, coeffs}; }
  LineFunction line() const;
  Complex eval(double x) const { return line().eval(x); }
};

using LineInput = std::variant<KTypeVector, GaussPoly>;

/// int_R f(x) |x - X|^u dx for a plain function, split at X and at `center`
/// (where f is concentrated). Requires absolute convergence.
QuadResult line_zeta_direct(const std::function<Complex(double)>& f, double X, Complex u, double center,
                            const QuadratureSpec& quad);

/// Z(tau_X F, u) = int F(x + X) |x|^u dx. For Re u <= -3/4 the Taylor
/// polynomial of F(. + X) at 0 is removed on |x| < 1 and its moments added
/// back; k_shifts reports the number of even orders removed.
ZetaResult translated_zeta(const LineInput& F, double X, Complex u, const QuadratureSpec& quad);

/// A_s(F)(X) = Z(tau_X F, s - 1); s is taken from F for K-type input.
ZetaResult intertwine_A(const KTypeVector& F, double X, const QuadratureSpec& quad);
ZetaResult intertwine_A(const GaussPoly& F, Complex s, double X, const QuadratureSpec& quad);

struct HermitianFormSpec {
  Complex s;
  Complex t;
  QuadratureSpec quad;
};

struct HermResult {
  Complex value;
  double err_estimate = 0.0;
  bool converged = true;
  Complex prefactor;
};

/// <F, G>_{s,t} = pi^{(t+4)/2} / Gamma((t+4)/2) int F_s(X) conj(Z(tau_X G_{conj s}, conj t - 1)) dX.
/// Needs Re t < Re s + 1.
HermResult hermitian_form(const KTypeVector& F, const KTypeVector& G, const HermitianFormSpec& spec);

/// int F^(Y) conj(G^(Y)) |Y|^{-t} dY for spherical vectors at rank one (any m,
/// radial reduction). Needs Re t < m.
QuadResult l2_weighted_inner(const SphericalVector& F, const SphericalVector& G, Complex t, const QuadratureSpec& quad);
/// The same for Gaussian-polynomial data on R (exact transforms).
QuadResult l2_weighted_inner(const GaussPoly& F, const GaussPoly& G, Complex t, const QuadratureSpec& quad);

/// pi^{(5-t)/2} 16 / (Gamma((-t-3)/2) b_2(t+3)), b(t) = t(t-1).
Complex herm_identity_constant(Complex t);

struct HermIdentity {
  Complex lhs;  ///< hermitian_form(h_s, h_s)
  Complex rhs;  ///< herm_identity_constant(t) * l2_weighted_inner
  Complex ratio;
  double rel_err = 0.0;
  double lhs_err = 0.0;
  double rhs_err = 0.0;
};

/// Both sides of <h_s, h_s>_{s,t} = C(t) <h^_s, h^_s>_{L2(|Y|^{-t})}; needs 0 < Re t < 1.
HermIdentity herm_identity(Complex s, Complex t, const QuadratureSpec& quad);

struct PositivityPoint {
  double s = 0.0;
  Complex value;
  double err_estimate = 0.0;
  bool positive = false;  ///< Re value - 3 err > 0 and Im value negligible
};

/// <h_s, h_s>_{s,s} for each s.
std::vector<PositivityPoint> positivity_scan(const std::vector<double>& s_values, const QuadratureSpec& quad);

/// Measured decay orders -log|h^(2r)/h^(r)| / log 2 at r = 2, 4, 8, 16.
std::vector<double> fourier_decay_orders(const SphericalVector& h, const QuadratureSpec& quad);

struct NuGrid {
  double radius = 40.0;
  int samples = 4001;
};

struct NuResult {
  double grid_max = 0.0;
  double tail_bound = 0.0;  ///< the supremum lies in [grid_max, grid_max + tail_bound]
  bool divergent = false;
};

/// sup_X (1+|X|^2)^M sum_{|alpha| <= N} |d^alpha F(X)|.
NuResult nu_seminorm(const KTypeVector& F, int M, int N, const NuGrid& grid = {});
/// Spherical vectors on R^m: any N when m = 1, N = 0 otherwise.
NuResult nu_seminorm(const SphericalVector& h, int M, int N, const NuGrid& grid = {});
NuResult nu_seminorm(const GaussPoly& F, int M, int N, const NuGrid& grid = {});

}  // namespace pvs
