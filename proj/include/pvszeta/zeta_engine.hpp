#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvszeta/function_space.hpp"
#include "pvszeta/gauss_poly.hpp"
#include "pvszeta/polar_symbolic.hpp"
#include "pvszeta/quadrature.hpp"
#include "pvszeta/structure_tables.hpp"

namespace pvs {

enum class ZetaPath { Direct, Continued, ClosedForm };
std::string to_string(ZetaPath path);

struct ZetaResult {
  Complex value;
  double err_estimate = 0.0;
  ZetaPath path = ZetaPath::Direct;
  int k_shifts = 0;
  std::string region;
  std::string method;  ///< "polar-reduction", "monte-carlo", ...
  bool converged = true;
};

enum class ZetaMethod { Auto, PolarReduction, MonteCarlo };

struct ZetaOptions {
  QuadratureSpec quad;
  ZetaMethod method = ZetaMethod::Auto;
  MonteCarloSpec mc;
  /// Distance kept from the left edge of the direct strip when choosing k.
  double strip_margin = 0.5;
  /// Polar-formula constant for kinds without a full-space model.
  std::optional<double> polar_constant;
};

/// Direct strip for Gaussian-polynomial input: Re t > -(e+1).
double direct_lower_bound(const StructureConstants& c);

/// Z(f, t) = int f(X) grad(X)^t dX for Re t > -(e+1).
ZetaResult zeta_direct(const GaussPoly& f, Complex t, const StructureConstants& c, const ZetaOptions& opt = {});
/// Polar-formula zeta of h_s on -(e+1) < Re t < Re s - d(n-1).
ZetaResult zeta_direct(const SphericalVector& h, Complex t, const ZetaOptions& opt = {});
/// Polar-formula zeta of a radial profile; decay_exponent plays the role of Re s.
ZetaResult zeta_direct(const RadialProfileFunction& f, Complex t, const StructureConstants& c,
                       const ZetaOptions& opt = {});

/// Minimal number of b-shifts needed to bring t into the direct strip.
int continuation_shifts(Complex t, const StructureConstants& c, double margin);

/// Z(f,t) = Z(grad^2(d)^k f, t+2k) / b_k(t+2k) with the minimal k (or `min_shifts`
/// if larger). Throws PoleError at zeros of b_k(t+2k).
ZetaResult zeta_continued(const GaussPoly& f, Complex t, const StructureConstants& c, const ZetaOptions& opt = {},
                          int min_shifts = 0);

/// Direct inside the strip, continued otherwise.
ZetaResult zeta_auto(const GaussPoly& f, Complex t, const StructureConstants& c, const ZetaOptions& opt = {});

struct CalibrationResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::string method;
  /// Independent estimate (sphere area or Monte Carlo) and its uncertainty.
  double cross_check = 0.0;
  double cross_check_err = 0.0;
};

/// The constant c in dX = c prod x_j^e prod (x_i^2-x_j^2)^d dx dk, fixed by
/// requiring unit Gaussian mass.
CalibrationResult calibrate_polar_constant(const StructureConstants& c, const QuadratureSpec& quad,
                                           const MonteCarloSpec& mc = {});

enum class OracleFunction { Gaussian, Spherical };

/// Closed forms: Gaussian pi^{-nt/2} Gamma_n(t+m/n)/Gamma_n(m/n) on supported
/// kinds; spherical at n=1: c B((t+e+1)/2, (s+m/n-t-e-1)/2)/2; spherical for
/// n >= 2 with even integer d by expansion into Beta products.
Complex closed_form_oracle(OracleFunction fn, Complex s, Complex t, const StructureConstants& c,
                           double polar_constant);

// ---- T_n integrals -------------------------------------------------------

struct TnParams {
  std::vector<int> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<int> p;  ///< strictly increasing 0-based indices entering the sign factor
  Complex s;
  Complex t;
  StructureConstants constants;
  PolarSymbolicFunction profile{1};

  int rank() const { return static_cast<int>(a.size()); }
  Complex s_at(int j) const { return static_cast<double>(a[static_cast<std::size_t>(j)]) * s + b[static_cast<std::size_t>(j)]; }
  Complex t_at(int j) const { return static_cast<double>(a[static_cast<std::size_t>(j)]) * t + c[static_cast<std::size_t>(j)]; }
  void validate() const;
};

struct TnRegion {
  double lower = 0.0;         ///< max_j (-1-c_j)/a_j
  double upper_offset = 0.0;  ///< min_j (b_j+m/n-1-c_j)/a_j, relative to Re s
  bool contains(Complex s, Complex t) const { return t.real() > lower && t.real() < s.real() + upper_offset; }
  std::string describe() const;
};

TnRegion tn_region(const TnParams& params);

/// prod_j x_j^{t_j} (1+x_j^2)^{-(s_j+m/n)/2} phi as a symbolic function.
PolarSymbolicFunction tn_integrand(const TnParams& params);

/// Integral over (R+)^n of tn_integrand times eps(x_p)^d; cone-split when d is odd.
ZetaResult tn_direct(const TnParams& params, const QuadratureSpec& quad);

/// psi cascade in variable j: psi_a = phi, psi_r = (1+x^2)^{sig_r/2} D_{s-2r,t-r}((1+x^2)^{-sig_r/2} psi_{r+1}).
/// Returns {psi_0, ..., psi_a}.
std::vector<PolarSymbolicFunction> psi_cascade(int j, Complex s, Complex t, int a, const PolarSymbolicFunction& phi,
                                               const StructureConstants& c);

/// {eta_0, ..., eta_n} with eta_n = profile, built at the params' (s, t).
std::vector<PolarSymbolicFunction> eta_cascade(const TnParams& params);

/// The boundary profile E^l(s, t, p, phi) as a function of the remaining
/// variables (x_l is set to the merged variable). Zero for even d or l not in p.
/// Returned as signed pieces: each entry pairs the index p_i with the symbolic
/// factor; the sign eps(x_p)|_{x_l -> x_{p_i}^-} is applied by the caller.
struct BoundaryPiece {
  int merged_into = 0;
  PolarSymbolicFunction term{1};
};
std::vector<BoundaryPiece> boundary_term_E(int l, Complex s, Complex t, const TnParams& params,
                                           const PolarSymbolicFunction& phi);

/// Sign of eps(x_p) at a generic point whose remaining coordinates follow
/// `order` (decreasing) with x_l just below x_{merged}.
int boundary_sign(const std::vector<int>& p, int l, int merged, const std::vector<int>& order);

/// The total boundary contribution E_{n-1}(s, t, p, phi) at the params' (s, t).
ZetaResult tn_boundary_total(const TnParams& params, const QuadratureSpec& quad);

/// T_n(s,t,phi) = [T_n(s+2a, t+a, eta_0) - E_{n-1}(s+2a, t+a, phi)] / gamma_n(s+2a : t+a),
/// applied `depth` times.
ZetaResult tn_continued(const TnParams& params, int depth, const QuadratureSpec& quad);

/// Both sides of the one-variable integration-by-parts identity in x_l with the
/// other radii fixed at `others` (entry l ignored):
/// lhs = int x^t eps^d D(phi (1+x^2)^{-sig/2}) dx,
/// rhs = (s:t) int x^{t-1} eps^d phi (1+x^2)^{-(sig-2)/2} dx + E^l.
std::pair<Complex, Complex> integration_by_parts_sides(int l, Complex s, Complex t, const TnParams& params,
                                                       const std::vector<double>& others, const QuadratureSpec& quad);

/// Integral of tn_direct over the boundary of the square centered at t0 with
/// half side h in the t-plane (s fixed), 20-point Gauss-Legendre on each side.
Complex tn_contour_integral(const TnParams& params, Complex t0, double h, const QuadratureSpec& quad);

/// Exact integral over (R+)^k of a symbolic function via Beta products, over
/// the variables in `active` (all when empty; the others must not occur).
/// Throws RegionError if some term diverges.
Complex symbolic_orthant_integral(const PolarSymbolicFunction& f, const std::vector<int>& active = {});

}  // namespace pvs
