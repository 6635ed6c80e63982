#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "pvszeta/common.hpp"
#include "pvszeta/kernels.hpp"

namespace pvs {

enum class QuadratureScheme { DoubleExponential, GaussLegendreComposite };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::DoubleExponential;
  int max_level = 7;
  double target_rel_tol = 1e-12;
  Exec exec = Exec::Parallel;

  /// Throws ValidationError for tolerances below 1e-13 or nonpositive levels.
  void validate() const;
};

struct QuadResult {
  Complex value;
  double err_estimate = 0.0;
  bool converged = false;
  int levels = 0;
  std::size_t evaluations = 0;
};

using HalfLineIntegrand = std::function<Complex(double)>;
/// Integrand on (0,1) receiving both x and 1-x, each accurate near its endpoint.
using UnitIntegrand = std::function<Complex(double x, double one_minus_x)>;
using PointIntegrand = std::function<Complex(std::span<const double>)>;

/// int_0^inf g(x) dx. `alpha` is the endpoint exponent at 0 (g ~ x^alpha);
/// alpha <= -1 is rejected as non-integrable.
QuadResult integrate_halfline(const HalfLineIntegrand& g, double alpha, const QuadratureSpec& spec);

/// int_0^1 g(x, 1-x) dx (tanh-sinh).
QuadResult integrate_unit(const UnitIntegrand& g, const QuadratureSpec& spec);

/// int_R g(x) dx, folded onto the half line.
QuadResult integrate_line(const HalfLineIntegrand& g, const QuadratureSpec& spec);

enum class ConeMode {
  Orthant,  ///< all of (R+)^n, tensorized half-line rules
  Ordered,  ///< Omega = {x1 > ... > xn > 0} via x_{k+1} = x_k u_k
};

/// Integral of g over (R+)^n or over Omega, n <= 3. Iterated one-dimensional
/// rules; only the outermost level runs in parallel.
QuadResult integrate_cone(const PointIntegrand& g, int n, ConeMode mode, const QuadratureSpec& spec);

struct MonteCarloSpec {
  std::uint64_t seed = 20240501;
  std::int64_t samples = 100000;
  /// Proposal is N(0, scale^2/(2 pi)) per coordinate; scale 1 matches exp(-pi |X|^2).
  double proposal_scale = 1.0;
  Exec exec = Exec::Parallel;
};

struct MonteCarloResult {
  Complex value;
  double std_error = 0.0;
  bool variance_warning = false;  ///< std_error / |value| > 0.2
  std::int64_t samples = 0;
};

/// Importance-sampled int_{R^dim} f(X) dX with a Gaussian proposal.
/// Samples are split into fixed chunks seeded from (seed, chunk index); the
/// result is independent of thread count.
MonteCarloResult integrate_mc_fullspace(const PointIntegrand& f, int dim, const MonteCarloSpec& spec);

}  // namespace pvs
