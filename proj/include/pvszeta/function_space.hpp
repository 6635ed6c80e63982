#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pvszeta/common.hpp"
#include "pvszeta/gauss_poly.hpp"
#include "pvszeta/quadrature.hpp"
#include "pvszeta/structure_tables.hpp"

namespace pvs {

/// Positive radii (x_1, ..., x_n). Points of the cone Omega are strictly decreasing.
struct PolarPoint {
  std::vector<double> x;

  PolarPoint() = default;
  explicit PolarPoint(std::vector<double> radii);

  std::size_t size() const { return x.size(); }
  bool in_cone() const;
};

/// prod |x_j|; the invariant on the polar slice for every kind.
double invariant_eval(const PolarPoint& point);

/// Full-space invariant: |det X| (row-major n x n), |(X,X)|/2, or |X|.
/// Polar-only kinds throw UnsupportedError.
double invariant_eval(std::span<const double> coords, const StructureConstants& c);

/// prod x_j^e prod_{i<j} |x_i^2 - x_j^2|^d.
double polar_weight(const PolarPoint& point, const StructureConstants& c);

/// The spherical vector h_s in polar coordinates.
struct SphericalVector {
  Complex s;
  StructureConstants constants;

  /// (s + m/n) / 2, the exponent of each (1+x_j^2)^{-1} factor.
  Complex half_exponent() const { return (s + constants.m_over_n()) / 2.0; }
};

/// prod (1 + x_j^2)^{-(s+m/n)/2}, principal branch.
Complex spherical_eval(const SphericalVector& h, const PolarPoint& point);
/// Logarithm of spherical_eval (sum of principal logs), safe for huge radii.
Complex spherical_log(const SphericalVector& h, std::span<const double> radii);

/// A compact-picture vector after the K cap L average: a function of the radii.
struct RadialProfileFunction {
  std::function<Complex(const PolarPoint&)> profile;
  double decay_exponent = 0.0;  ///< claimed sigma with |profile| <= C prod (1+x_j^2)^{-sigma/2}
  int n = 1;

  /// Samples rays out to radius 1e4 and throws ValidationError if the claimed
  /// decay is visibly violated.
  void validate_decay() const;
};

/// Fourier transform of h_s on R^m (rank one), evaluated at radius rho:
/// pi^{m/2} / Gamma(sigma/2) int_0^inf u^{(sigma-m)/2-1} e^{-u - pi^2 rho^2/u} du
/// with sigma = s + m. rho = 0 requires Re s > 0.
QuadResult spherical_fourier(const SphericalVector& h, double rho, const QuadratureSpec& spec);

}  // namespace pvs
