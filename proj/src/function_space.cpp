#include "pvszeta/function_space.hpp"

#include <cmath>

#include "pvszeta/special_functions.hpp"

namespace pvs {

PolarPoint::PolarPoint(std::vector<double> radii) : x(std::move(radii)) {
  for (double v : x) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("polar radii must be finite and nonnegative");
  }
}

bool PolarPoint::in_cone() const {
  if (x.empty() || x.back() <= 0.0) return false;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i - 1] > x[i])) return false;
  }
  return true;
}

double invariant_eval(const PolarPoint& point) {
  double v = 1.0;
  for (double r : point.x) v *= std::abs(r);
  return v;
}

double invariant_eval(std::span<const double> coords, const StructureConstants& c) {
  const auto at = [&](int i) { return coords[static_cast<std::size_t>(i)]; };
  switch (c.invariant_kind) {
    case InvariantKind::EuclideanNorm: {
      if (static_cast<int>(coords.size()) != c.m()) throw ValidationError("expected a vector in R^m");
      double r2 = 0.0;
      for (double v : coords) r2 += v * v;
      return std::sqrt(r2);
    }
    case InvariantKind::AbsDet: {
      const int n = c.n;
      if (static_cast<int>(coords.size()) != n * n) throw ValidationError("expected an n x n matrix");
      if (n == 1) return std::abs(at(0));
      if (n == 2) return std::abs(at(0) * at(3) - at(1) * at(2));
      if (n == 3) {
        return std::abs(at(0) * (at(4) * at(8) - at(5) * at(7)) - at(1) * (at(3) * at(8) - at(5) * at(6)) +
                        at(2) * (at(3) * at(7) - at(4) * at(6)));
      }
      throw UnsupportedError("abs-det supports n <= 3");
    }
    case InvariantKind::QuadraticForm: {
      if (static_cast<int>(coords.size()) != c.m()) throw ValidationError("expected a vector in R^{p+q-2}");
      const int positive = c.p.value() - 1;
      double q = 0.0;
      for (int j = 0; j < c.m(); ++j) q += (j < positive ? 1.0 : -1.0) * at(j) * at(j);
      return std::abs(q) / 2.0;
    }
    default:
      throw UnsupportedError("no full-space invariant for kind " + to_string(c.invariant_kind));
  }
}

double polar_weight(const PolarPoint& point, const StructureConstants& c) {
  const auto& x = point.x;
  double w = 1.0;
  for (double r : x) w *= std::pow(r, c.e);
  const double d = c.d.value();
  if (d == 0.0) return w;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double diff = std::abs((x[i] - x[j]) * (x[i] + x[j]));
      w *= std::pow(diff, d);
    }
  }
  return w;
}

Complex spherical_log(const SphericalVector& h, std::span<const double> radii) {
  double acc = 0.0;
  for (double r : radii) {
    // log(1 + r^2) without overflow for very large r.
    acc += r > 1e150 ? 2.0 * std::log(r) : std::log1p(r * r);
  }
  return -h.half_exponent() * acc;
}

Complex spherical_eval(const SphericalVector& h, const PolarPoint& point) {
  return std::exp(spherical_log(h, point.x));
}

void RadialProfileFunction::validate_decay() const {
  if (!profile) throw ValidationError("radial profile is empty");
  if (n < 1) throw ValidationError("radial profile rank must be positive");
  // Along each ray the scaled magnitude |f| prod (1+x^2)^{sigma/2} must stay
  // within a fixed factor of its value on the unit scale.
  const std::vector<std::vector<double>> directions = {
      std::vector<double>(static_cast<std::size_t>(n), 1.0),
      [&] {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = 1.0 / (j + 1.0);
        return v;
      }(),
  };
  for (const auto& dir : directions) {
    double reference = 0.0;
    for (double lambda : {0.5, 1.0, 2.0, 10.0, 100.0, 1e3, 1e4}) {
      std::vector<double> x(dir.size());
      double log_weight = 0.0;
      for (std::size_t j = 0; j < dir.size(); ++j) {
        x[j] = lambda * dir[j] * (1.0 + 1e-3 * static_cast<double>(j));
        log_weight += 0.5 * decay_exponent * std::log1p(x[j] * x[j]);
      }
      const double mag = std::abs(profile(PolarPoint(x)));
      if (!std::isfinite(mag)) throw ValidationError("radial profile is not finite at a sample point");
      const double scaled = mag * std::exp(log_weight);
      if (lambda <= 2.0) {
        reference = std::max(reference, scaled);
      } else if (scaled > 1e3 * std::max(reference, 1e-300)) {
        throw ValidationError("radial profile decays slower than the claimed exponent " +
                              std::to_string(decay_exponent));
      }
    }
  }
}

QuadResult spherical_fourier(const SphericalVector& h, double rho, const QuadratureSpec& spec) {
  if (h.constants.n != 1) throw UnsupportedError("spherical Fourier transform is implemented for rank one");
  if (rho < 0.0) throw ValidationError("radius must be nonnegative");
  const double m = h.constants.m();
  const Complex a = h.s / 2.0;  // (sigma - m)/2 with sigma = s + m
  const double c = kPi * kPi * rho * rho;
  if (c == 0.0 && !(a.real() > 0.0)) throw RegionError("transform at the origin needs Re s > 0");
  const Complex prefactor = std::pow(kPi, m / 2.0) * reciprocal_gamma((h.s + m) / 2.0);
  QuadResult r = integrate_halfline(
      [&](double u) {
        if (u == 0.0) return Complex(0.0);
        return std::exp((a - 1.0) * std::log(u) - u - c / u);
      },
      c > 0.0 ? 0.0 : a.real() - 1.0, spec);
  r.value *= prefactor;
  r.err_estimate *= std::abs(prefactor);
  return r;
}

}  // namespace pvs
