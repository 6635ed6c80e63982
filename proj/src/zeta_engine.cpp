#include "pvszeta/zeta_engine.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "pvszeta/special_functions.hpp"

namespace pvs {

namespace {

// Beyond this the Gaussian factor underflows; polynomial parts may overflow.
constexpr double kGaussCutoff = 745.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// int_{S^{m-1}} w^alpha dw = 2 prod Gamma((a_i+1)/2) / Gamma((|a|+m)/2); zero if some a_i is odd.
double sphere_moment(std::span<const int> alpha) {
  double log_num = 0.0;
  int total = 0;
  for (int a : alpha) {
    if (a % 2 != 0) return 0.0;
    log_num += std::lgamma((a + 1) / 2.0);
    total += a;
  }
  return 2.0 * std::exp(log_num - std::lgamma((total + static_cast<double>(alpha.size())) / 2.0));
}

Complex term_coefficient(const GaussPoly::Key& key, const GaussRational& v) {
  return v.to_complex() * std::pow(kPi, key.pi_pow);
}

void require_strip(Complex t, const StructureConstants& c) {
  const double lower = direct_lower_bound(c);
  if (!(t.real() > lower)) {
    throw RegionError("direct zeta needs Re t > -(e+1) = " + fmt(lower) + ", got Re t = " + fmt(t.real()));
  }
}

std::string strip_text(const StructureConstants& c) { return "Re t > " + fmt(direct_lower_bound(c)); }

// ---- radial reduction on R^m --------------------------------------------

ZetaResult zeta_euclidean(const GaussPoly& f, Complex t, int m, const QuadratureSpec& quad) {
  std::map<int, Complex> radial;  // degree -> coefficient after sphere averaging
  for (const auto& [key, v] : f.terms()) {
    const double moment = sphere_moment(key.alpha);
    if (moment == 0.0) continue;
    int deg = 0;
    for (int a : key.alpha) deg += a;
    radial[deg] += term_coefficient(key, v) * moment;
  }
  ZetaResult res;
  res.method = "polar-reduction";
  if (radial.empty()) {
    res.value = 0.0;
    return res;
  }
  const int kmin = radial.begin()->first;
  const Complex exponent = t + static_cast<double>(m - 1);
  const auto integrand = [&](double r) -> Complex {
    if (kPi * r * r > kGaussCutoff) return 0.0;
    Complex poly = 0.0;
    for (const auto& [deg, coef] : radial) poly += coef * std::pow(r, deg - kmin);
    return poly * std::exp((exponent + static_cast<double>(kmin)) * std::log(r) - kPi * r * r);
  };
  const QuadResult q = integrate_halfline(integrand, exponent.real() + kmin, quad);
  res.value = q.value;
  res.err_estimate = q.err_estimate;
  res.converged = q.converged;
  return res;
}

// ---- 2x2 matrices: average over SO(2) x SO(2) and det sign ----------------

// Homogeneous bivariate polynomial: coefficient of x1^i x2^j.
using Bivariate = std::map<std::pair<int, int>, Complex>;

Bivariate average_over_rotations(const GaussPoly& f) {
  const int deg = f.degree();
  const int nodes = deg + 2;
  Bivariate out;
  for (int ka = 0; ka < nodes; ++ka) {
    const double th = 2.0 * kPi * ka / nodes;
    for (int kb = 0; kb < nodes; ++kb) {
      const double ph = 2.0 * kPi * kb / nodes;
      const double ct = std::cos(th), st = std::sin(th), cp = std::cos(ph), sp = std::sin(ph);
      for (int eps : {1, -1}) {
        // X = R(th) diag(x1, eps x2) R(ph)^T, entries A x1 + B x2.
        const double lin_a[4] = {ct * cp, ct * sp, st * cp, st * sp};
        const double lin_b[4] = {eps * st * sp, -eps * st * cp, -eps * ct * sp, eps * ct * cp};
        for (const auto& [key, v] : f.terms()) {
          std::vector<double> poly{1.0};  // coefficients of x1^i x2^{deg-i}
          for (int e = 0; e < 4; ++e) {
            for (int r = 0; r < key.alpha[static_cast<std::size_t>(e)]; ++r) {
              std::vector<double> next(poly.size() + 1, 0.0);
              for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i] * lin_a[e];
                next[i] += poly[i] * lin_b[e];
              }
              poly = std::move(next);
            }
          }
          const int total = static_cast<int>(poly.size()) - 1;
          const Complex coef = term_coefficient(key, v);
          for (int i = 0; i <= total; ++i) {
            if (poly[static_cast<std::size_t>(i)] != 0.0) out[{i, total - i}] += coef * poly[static_cast<std::size_t>(i)];
          }
        }
      }
    }
  }
  const double norm = 1.0 / (2.0 * nodes * nodes);
  Bivariate cleaned;
  double scale = 0.0;
  for (auto& [k, v] : out) scale = std::max(scale, std::abs(v));
  for (auto& [k, v] : out) {
    // Entries that cancel exactly in the average are set to zero.
    if (std::abs(v) > 1e-13 * scale) cleaned[k] = v * norm;
  }
  return cleaned;
}

Complex eval_bivariate(const Bivariate& b, double x1, double x2) {
  Complex acc = 0.0;
  for (const auto& [k, v] : b) acc += v * (std::pow(x1, k.first) * std::pow(x2, k.second));
  return acc;
}

ZetaResult zeta_absdet2(const GaussPoly& f, Complex t, const QuadratureSpec& quad) {
  const Bivariate avg = average_over_rotations(f);
  ZetaResult res;
  res.method = "polar-reduction";
  if (avg.empty()) {
    res.value = 0.0;
    return res;
  }
  const double c = 4.0 * kPi * kPi;
  const auto integrand = [&](std::span<const double> x) -> Complex {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (kPi * r2 > kGaussCutoff || x[1] <= 0.0) return 0.0;
    const double gap = (x[0] - x[1]) * (x[0] + x[1]);
    return eval_bivariate(avg, x[0], x[1]) * gap * std::exp(t * (std::log(x[0]) + std::log(x[1])) - kPi * r2);
  };
  const QuadResult q = integrate_cone(integrand, 2, ConeMode::Ordered, quad);
  res.value = c * q.value;
  res.err_estimate = c * q.err_estimate;
  res.converged = q.converged;
  return res;
}

// ---- quadratic form on R^{p-1, q-1} ---------------------------------------

ZetaResult zeta_quadratic(const GaussPoly& f, Complex t, const StructureConstants& c, const QuadratureSpec& quad) {
  const int pp = c.p.value() - 1;
  const int qq = c.q.value() - 1;
  Bivariate radial;  // coefficient of a^i b^j, a = |u|, b = |v|
  for (const auto& [key, v] : f.terms()) {
    const std::span<const int> alpha(key.alpha);
    const double mu = sphere_moment(alpha.first(static_cast<std::size_t>(pp)));
    const double mv = sphere_moment(alpha.subspan(static_cast<std::size_t>(pp)));
    if (mu == 0.0 || mv == 0.0) continue;
    int du = 0, dv = 0;
    for (int i = 0; i < pp; ++i) du += key.alpha[static_cast<std::size_t>(i)];
    for (int i = pp; i < pp + qq; ++i) dv += key.alpha[static_cast<std::size_t>(i)];
    radial[{du, dv}] += term_coefficient(key, v) * mu * mv;
  }
  ZetaResult res;
  res.method = "polar-reduction";
  if (radial.empty()) {
    res.value = 0.0;
    return res;
  }
  QuadratureSpec inner = quad;
  inner.exec = Exec::Serial;
  std::atomic<bool> inner_ok{true};
  // Region a > b with b = a u, and the mirror b > a with a = b u.
  const auto half = [&](bool swap) {
    const auto outer = [&](double r) -> Complex {
      const QuadResult q = integrate_unit(
          [&](double u, double uc) -> Complex {
            const double r2 = r * r * (1.0 + u * u);
            if (kPi * r2 > kGaussCutoff || u <= 0.0) return 0.0;
            const double big = r, small = r * u;
            const double a = swap ? small : big;
            const double b = swap ? big : small;
            const double log_jac = std::log(r) + (pp - 1) * std::log(a) + (qq - 1) * std::log(b);
            // |a^2 - b^2| / 2 = r^2 (1-u)(1+u) / 2, with 1-u supplied accurately.
            const double log_inv = 2.0 * std::log(r) + std::log(uc) + std::log1p(u) - std::log(2.0);
            return eval_bivariate(radial, a, b) * std::exp(log_jac + t * log_inv - kPi * r2);
          },
          inner);
      if (!q.converged) inner_ok = false;
      return q.value;
    };
    return integrate_halfline(outer, pp + qq - 1 + 2.0 * t.real(), quad);
  };
  const QuadResult q1 = half(false);
  const QuadResult q2 = half(true);
  res.value = q1.value + q2.value;
  res.err_estimate = q1.err_estimate + q2.err_estimate;
  res.converged = q1.converged && q2.converged && inner_ok;
  return res;
}

ZetaResult zeta_monte_carlo(const GaussPoly& f, Complex t, const StructureConstants& c, const MonteCarloSpec& mc) {
  const MonteCarloResult r = integrate_mc_fullspace(
      [&](std::span<const double> x) -> Complex {
        const double inv = invariant_eval(x, c);
        if (inv == 0.0) return 0.0;
        return gp_eval(f, x) * std::exp(t * std::log(inv));
      },
      full_space_dim(c), mc);
  ZetaResult res;
  res.value = r.value;
  res.err_estimate = r.std_error;
  res.converged = !r.variance_warning;
  res.method = "monte-carlo";
  return res;
}

// ---- polar formula for spherical and profile data --------------------------

double log1p_sq(double x) { return x > 1e150 ? 2.0 * std::log(x) : std::log1p(x * x); }

// c int_Omega g(x) prod x_j^{t+e} prod (x_i^2 - x_j^2)^d dx with log g supplied.
QuadResult polar_integral(const std::function<Complex(std::span<const double>)>& log_g, Complex t,
                          const StructureConstants& c, const QuadratureSpec& quad) {
  const int n = c.n;
  const double d = c.d.value();
  const Complex power = t + static_cast<double>(c.e);
  const auto integrand = [&](std::span<const double> x) -> Complex {
    double log_gap = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x[static_cast<std::size_t>(i)] <= 0.0) return 0.0;
      for (int j = i + 1; j < n && d != 0.0; ++j) {
        const double xi = x[static_cast<std::size_t>(i)], xj = x[static_cast<std::size_t>(j)];
        const double gap = (xi - xj) * (xi + xj);
        if (gap <= 0.0) return 0.0;
        log_gap += std::log(gap);
      }
    }
    Complex log_val = log_g(x) + d * log_gap;
    for (int i = 0; i < n; ++i) log_val += power * std::log(x[static_cast<std::size_t>(i)]);
    // Far out the Gaussian factor is -inf and the polynomial factors +inf.
    if (std::isnan(log_val.real()) || log_val.real() < -kGaussCutoff - 50.0) return 0.0;
    return std::exp(log_val);
  };
  if (n == 1) {
    return integrate_halfline([&](double x) { return integrand(std::span<const double>(&x, 1)); }, power.real(),
                              quad);
  }
  return integrate_cone(integrand, n, ConeMode::Ordered, quad);
}

double polar_constant_for(const StructureConstants& c, const ZetaOptions& opt) {
  if (opt.polar_constant) return *opt.polar_constant;
  if (c.invariant_kind == InvariantKind::PolarOnly || c.invariant_kind == InvariantKind::Pfaffian) {
    throw ValidationError("polar-only case: the polar constant must be supplied");
  }
  return calibrate_polar_constant(c, opt.quad).value;
}

double gaussian_polar_constant_closed(const StructureConstants& c) {
  const double e = c.e;
  const double d = c.d.value();
  if (c.n == 1) return 2.0 * std::pow(kPi, (e + 1.0) / 2.0) / std::tgamma((e + 1.0) / 2.0);
  if (c.n == 2) {
    // int_Omega (x1 x2)^e (x1^2-x2^2)^d e^{-pi|x|^2} via polar angle psi in (0, pi/4).
    const double radial = std::tgamma(e + d + 1.0) / (2.0 * std::pow(kPi, e + d + 1.0));
    const double angular = std::pow(2.0, -e) * 0.25 * std::real(beta((e + 1.0) / 2.0, (d + 1.0) / 2.0));
    return 1.0 / (radial * angular);
  }
  throw UnsupportedError("closed polar constant only for n <= 2");
}

}  // namespace

std::string to_string(ZetaPath path) {
  switch (path) {
    case ZetaPath::Direct: return "direct";
    case ZetaPath::Continued: return "continued";
    case ZetaPath::ClosedForm: return "closed-form";
  }
  return "?";
}

double direct_lower_bound(const StructureConstants& c) { return -(c.e + 1.0); }

ZetaResult zeta_direct(const GaussPoly& f, Complex t, const StructureConstants& c, const ZetaOptions& opt) {
  const int dim = full_space_dim(c);
  if (f.dim() != dim) throw ValidationError("function dimension " + std::to_string(f.dim()) + " does not match " +
                                            std::to_string(dim));
  require_strip(t, c);
  ZetaResult res;
  const bool use_mc = opt.method == ZetaMethod::MonteCarlo ||
                      (opt.method == ZetaMethod::Auto && c.invariant_kind == InvariantKind::AbsDet && c.n == 3);
  if (use_mc) {
    res = zeta_monte_carlo(f, t, c, opt.mc);
  } else {
    switch (c.invariant_kind) {
      case InvariantKind::EuclideanNorm: res = zeta_euclidean(f, t, c.m(), opt.quad); break;
      case InvariantKind::AbsDet:
        if (c.n == 1) {
          res = zeta_euclidean(f, t, 1, opt.quad);
        } else if (c.n == 2) {
          res = zeta_absdet2(f, t, opt.quad);
        } else {
          throw UnsupportedError("abs-det n=3 is evaluated by Monte Carlo only");
        }
        break;
      case InvariantKind::QuadraticForm: res = zeta_quadratic(f, t, c, opt.quad); break;
      default: throw UnsupportedError("no full-space zeta for kind " + to_string(c.invariant_kind));
    }
  }
  res.path = ZetaPath::Direct;
  res.region = strip_text(c);
  return res;
}

ZetaResult zeta_direct(const SphericalVector& h, Complex t, const ZetaOptions& opt) {
  const StructureConstants& c = h.constants;
  const double lower = direct_lower_bound(c);
  const double upper = h.s.real() - c.d.value() * (c.n - 1);
  if (!(t.real() > lower && t.real() < upper)) {
    throw RegionError("spherical zeta needs " + fmt(lower) + " < Re t < Re s - d(n-1) = " + fmt(upper) +
                      ", got Re t = " + fmt(t.real()));
  }
  const double pc = polar_constant_for(c, opt);
  const Complex w = h.half_exponent();
  const QuadResult q = polar_integral(
      [&](std::span<const double> x) {
        double acc = 0.0;
        for (double r : x) acc += log1p_sq(r);
        return -w * acc;
      },
      t, c, opt.quad);
  ZetaResult res;
  res.value = pc * q.value;
  res.err_estimate = pc * q.err_estimate;
  res.converged = q.converged;
  res.method = "polar-formula";
  res.region = fmt(lower) + " < Re t < " + fmt(upper);
  return res;
}

ZetaResult zeta_direct(const RadialProfileFunction& f, Complex t, const StructureConstants& c,
                       const ZetaOptions& opt) {
  if (f.n != c.n) throw ValidationError("profile rank does not match the constants");
  f.validate_decay();
  const double lower = direct_lower_bound(c);
  // The profile's decay exponent sigma replaces s + m/n.
  const double upper = f.decay_exponent - c.m_over_n() - c.d.value() * (c.n - 1);
  if (!(t.real() > lower && t.real() < upper)) {
    throw RegionError("profile zeta needs " + fmt(lower) + " < Re t < " + fmt(upper) + ", got Re t = " +
                      fmt(t.real()));
  }
  const double pc = polar_constant_for(c, opt);
  const QuadResult q = polar_integral(
      [&](std::span<const double> x) {
        const Complex v = f.profile(PolarPoint(std::vector<double>(x.begin(), x.end())));
        return v == Complex(0.0) ? Complex(-1e300, 0.0) : std::log(v);
      },
      t, c, opt.quad);
  ZetaResult res;
  res.value = pc * q.value;
  res.err_estimate = pc * q.err_estimate;
  res.converged = q.converged;
  res.method = "polar-formula";
  res.region = fmt(lower) + " < Re t < " + fmt(upper);
  return res;
}

int continuation_shifts(Complex t, const StructureConstants& c, double margin) {
  const double target = direct_lower_bound(c) + margin;
  int k = 0;
  while (t.real() + 2.0 * k <= target) ++k;
  return k;
}

ZetaResult zeta_continued(const GaussPoly& f, Complex t, const StructureConstants& c, const ZetaOptions& opt,
                          int min_shifts) {
  bernstein_b(c);  // rejects kinds without a b-function
  const int k = std::max(min_shifts, continuation_shifts(t, c, opt.strip_margin));
  if (k == 0) {
    ZetaResult r = zeta_direct(f, t, c, opt);
    return r;
  }
  const Complex shifted = t + 2.0 * k;
  for (double root : bernstein_bk_roots(c, k)) {
    if (std::abs(shifted - root) < 1e-12) {
      throw PoleError("b_" + std::to_string(k) + "(t+2k) vanishes: factor root " + fmt(root) + " at t = " +
                          format_complex(t),
                      t);
    }
  }
  const Complex bk = bernstein_bk(c.invariant_kind, shifted, k, c);
  const GaussPoly g = gp_apply_invariant_operator(f, c, k);
  ZetaResult inner = zeta_direct(g, shifted, c, opt);
  ZetaResult res = inner;
  res.value = inner.value / bk;
  res.err_estimate = inner.err_estimate / std::abs(bk);
  res.path = ZetaPath::Continued;
  res.k_shifts = k;
  res.region = "Re t + " + std::to_string(2 * k) + " > " + fmt(direct_lower_bound(c));
  return res;
}

ZetaResult zeta_auto(const GaussPoly& f, Complex t, const StructureConstants& c, const ZetaOptions& opt) {
  if (t.real() > direct_lower_bound(c)) {
    ZetaResult r = zeta_direct(f, t, c, opt);
    if (r.converged) return r;
    return zeta_continued(f, t, c, opt, 1);
  }
  return zeta_continued(f, t, c, opt);
}

CalibrationResult calibrate_polar_constant(const StructureConstants& c, const QuadratureSpec& quad,
                                           const MonteCarloSpec& mc) {
  if (c.invariant_kind == InvariantKind::PolarOnly || c.invariant_kind == InvariantKind::Pfaffian) {
    throw UnsupportedError("polar constant for kind " + to_string(c.invariant_kind) + " must be supplied externally");
  }
  if (c.n > 3) throw UnsupportedError("calibration supports n <= 3");
  // Unit Gaussian mass through the polar formula with t = 0.
  const QuadResult q = polar_integral(
      [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return Complex(-kPi * r2, 0.0);
      },
      0.0, c, quad);
  CalibrationResult out;
  out.value = 1.0 / q.value.real();
  out.err_estimate = out.value * q.err_estimate / std::abs(q.value);
  out.method = "quadrature";
  if (c.n <= 2) {
    out.cross_check = gaussian_polar_constant_closed(c);
    out.cross_check_err = 0.0;
  }
  if (c.invariant_kind == InvariantKind::AbsDet && c.n >= 2) {
    // Monte Carlo: the same Gaussian mass measured on the matrix space relative
    // to the polar integral of |det|^t at t = 1.
    const GaussPoly g = GaussPoly::gaussian(c.n * c.n);
    const MonteCarloResult r = integrate_mc_fullspace(
        [&](std::span<const double> x) -> Complex { return gp_eval(g, x) * invariant_eval(x, c); }, c.n * c.n, mc);
    const QuadResult q1 = polar_integral(
        [&](std::span<const double> x) {
          double r2 = 0.0;
          for (double v : x) r2 += v * v;
          return Complex(-kPi * r2, 0.0);
        },
        1.0, c, quad);
    out.cross_check = r.value.real() / q1.value.real();
    out.cross_check_err = r.std_error / q1.value.real();
  }
  return out;
}

Complex closed_form_oracle(OracleFunction fn, Complex s, Complex t, const StructureConstants& c,
                           double polar_constant) {
  const GammaFactorSpec spec = GammaFactorSpec::from(c);
  const double mn = c.m_over_n();
  if (fn == OracleFunction::Gaussian) {
    switch (c.invariant_kind) {
      case InvariantKind::EuclideanNorm:
      case InvariantKind::AbsDet:
      case InvariantKind::QuadraticForm:
        return std::pow(kPi, -static_cast<double>(c.n) * t / 2.0) * gamma_n(t + mn, spec) / gamma_n(mn, spec);
      default: throw UnsupportedError("no Gaussian oracle for kind " + to_string(c.invariant_kind));
    }
  }
  const Complex sigma = s + mn;
  if (c.n == 1) {
    return polar_constant * 0.5 * beta((t + (c.e + 1.0)) / 2.0, (sigma - t - (c.e + 1.0)) / 2.0);
  }
  if (!c.d.is_integer() || c.d.twice % 4 != 0) {
    throw UnsupportedError("spherical oracle for n >= 2 needs even integer d");
  }
  // Expand prod_{i<j} (X_i - X_j)^d in X = x^2; the integrand is symmetric,
  // so int over Omega is 1/n! of the orthant integral.
  const int n = c.n;
  const int d = c.d.twice / 2;
  std::map<std::vector<int>, double> poly{{std::vector<int>(static_cast<std::size_t>(n), 0), 1.0}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int r = 0; r < d; ++r) {
        std::map<std::vector<int>, double> next;
        for (const auto& [mono, coef] : poly) {
          auto a = mono;
          ++a[static_cast<std::size_t>(i)];
          next[a] += coef;
          auto b = mono;
          ++b[static_cast<std::size_t>(j)];
          next[b] -= coef;
        }
        poly = std::move(next);
      }
    }
  }
  Complex total = 0.0;
  for (const auto& [mono, coef] : poly) {
    if (coef == 0.0) continue;
    Complex prod = coef;
    for (int k : mono) prod *= half_line_beta(t + static_cast<double>(c.e) + 2.0 * k, sigma / 2.0);
    total += prod;
  }
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  return polar_constant * total / factorial;
}

}  // namespace pvs
