#include "pvszeta/representation_ops.hpp"

#include <cmath>
#include <limits>
#include <atomic>
#include <sstream>

#include "pvszeta/special_functions.hpp"

namespace pvs {

namespace {

constexpr double kFourierCutoff = 200.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void add_merged(std::vector<LineTerm>& terms, const LineTerm& t) {
  if (t.coeff == Complex(0.0)) return;
  for (LineTerm& e : terms) {
    if (std::abs(e.alpha - t.alpha) < 1e-12 && std::abs(e.beta - t.beta) < 1e-12) {
      e.coeff += t.coeff;
      return;
    }
  }
  terms.push_back(t);
}

void accumulate(QuadResult& acc, const QuadResult& part, Complex scale = 1.0) {
  acc.value += scale * part.value;
  acc.err_estimate += std::abs(scale) * part.err_estimate;
  acc.converged = acc.converged && part.converged;
  acc.evaluations += part.evaluations;
  acc.levels = std::max(acc.levels, part.levels);
}

// int_R g(y, |y|) dy with break points at 0 and b; `alpha` is the exponent at y = 0.
QuadResult integrate_split(const std::function<Complex(double, double)>& g, double b, double alpha,
                           const QuadratureSpec& quad) {
  QuadResult acc;
  acc.converged = true;
  if (std::abs(b) < 1e-12) {
    accumulate(acc, integrate_halfline([&](double z) { return g(z, z); }, alpha, quad));
    accumulate(acc, integrate_halfline([&](double z) { return g(-z, z); }, alpha, quad));
    return acc;
  }
  const double sgn = b > 0.0 ? 1.0 : -1.0;
  const double w = std::abs(b);
  // Away from b, on the side of 0.
  accumulate(acc, integrate_halfline([&](double z) { return g(-sgn * z, z); }, alpha, quad));
  // Between 0 and b.
  accumulate(acc,
             integrate_unit(
                 [&](double u, double uc) {
                   const double y = u < 0.5 ? w * u : w - w * uc;
                   return g(sgn * y, y);
                 },
                 quad),
             w);
  // Beyond b.
  accumulate(acc, integrate_halfline([&](double z) { return g(sgn * (w + z), w + z); }, 0.0, quad));
  return acc;
}

// f, f', ..., f^(order) as plain functions.
std::vector<std::function<Complex(double)>> derivative_evaluators(const LineInput& F, int order) {
  std::vector<std::function<Complex(double)>> out;
  if (const auto* k = std::get_if<KTypeVector>(&F)) {
    LineFunction d = k->line();
    for (int j = 0; j <= order; ++j) {
      out.push_back([d](double x) { return d.eval(x); });
      d = d.derivative();
    }
    return out;
  }
  const GaussPoly& g = std::get<GaussPoly>(F);
  if (g.dim() != 1) throw UnsupportedError("translation integrals are implemented on R (dimension 1)");
  GaussPoly d = g;
  for (int j = 0; j <= order; ++j) {
    out.push_back([d](double x) { return gp_eval(d, std::span<const double>(&x, 1)); });
    d = gp_differentiate(d, 0);
  }
  return out;
}

// int_1^inf f(sgn y + X) y^u dy, split where f is concentrated (sgn y + X = 0).
QuadResult far_side(const std::function<Complex(double)>& f, double X, Complex u, double sgn, const QuadratureSpec& quad) {
  // g(y, x) with x = sgn y + X passed separately so that it stays exact near y0.
  const auto g = [&](double y, double x) { return f(x) * std::exp(u * std::log(y)); };
  QuadResult acc;
  acc.converged = true;
  const double y0 = -sgn * X;
  if (y0 > 4.0) {
    // [1, y0/2] in log scale, [y0/2, y0] linearly, then past y0.
    const double L = std::log(y0 / 2.0);
    accumulate(acc, integrate_unit(
                        [&](double v, double) {
                          const double y = std::exp(L * v);
                          return g(y, sgn * y + X) * y;
                        },
                        quad),
               L);
    const double w = y0 / 2.0;
    accumulate(acc, integrate_unit(
                        [&](double v, double vc) {
                          return v < 0.5 ? g(w + w * v, sgn * (w + w * v) + X) : g(y0 - w * vc, -sgn * w * vc);
                        },
                        quad),
               w);
    accumulate(acc, integrate_halfline([&](double z) { return g(y0 + z, sgn * z); }, 0.0, quad));
  } else {
    accumulate(acc, integrate_halfline([&](double z) { return g(1.0 + z, sgn * (1.0 + z) + X); }, 0.0, quad));
  }
  return acc;
}

double growth_of(const LineInput& F) {
  if (const auto* k = std::get_if<KTypeVector>(&F)) return k->line().growth_exponent();
  return -std::numeric_limits<double>::infinity();
}

QuadratureSpec serial(const QuadratureSpec& q) {
  QuadratureSpec out = q;
  out.exec = Exec::Serial;
  return out;
}

}  // namespace

LineFunction LineFunction::derivative() const {
  std::vector<LineTerm> out;
  const Complex i(0.0, 1.0);
  for (const LineTerm& t : terms_) {
    add_merged(out, {t.coeff * i * t.alpha, t.alpha - 1.0, t.beta});
    add_merged(out, {-t.coeff * i * t.beta, t.alpha, t.beta - 1.0});
  }
  return LineFunction(std::move(out));
}

LineFunction LineFunction::derivative(int order) const {
  if (order < 0) throw ValidationError("derivative order must be nonnegative");
  LineFunction f = *this;
  for (int r = 0; r < order; ++r) f = f.derivative();
  return f;
}

Complex LineFunction::eval(double x) const {
  const Complex lp = std::log(Complex(1.0, x));
  const Complex lm = std::log(Complex(1.0, -x));
  Complex acc = 0.0;
  for (const LineTerm& t : terms_) acc += t.coeff * std::exp(t.alpha * lp + t.beta * lm);
  return acc;
}

double LineFunction::growth_exponent() const {
  double g = -std::numeric_limits<double>::infinity();
  for (const LineTerm& t : terms_) {
    if (t.coeff != Complex(0.0)) g = std::max(g, (t.alpha + t.beta).real());
  }
  return g;
}

double LineFunction::majorant_constant(const LineTerm& term) {
  return std::abs(term.coeff) * std::exp(kPi / 2.0 * (std::abs(term.alpha.imag()) + std::abs(term.beta.imag())));
}

LineFunction KTypeVector::line() const {
  const Complex half = (s + 1.0) / 2.0;
  std::vector<LineTerm> terms;
  for (const auto& [k, c] : coeffs) add_merged(terms, {c, static_cast<double>(k) - half, -static_cast<double>(k) - half});
  return LineFunction(std::move(terms));
}

QuadResult line_zeta_direct(const std::function<Complex(double)>& f, double X, Complex u, double center,
                            const QuadratureSpec& quad) {
  if (!(u.real() > -1.0)) throw RegionError("|x|^u is not integrable at 0 for Re u = " + fmt(u.real()));
  return integrate_split(
      [&](double y, double a) -> Complex {
        if (a == 0.0) return 0.0;
        return f(y + X) * std::exp(u * std::log(a));
      },
      center - X, u.real(), quad);
}

ZetaResult translated_zeta(const LineInput& F, double X, Complex u, const QuadratureSpec& quad) {
  const double g = growth_of(F);
  if (!(u.real() + g < -1.0)) {
    throw RegionError("translated zeta needs Re u < " + fmt(-1.0 - g) + ", got Re u = " + fmt(u.real()));
  }
  ZetaResult res;
  res.method = "line-quadrature";
  res.region = fmt(-1.0) + " < Re u < " + fmt(-1.0 - g);
  int k = 0;
  while (u.real() + 2.0 * k <= -0.75) ++k;
  // |y|^u near 0 is continued by removing the Taylor polynomial of degree 2k-1
  // of f(y + X) on |y| < 1; the even moments give f^(j)(X)/j! 2/(u+j+1).
  for (int j = 0; j < 2 * k; j += 2) {
    if (std::abs(u + 1.0 + static_cast<double>(j)) < 1e-12) {
      throw PoleError("|x|^u has a pole at u = " + format_complex(u), u);
    }
  }
  constexpr int kExtra = 6;
  const int top = 2 * k + kExtra;
  const auto ders = derivative_evaluators(F, top);
  std::vector<Complex> taylor(static_cast<std::size_t>(top));
  double fact = 1.0;
  for (int j = 0; j < top; ++j) {
    if (j > 0) fact *= j;
    taylor[static_cast<std::size_t>(j)] = ders[static_cast<std::size_t>(j)](X) / fact;
  }
  // (f(y + X) - T(y)) |y|^u; near 0 the series is divided by y^{2k} first so
  // that |y|^{u+2k} stays finite.
  const auto near = [&](double y) -> Complex {
    const double ay = std::abs(y);
    Complex acc = 0.0;
    if (ay < 1e-3) {
      double p = 1.0;
      for (int j = 2 * k; j < top; ++j, p *= y) acc += taylor[static_cast<std::size_t>(j)] * p;
      return acc * std::exp((u + 2.0 * k) * std::log(ay));
    }
    double p = 1.0;
    for (int j = 0; j < 2 * k; ++j, p *= y) acc += taylor[static_cast<std::size_t>(j)] * p;
    return (ders[0](y + X) - acc) * std::exp(u * std::log(ay));
  };
  QuadResult q;
  q.converged = true;
  for (double sgn : {1.0, -1.0}) {
    accumulate(q, integrate_unit(
                      [&](double y, double) -> Complex {
                        if (y <= 0.0) return 0.0;
                        return near(sgn * y);
                      },
                      quad));
    accumulate(q, far_side(ders[0], X, u, sgn, quad));
  }
  for (int j = 0; j < 2 * k; j += 2) q.value += taylor[static_cast<std::size_t>(j)] * 2.0 / (u + 1.0 + static_cast<double>(j));
  res.value = q.value;
  res.err_estimate = q.err_estimate;
  // Pieces that nearly vanish cannot meet a relative tolerance on their own.
  res.converged = q.converged || q.err_estimate <= 10.0 * quad.target_rel_tol * std::abs(q.value);
  res.path = k == 0 ? ZetaPath::Direct : ZetaPath::Continued;
  res.k_shifts = k;
  return res;
}

ZetaResult intertwine_A(const KTypeVector& F, double X, const QuadratureSpec& quad) {
  return translated_zeta(F, X, F.s - 1.0, quad);
}

ZetaResult intertwine_A(const GaussPoly& F, Complex s, double X, const QuadratureSpec& quad) {
  return translated_zeta(F, X, s - 1.0, quad);
}

HermResult hermitian_form(const KTypeVector& F, const KTypeVector& G, const HermitianFormSpec& spec) {
  const Complex s = spec.s, t = spec.t;
  if (!(t.real() < s.real() + 1.0)) {
    throw RegionError("hermitian form needs Re t < Re s + 1, got Re t = " + fmt(t.real()));
  }
  const LineFunction f = F.at(s).line();
  const KTypeVector g = G.at(std::conj(s));
  const Complex u = std::conj(t) - 1.0;
  const QuadratureSpec inner = serial(spec.quad);
  std::atomic<bool> inner_ok{true};
  const QuadResult outer = integrate_line(
      [&](double X) {
        const ZetaResult a = translated_zeta(g, X, u, inner);
        if (!a.converged) inner_ok = false;
        return f.eval(X) * std::conj(a.value);
      },
      spec.quad);
  // int |F(X)| err(X) dX, the inner error carried through the outer rule.
  const QuadResult carried = integrate_line(
      [&](double X) { return Complex(std::abs(f.eval(X)) * translated_zeta(g, X, u, inner).err_estimate); }, spec.quad);
  HermResult res;
  res.prefactor = std::pow(kPi, (t + 4.0) / 2.0) * reciprocal_gamma((t + 4.0) / 2.0);
  res.value = res.prefactor * outer.value;
  const double carried_err = carried.value.real() + carried.err_estimate;
  res.err_estimate = std::abs(res.prefactor) * (outer.err_estimate + carried_err);
  res.converged = outer.converged && (inner_ok || carried_err <= 10.0 * spec.quad.target_rel_tol * std::abs(outer.value));
  return res;
}

QuadResult l2_weighted_inner(const SphericalVector& F, const SphericalVector& G, Complex t, const QuadratureSpec& quad) {
  const StructureConstants& c = F.constants;
  if (c.n != 1 || G.constants.n != 1) throw UnsupportedError("weighted L2 pairing is implemented for rank one");
  const int m = c.m();
  if (G.constants.m() != m) throw ValidationError("pairing needs vectors on the same space");
  if (!(t.real() < m)) throw RegionError("weight |Y|^{-t} needs Re t < " + std::to_string(m));
  const double sphere = 2.0 * std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0);
  const QuadratureSpec inner = serial(quad);
  const Complex power = static_cast<double>(m - 1) - t;
  QuadResult r = integrate_halfline(
      [&](double rho) -> Complex {
        if (rho <= 0.0 || rho > kFourierCutoff) return 0.0;
        const Complex a = spherical_fourier(F, rho, inner).value;
        const Complex b = spherical_fourier(G, rho, inner).value;
        return a * std::conj(b) * std::exp(power * std::log(rho));
      },
      power.real(), quad);
  r.value *= sphere;
  r.err_estimate *= sphere;
  return r;
}

QuadResult l2_weighted_inner(const GaussPoly& F, const GaussPoly& G, Complex t, const QuadratureSpec& quad) {
  if (F.dim() != 1 || G.dim() != 1) throw UnsupportedError("Gaussian pairing is implemented on R");
  if (!(t.real() < 1.0)) throw RegionError("weight |Y|^{-t} needs Re t < 1");
  const GaussPoly fh = gp_fourier(F);
  const GaussPoly gh = gp_fourier(G);
  QuadResult acc;
  acc.converged = true;
  for (double sgn : {1.0, -1.0}) {
    accumulate(acc, integrate_halfline(
                        [&](double y) -> Complex {
                          if (y <= 0.0) return 0.0;
                          const double x = sgn * y;
                          const std::span<const double> pt(&x, 1);
                          return gp_eval(fh, pt) * std::conj(gp_eval(gh, pt)) * std::exp(-t * std::log(y));
                        },
                        -t.real(), quad));
  }
  return acc;
}

Complex herm_identity_constant(Complex t) {
  const Complex b2 = (t + 3.0) * (t + 2.0) * (t + 1.0) * t;
  return std::pow(kPi, (5.0 - t) / 2.0) * 16.0 * reciprocal_gamma((-t - 3.0) / 2.0) / b2;
}

HermIdentity herm_identity(Complex s, Complex t, const QuadratureSpec& quad) {
  if (!(t.real() > 0.0 && t.real() < 1.0)) throw RegionError("identity check needs 0 < Re t < 1");
  if (!(s.real() > 0.0)) throw RegionError("identity check needs Re s > 0");
  StructureConstants tate;
  const KTypeVector h = KTypeVector::spherical(s);
  const HermResult lhs = hermitian_form(h, h, {s, t, quad});
  const QuadResult pair = l2_weighted_inner(SphericalVector{s, tate}, SphericalVector{std::conj(s), tate}, t, quad);
  const Complex c = herm_identity_constant(t);
  HermIdentity out;
  out.lhs = lhs.value;
  out.rhs = c * pair.value;
  out.ratio = out.lhs / out.rhs;
  out.rel_err = std::abs(out.lhs - out.rhs) / std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-300});
  out.lhs_err = lhs.err_estimate;
  out.rhs_err = std::abs(c) * pair.err_estimate;
  return out;
}

std::vector<PositivityPoint> positivity_scan(const std::vector<double>& s_values, const QuadratureSpec& quad) {
  std::vector<PositivityPoint> out;
  for (double s : s_values) {
    const HermResult r = hermitian_form(KTypeVector::spherical(s), KTypeVector::spherical(s), {s, s, quad});
    PositivityPoint p;
    p.s = s;
    p.value = r.value;
    p.err_estimate = r.err_estimate;
    p.positive = r.converged && r.value.real() - 3.0 * r.err_estimate > 0.0 &&
                 std::abs(r.value.imag()) <= 1e-8 * std::abs(r.value.real()) + 3.0 * r.err_estimate;
    out.push_back(p);
  }
  return out;
}

std::vector<double> fourier_decay_orders(const SphericalVector& h, const QuadratureSpec& quad) {
  std::vector<double> out;
  for (double r : {2.0, 4.0, 8.0, 16.0}) {
    const double a = std::abs(spherical_fourier(h, r, quad).value);
    const double b = std::abs(spherical_fourier(h, 2.0 * r, quad).value);
    out.push_back(-std::log(b / a) / std::log(2.0));
  }
  return out;
}

NuResult nu_seminorm(const KTypeVector& F, int M, int N, const NuGrid& grid) {
  if (M < 0 || N < 0) throw ValidationError("nu(M,N) needs M, N >= 0");
  std::vector<LineFunction> ders{F.line()};
  for (int j = 1; j <= N; ++j) ders.push_back(ders.back().derivative());
  NuResult res;
  const double R = grid.radius;
  for (int i = 0; i < grid.samples; ++i) {
    const double x = -R + 2.0 * R * i / (grid.samples - 1);
    double acc = 0.0;
    for (const LineFunction& d : ders) acc += std::abs(d.eval(x));
    res.grid_max = std::max(res.grid_max, std::pow(1.0 + x * x, M) * acc);
  }
  for (const LineFunction& d : ders) {
    for (const LineTerm& t : d.terms()) {
      if (std::abs(t.coeff) < 1e-300) continue;
      const double e = M + (t.alpha + t.beta).real() / 2.0;
      if (e > 1e-12) res.divergent = true;
      // Each majorant is nonincreasing for |x| >= R when e <= 0.
      res.tail_bound += LineFunction::majorant_constant(t) * std::pow(1.0 + R * R, e);
    }
  }
  if (res.divergent) res.tail_bound = std::numeric_limits<double>::infinity();
  return res;
}

NuResult nu_seminorm(const SphericalVector& h, int M, int N, const NuGrid& grid) {
  if (h.constants.n != 1) throw UnsupportedError("nu seminorm is implemented for rank one");
  if (h.constants.m() == 1) return nu_seminorm(KTypeVector::spherical(h.s), M, N, grid);
  if (N != 0) throw UnsupportedError("derivatives of spherical vectors are implemented on R only");
  if (M < 0) throw ValidationError("nu(M,N) needs M >= 0");
  const double e = M - h.half_exponent().real();
  NuResult res;
  for (int i = 0; i < grid.samples; ++i) {
    const double r = grid.radius * i / (grid.samples - 1);
    res.grid_max = std::max(res.grid_max, std::pow(1.0 + r * r, e));
  }
  res.divergent = e > 1e-12;
  res.tail_bound = res.divergent ? std::numeric_limits<double>::infinity() : 0.0;
  return res;
}

NuResult nu_seminorm(const GaussPoly& F, int M, int N, const NuGrid& grid) {
  if (M < 0 || N < 0) throw ValidationError("nu(M,N) needs M, N >= 0");
  const int m = F.dim();
  std::vector<GaussPoly> ders{F};
  std::vector<GaussPoly> frontier{F};
  for (int order = 1; order <= N; ++order) {
    std::vector<GaussPoly> next;
    for (const GaussPoly& g : frontier) {
      for (int j = 0; j < m; ++j) next.push_back(gp_differentiate(g, j));
    }
    ders.insert(ders.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  // Rays along the axes and the main diagonal, both directions.
  std::vector<std::vector<double>> dirs;
  for (int j = 0; j < m; ++j) {
    std::vector<double> e(static_cast<std::size_t>(m), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    dirs.push_back(e);
  }
  if (m > 1) dirs.emplace_back(static_cast<std::size_t>(m), 1.0 / std::sqrt(static_cast<double>(m)));
  NuResult res;
  const double R = grid.radius;
  std::vector<double> pt(static_cast<std::size_t>(m));
  for (const auto& dir : dirs) {
    for (double sgn : {1.0, -1.0}) {
      for (int i = 0; i < grid.samples; ++i) {
        const double r = R * i / (grid.samples - 1);
        for (int j = 0; j < m; ++j) pt[static_cast<std::size_t>(j)] = sgn * r * dir[static_cast<std::size_t>(j)];
        double acc = 0.0;
        for (const GaussPoly& d : ders) acc += std::abs(gp_eval(d, pt));
        res.grid_max = std::max(res.grid_max, std::pow(1.0 + r * r, M) * acc);
      }
    }
  }
  for (const GaussPoly& d : ders) {
    for (const auto& [key, v] : d.terms()) {
      int deg = 0;
      for (int a : key.alpha) deg += a;
      const double coef = std::abs(v.to_complex()) * std::pow(kPi, key.pi_pow);
      res.tail_bound += coef * std::exp(deg * std::log(R) + M * std::log1p(R * R) - kPi * R * R);
    }
  }
  return res;
}

}  // namespace pvs
