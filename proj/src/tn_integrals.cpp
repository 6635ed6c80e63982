#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "pvszeta/sl2_operators.hpp"
#include "pvszeta/special_functions.hpp"
#include "pvszeta/zeta_engine.hpp"

namespace pvs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool odd_d(const StructureConstants& c) { return c.d.is_integer() && c.d.twice % 4 == 2; }

bool in_p(const std::vector<int>& p, int j) { return std::find(p.begin(), p.end(), j) != p.end(); }

// eps(x_p) from ranks: pos[v] smaller means x_v larger.
int sign_from_positions(const std::vector<int>& p, const std::vector<int>& pos) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = i + 1; k < p.size(); ++k) {
      if (pos[static_cast<std::size_t>(p[i])] > pos[static_cast<std::size_t>(p[k])]) sign = -sign;
    }
  }
  return sign;
}

int sign_from_values(const std::vector<int>& p, std::span<const double> x) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = i + 1; k < p.size(); ++k) {
      if (x[static_cast<std::size_t>(p[i])] < x[static_cast<std::size_t>(p[k])]) sign = -sign;
    }
  }
  return sign;
}

using OrderSign = std::function<int(const std::vector<int>&)>;

// Integral over (R+)^k in the coordinates `vars` of an n-variable function; the
// remaining coordinates are held at 1. With a sign, every ordering of `vars`
// is folded onto the ordered cone with its sign.
QuadResult integrate_over(const PointIntegrand& f, int n, const std::vector<int>& vars, const OrderSign* sign,
                          const QuadratureSpec& quad) {
  const int k = static_cast<int>(vars.size());
  if (k == 0) {
    const std::vector<double> x(static_cast<std::size_t>(n), 1.0);
    QuadResult r;
    r.value = f(x);
    r.converged = true;
    return r;
  }
  if (sign == nullptr) {
    const auto g = [&](std::span<const double> y) {
      std::vector<double> x(static_cast<std::size_t>(n), 1.0);
      for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(vars[static_cast<std::size_t>(i)])] = y[static_cast<std::size_t>(i)];
      return f(x);
    };
    if (k == 1) return integrate_halfline([&](double y) { return g(std::span<const double>(&y, 1)); }, 0.0, quad);
    return integrate_cone(g, k, ConeMode::Orthant, quad);
  }
  std::vector<std::vector<int>> orders;
  std::vector<int> signs;
  std::vector<int> perm(vars);
  std::sort(perm.begin(), perm.end());
  do {
    orders.push_back(perm);
    signs.push_back((*sign)(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const auto g = [&](std::span<const double> y) {
    Complex acc = 0.0;
    std::vector<double> x(static_cast<std::size_t>(n), 1.0);
    for (std::size_t o = 0; o < orders.size(); ++o) {
      if (signs[o] == 0) continue;
      for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(orders[o][static_cast<std::size_t>(i)])] = y[static_cast<std::size_t>(i)];
      acc += static_cast<double>(signs[o]) * f(x);
    }
    return acc;
  };
  if (k == 1) return integrate_halfline([&](double y) { return g(std::span<const double>(&y, 1)); }, 0.0, quad);
  return integrate_cone(g, k, ConeMode::Ordered, quad);
}

// Per-term absolute convergence on (R+) in each of the `vars`.
void require_integrable(const PolarSymbolicFunction& f, const std::vector<int>& vars, const std::string& what) {
  const PolarSymbolicFunction g = f.canonical();
  const double cut = 1e-13 * g.max_coeff();
  for (const SymTerm& term : g.terms()) {
    if (std::abs(term.coeff) <= cut) continue;
    for (int j : vars) {
      const Complex p = term.p[static_cast<std::size_t>(j)];
      const Complex w = term.w[static_cast<std::size_t>(j)];
      if (!(p.real() > -1.0)) {
        throw RegionError(what + ": divergent at x_" + std::to_string(j + 1) + " -> 0 (exponent " + format_complex(p) + ")");
      }
      if (!((p + 2.0 * w).real() < -1.0)) {
        throw RegionError(what + ": divergent at x_" + std::to_string(j + 1) + " -> inf (exponent " +
                          format_complex(p + 2.0 * w) + ")");
      }
    }
  }
}

PolarSymbolicFunction weight_term(int n, int j, Complex t, Complex sigma) {
  std::vector<Complex> p(static_cast<std::size_t>(n), 0.0), w(static_cast<std::size_t>(n), 0.0);
  p[static_cast<std::size_t>(j)] = t;
  w[static_cast<std::size_t>(j)] = -sigma / 2.0;
  return PolarSymbolicFunction::term(1.0, std::move(p), std::move(w));
}

TnParams shifted(const TnParams& params) {
  TnParams out = params;
  out.s += 2.0;
  out.t += 1.0;
  return out;
}

}  // namespace

void TnParams::validate() const {
  const int n = constants.n;
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n || static_cast<int>(c.size()) != n) {
    throw ValidationError("a, b, c must have length n = " + std::to_string(n));
  }
  for (int v : a) {
    if (v < 1) throw ValidationError("a must be a positive integer sequence");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= n) throw ValidationError("p index out of range");
    if (i > 0 && p[i] <= p[i - 1]) throw ValidationError("p must be strictly increasing");
  }
  if (profile.rank() != n) throw ValidationError("profile rank does not match n");
  if (!constants.d.is_integer()) throw ValidationError("sign factor needs integer d");
}

std::string TnRegion::describe() const {
  return fmt(lower) + " < Re t < Re s + " + fmt(upper_offset);
}

TnRegion tn_region(const TnParams& params) {
  params.validate();
  TnRegion r;
  r.lower = -std::numeric_limits<double>::infinity();
  r.upper_offset = std::numeric_limits<double>::infinity();
  const double mn = params.constants.m_over_n();
  for (int j = 0; j < params.rank(); ++j) {
    const double a = params.a[static_cast<std::size_t>(j)];
    const double b = params.b[static_cast<std::size_t>(j)];
    const double c = params.c[static_cast<std::size_t>(j)];
    r.lower = std::max(r.lower, (-1.0 - c) / a);
    r.upper_offset = std::min(r.upper_offset, (b + mn - 1.0 - c) / a);
  }
  return r;
}

PolarSymbolicFunction tn_integrand(const TnParams& params) {
  params.validate();
  const int n = params.rank();
  const double mn = params.constants.m_over_n();
  PolarSymbolicFunction f = params.profile;
  for (int j = 0; j < n; ++j) f = f * weight_term(n, j, params.t_at(j), params.s_at(j) + mn);
  return f;
}

ZetaResult tn_direct(const TnParams& params, const QuadratureSpec& quad) {
  const TnRegion region = tn_region(params);
  if (!region.contains(params.s, params.t)) {
    throw RegionError("T_n needs " + region.describe() + ", got s = " + format_complex(params.s) +
                      ", t = " + format_complex(params.t));
  }
  if (!params.profile.is_bounded()) throw ValidationError("T_n profile must be bounded on (R+)^n");
  const int n = params.rank();
  const PolarSymbolicFunction f = tn_integrand(params);
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  const bool split = odd_d(params.constants) && params.p.size() >= 2;
  const OrderSign sign = [&](const std::vector<int>& order) {
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    return sign_from_positions(params.p, pos);
  };
  const QuadResult q = integrate_over([&](std::span<const double> x) { return f.eval(x); }, n, vars,
                                      split ? &sign : nullptr, quad);
  ZetaResult res;
  res.value = q.value;
  res.err_estimate = q.err_estimate;
  res.converged = q.converged;
  res.method = split ? "cone-split" : "orthant";
  res.region = region.describe();
  return res;
}

std::vector<PolarSymbolicFunction> psi_cascade(int j, Complex s, Complex t, int a, const PolarSymbolicFunction& phi,
                                               const StructureConstants& c) {
  if (a < 0) throw ValidationError("cascade length must be nonnegative");
  std::vector<PolarSymbolicFunction> psi(static_cast<std::size_t>(a + 1), PolarSymbolicFunction(phi.rank()));
  psi[static_cast<std::size_t>(a)] = phi;
  for (int r = a - 1; r >= 0; --r) {
    const Complex sr = s - 2.0 * r;
    const Complex sigma = sr + c.m_over_n();
    const PolarSymbolicFunction g = psi[static_cast<std::size_t>(r + 1)].times_one_plus_sq(j, -sigma / 2.0);
    psi[static_cast<std::size_t>(r)] =
        d_operator(j, sr, t - static_cast<double>(r), g, false, c).times_one_plus_sq(j, sigma / 2.0).canonical();
  }
  return psi;
}

std::vector<PolarSymbolicFunction> eta_cascade(const TnParams& params) {
  params.validate();
  const int n = params.rank();
  std::vector<PolarSymbolicFunction> eta(static_cast<std::size_t>(n + 1), PolarSymbolicFunction(n));
  eta[static_cast<std::size_t>(n)] = params.profile;
  for (int k = n; k >= 1; --k) {
    const int j = k - 1;
    eta[static_cast<std::size_t>(k - 1)] = psi_cascade(j, params.s_at(j), params.t_at(j), params.a[static_cast<std::size_t>(j)],
                                                       eta[static_cast<std::size_t>(k)], params.constants)[0];
  }
  return eta;
}

std::vector<BoundaryPiece> boundary_term_E(int l, Complex s, Complex t, const TnParams& params,
                                           const PolarSymbolicFunction& phi) {
  std::vector<BoundaryPiece> out;
  if (!odd_d(params.constants) || !in_p(params.p, l)) return out;
  const int n = phi.rank();
  const Complex sigma = s + params.constants.m_over_n();
  for (int q : params.p) {
    if (q == l) continue;
    // 2 {t (1+y^2) - (sigma-2)} y^t (1+y^2)^{-sigma/2}, y = x_q.
    const PolarSymbolicFunction coef = weight_term(n, q, t, sigma - 2.0) * (2.0 * t) -
                                       weight_term(n, q, t, sigma) * (2.0 * (sigma - 2.0));
    BoundaryPiece piece;
    piece.merged_into = q;
    piece.term = (phi.merge_variable(l, q) * coef).canonical();
    out.push_back(std::move(piece));
  }
  return out;
}

int boundary_sign(const std::vector<int>& p, int l, int merged, const std::vector<int>& order) {
  std::vector<int> full;
  for (int v : order) {
    if (v == l) continue;
    full.push_back(v);
    if (v == merged) full.push_back(l);
  }
  if (std::find(full.begin(), full.end(), l) == full.end()) throw ValidationError("merged index missing from order");
  const int size = std::max(*std::max_element(full.begin(), full.end()), *std::max_element(p.begin(), p.end())) + 1;
  std::vector<int> pos(static_cast<std::size_t>(size), -1);
  for (std::size_t i = 0; i < full.size(); ++i) pos[static_cast<std::size_t>(full[i])] = static_cast<int>(i);
  for (int v : p) {
    if (pos[static_cast<std::size_t>(v)] < 0) throw ValidationError("order does not rank every p index");
  }
  return sign_from_positions(p, pos);
}

ZetaResult tn_boundary_total(const TnParams& params, const QuadratureSpec& quad) {
  params.validate();
  ZetaResult res;
  res.method = "boundary";
  res.value = 0.0;
  if (!odd_d(params.constants)) return res;
  const int n = params.rank();
  const StructureConstants& c = params.constants;
  const double mn = c.m_over_n();
  const std::vector<PolarSymbolicFunction> eta = eta_cascade(params);
  Complex gamma_prev = 1.0;  // prod_{r<l} gamma_{a_r}(s_r : t_r)
  for (int l = 0; l < n; ++l) {
    const int a = params.a[static_cast<std::size_t>(l)];
    const Complex sl = params.s_at(l), tl = params.t_at(l);
    if (in_p(params.p, l)) {
      PolarSymbolicFunction weight = PolarSymbolicFunction::constant(n, 1.0);
      for (int j = 0; j < n; ++j) {
        if (j == l) continue;
        const double aj = params.a[static_cast<std::size_t>(j)];
        const Complex sigma = params.s_at(j) + mn;
        weight = j < l ? weight * weight_term(n, j, params.t_at(j) - aj, sigma - 2.0 * aj)
                       : weight * weight_term(n, j, params.t_at(j), sigma);
      }
      const std::vector<PolarSymbolicFunction> psi = psi_cascade(l, sl, tl, a, eta[static_cast<std::size_t>(l + 1)], c);
      // Collect pieces by merged index; the sign depends only on that index and
      // on the ordering of the remaining variables.
      std::vector<PolarSymbolicFunction> by_target(static_cast<std::size_t>(n), PolarSymbolicFunction(n));
      for (int k = 0; k < a; ++k) {
        const Complex gk = gamma_shift(sl, tl, k, c);
        for (const BoundaryPiece& piece :
             boundary_term_E(l, sl - 2.0 * k, tl - static_cast<double>(k), params, psi[static_cast<std::size_t>(k + 1)])) {
          by_target[static_cast<std::size_t>(piece.merged_into)] =
              by_target[static_cast<std::size_t>(piece.merged_into)] + piece.term * weight * gk;
        }
      }
      std::vector<int> vars;
      for (int j = 0; j < n; ++j) {
        if (j != l) vars.push_back(j);
      }
      std::vector<int> other_p;
      for (int v : params.p) {
        if (v != l) other_p.push_back(v);
      }
      for (int q : other_p) {
        const PolarSymbolicFunction f = by_target[static_cast<std::size_t>(q)].canonical();
        if (f.terms().empty()) continue;
        require_integrable(f, vars, "boundary term E^" + std::to_string(l + 1));
        Complex value;
        if (other_p.size() == 1) {
          // Only one ranked variable remains: the sign is constant.
          value = static_cast<double>(boundary_sign(params.p, l, q, other_p)) * symbolic_orthant_integral(f, vars);
        } else {
          const OrderSign sign = [&](const std::vector<int>& order) { return boundary_sign(params.p, l, q, order); };
          const QuadResult qr = integrate_over([&](std::span<const double> x) { return f.eval(x); }, n, vars, &sign, quad);
          value = qr.value;
          res.err_estimate += std::abs(gamma_prev) * qr.err_estimate;
          res.converged = res.converged && qr.converged;
        }
        res.value += gamma_prev * value;
      }
    }
    gamma_prev *= gamma_shift(sl, tl, a, c);
  }
  return res;
}

ZetaResult tn_continued(const TnParams& params, int depth, const QuadratureSpec& quad) {
  if (depth < 0) throw ValidationError("depth must be nonnegative");
  if (depth == 0) return tn_direct(params, quad);
  const TnParams up = shifted(params);
  const StructureConstants& c = params.constants;
  Complex gamma = 1.0;
  for (int j = 0; j < up.rank(); ++j) {
    const Complex sj = up.s_at(j), tj = up.t_at(j);
    for (int r = 0; r < up.a[static_cast<std::size_t>(j)]; ++r) {
      const Complex factor = shift_constant(sj - 2.0 * r, tj - static_cast<double>(r), c);
      if (std::abs(factor) < 1e-12 * (1.0 + std::abs(sj) + std::abs(tj))) {
        throw PoleError("gamma factor (s_" + std::to_string(j + 1) + " - " + std::to_string(2 * r) + " : t_" +
                            std::to_string(j + 1) + " - " + std::to_string(r) + ") vanishes at t = " +
                            format_complex(params.t),
                        params.t);
      }
      gamma *= factor;
    }
  }
  TnParams inner = up;
  inner.profile = eta_cascade(up)[0];
  const ZetaResult top = tn_continued(inner, depth - 1, quad);
  const ZetaResult boundary = tn_boundary_total(up, quad);
  ZetaResult res;
  res.value = (top.value - boundary.value) / gamma;
  res.err_estimate = (top.err_estimate + boundary.err_estimate) / std::abs(gamma);
  res.converged = top.converged && boundary.converged;
  res.path = ZetaPath::Continued;
  res.k_shifts = depth;
  res.method = top.method;
  res.region = tn_region(params).describe() + " after " + std::to_string(depth) + " shift(s)";
  return res;
}

std::pair<Complex, Complex> integration_by_parts_sides(int l, Complex s, Complex t, const TnParams& params,
                                                       const std::vector<double>& others, const QuadratureSpec& quad) {
  params.validate();
  const int n = params.rank();
  if (l < 0 || l >= n || static_cast<int>(others.size()) != n) throw ValidationError("bad variable index or point");
  const StructureConstants& c = params.constants;
  const Complex sigma = s + c.m_over_n();
  const bool signed_d = odd_d(c);
  const PolarSymbolicFunction dg =
      d_operator(l, s, t, params.profile.times_one_plus_sq(l, -sigma / 2.0), false, c).canonical();
  const PolarSymbolicFunction rhs_f = params.profile.times_one_plus_sq(l, -(sigma - 2.0) / 2.0);

  std::vector<double> cuts;
  if (signed_d) {
    for (int v : params.p) {
      if (v != l && in_p(params.p, l)) cuts.push_back(others[static_cast<std::size_t>(v)]);
    }
  }
  std::sort(cuts.begin(), cuts.end());

  const auto integrate_piecewise = [&](const PolarSymbolicFunction& f, Complex power) {
    const auto value_at = [&](double x) -> Complex {
      if (x <= 0.0) return 0.0;
      std::vector<double> pt(others);
      pt[static_cast<std::size_t>(l)] = x;
      const int sign = signed_d ? sign_from_values(params.p, pt) : 1;
      return static_cast<double>(sign) * std::exp(power * std::log(x)) * f.eval(pt);
    };
    if (cuts.empty()) return integrate_halfline(value_at, power.real(), quad).value;
    Complex acc = 0.0;
    double left = 0.0;
    for (double right : cuts) {
      const double width = right - left;
      // Evaluate at the interior of each piece so the sign is unambiguous.
      acc += width * integrate_unit([&](double u, double uc) { return value_at(u < 0.5 ? left + width * u : right - width * uc); },
                                    quad)
                         .value;
      left = right;
    }
    acc += integrate_halfline([&](double z) { return value_at(left + z); }, 0.0, quad).value;
    return acc;
  };

  const Complex lhs = integrate_piecewise(dg, t);
  Complex rhs = shift_constant(s, t, c) * integrate_piecewise(rhs_f, t - 1.0);
  std::vector<std::pair<double, int>> ranked;
  for (int j = 0; j < n; ++j) {
    if (j != l) ranked.emplace_back(others[static_cast<std::size_t>(j)], j);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<int> order;
  for (const auto& [v, j] : ranked) order.push_back(j);
  for (const BoundaryPiece& piece : boundary_term_E(l, s, t, params, params.profile)) {
    rhs += static_cast<double>(boundary_sign(params.p, l, piece.merged_into, order)) * piece.term.eval(others);
  }
  return {lhs, rhs};
}

Complex tn_contour_integral(const TnParams& params, Complex t0, double h, const QuadratureSpec& quad) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  const Complex corners[4] = {t0 + Complex(-h, -h), t0 + Complex(h, -h), t0 + Complex(h, h), t0 + Complex(-h, h)};
  Complex total = 0.0;
  for (int side = 0; side < 4; ++side) {
    const Complex za = corners[side];
    const Complex zb = corners[(side + 1) % 4];
    const Complex mid = 0.5 * (za + zb), half = 0.5 * (zb - za);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (double sgn : {1.0, -1.0}) {
        TnParams at = params;
        at.t = mid + sgn * nodes[i] * half;
        total += weights[i] * half * tn_direct(at, quad).value;
      }
    }
  }
  return total;
}

Complex symbolic_orthant_integral(const PolarSymbolicFunction& f, const std::vector<int>& active) {
  std::vector<int> vars = active;
  if (vars.empty()) {
    vars.resize(static_cast<std::size_t>(f.rank()));
    std::iota(vars.begin(), vars.end(), 0);
  }
  const PolarSymbolicFunction g = f.canonical();
  const double cut = 1e-13 * g.max_coeff();
  Complex total = 0.0;
  for (const SymTerm& term : g.terms()) {
    if (std::abs(term.coeff) <= cut) continue;
    Complex prod = term.coeff;
    for (int j = 0; j < f.rank(); ++j) {
      const Complex p = term.p[static_cast<std::size_t>(j)];
      const Complex w = term.w[static_cast<std::size_t>(j)];
      if (!in_p(vars, j)) {
        if (std::abs(p) > 1e-14 || std::abs(w) > 1e-14) {
          throw ValidationError("variable x_" + std::to_string(j + 1) + " occurs but is not integrated");
        }
        continue;
      }
      if (!(p.real() > -1.0) || !((p + 2.0 * w).real() < -1.0)) {
        throw RegionError("orthant integral diverges in x_" + std::to_string(j + 1));
      }
      prod *= half_line_beta(p, -w);
    }
    total += prod;
  }
  return total;
}

}  // namespace pvs
