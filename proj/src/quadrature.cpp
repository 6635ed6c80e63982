#include "pvszeta/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <vector>

namespace pvs {

namespace {

constexpr double kHalfPi = 1.5707963267948966192;
constexpr double kPruneRatio = 1e-18;
// Largest |u| with both x and 1-x (or x and 1/x) representable above 1e-300.
constexpr double kUMax = 6.75;
constexpr double kH0 = 0.5;

struct Node {
  double x = 0.0;
  double xc = 0.0;  // 1 - x for the unit map, unused otherwise
  double w = 0.0;
};

using Mapper = Node (*)(double);
using NodeEval = std::function<Complex(const Node&)>;

Node exp_sinh_node(double u) {
  const double v = kHalfPi * std::sinh(u);
  const double x = std::exp(v);
  return {x, 0.0, x * kHalfPi * std::cosh(u)};
}

Node tanh_sinh_node(double u) {
  const double v = kHalfPi * std::sinh(u);
  // x = 1/(1+e^{-2v}), 1-x = 1/(1+e^{2v}); each is accurate on its own side.
  const double x = 1.0 / (1.0 + std::exp(-2.0 * v));
  const double xc = 1.0 / (1.0 + std::exp(2.0 * v));
  return {x, xc, kPi * std::cosh(u) * x * xc};
}

bool converged_at(double err, Complex value, double l1, double tol) {
  return err <= tol * std::max(std::abs(value), 1e-2 * l1);
}

QuadResult de_integrate(Mapper map, const NodeEval& eval, const QuadratureSpec& spec) {
  QuadResult res;
  const int k_max = static_cast<int>(std::floor(kUMax / kH0));

  // Level 0 over the whole admissible window; it fixes the pruning range.
  const int count0 = 2 * k_max + 1;
  std::vector<Complex> terms(static_cast<std::size_t>(count0));
  map_indices(spec.exec, terms, [&](std::size_t i) {
    const double u = (static_cast<int>(i) - k_max) * kH0;
    const Node nd = map(u);
    if (nd.w == 0.0) return Complex(0.0);
    return nd.w * eval(nd);
  });
  res.evaluations += terms.size();

  // Non-finite values at the extreme nodes (overflowing x times underflowing
  // decay) are dropped when the adjacent finite terms are already negligible.
  const auto bad = [](const Complex& t) { return !std::isfinite(t.real()) || !std::isfinite(t.imag()); };
  int first_ok = 0, last_ok = count0 - 1;
  while (first_ok < count0 && bad(terms[static_cast<std::size_t>(first_ok)])) ++first_ok;
  while (last_ok >= 0 && bad(terms[static_cast<std::size_t>(last_ok)])) --last_ok;
  double scale = 0.0;
  bool finite = first_ok <= last_ok;
  for (int i = first_ok; i <= last_ok; ++i) {
    const Complex& t = terms[static_cast<std::size_t>(i)];
    if (bad(t)) {
      finite = false;
      continue;
    }
    scale = std::max(scale, std::abs(t));
  }
  if (finite && (first_ok > 0 || last_ok < count0 - 1)) {
    const bool edges_small = (first_ok == 0 || std::abs(terms[static_cast<std::size_t>(first_ok)]) <= kPruneRatio * scale) &&
                             (last_ok == count0 - 1 || std::abs(terms[static_cast<std::size_t>(last_ok)]) <= kPruneRatio * scale);
    if (!edges_small) finite = false;
    for (int i = 0; i < first_ok; ++i) terms[static_cast<std::size_t>(i)] = 0.0;
    for (int i = last_ok + 1; i < count0; ++i) terms[static_cast<std::size_t>(i)] = 0.0;
  }
  if (!finite) {
    res.value = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    res.err_estimate = std::numeric_limits<double>::infinity();
    return res;
  }
  int lo = count0, hi = -1;
  for (int i = 0; i < count0; ++i) {
    if (std::abs(terms[static_cast<std::size_t>(i)]) > kPruneRatio * scale) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  if (hi < 0) {
    res.value = 0.0;
    res.converged = true;
    return res;
  }
  const bool tail_ok = lo > 0 && hi < count0 - 1;
  const double u_lo = (std::max(lo - 1, 0) - k_max) * kH0;
  const double u_hi = (std::min(hi + 1, count0 - 1) - k_max) * kH0;

  double l1 = 0.0;
  for (const Complex& t : terms) l1 += std::abs(t);
  l1 *= kH0;
  Complex current = kH0 * pairwise_sum(terms);
  res.value = current;
  res.err_estimate = std::abs(current);

  double h = kH0;
  for (int level = 1; level <= spec.max_level; ++level) {
    h /= 2.0;
    // New nodes are the odd multiples of h inside [u_lo, u_hi].
    const long first = static_cast<long>(std::ceil((u_lo / h - 1.0) / 2.0));
    const long last = static_cast<long>(std::floor((u_hi / h - 1.0) / 2.0));
    const std::size_t count = last >= first ? static_cast<std::size_t>(last - first + 1) : 0;
    std::vector<Complex> fresh(count);
    map_indices(spec.exec, fresh, [&](std::size_t i) {
      const double u = (2.0 * static_cast<double>(first + static_cast<long>(i)) + 1.0) * h;
      const Node nd = map(u);
      if (nd.w == 0.0) return Complex(0.0);
      return nd.w * eval(nd);
    });
    res.evaluations += count;
    for (const Complex& t : fresh) {
      if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
        res.value = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
        res.err_estimate = std::numeric_limits<double>::infinity();
        res.converged = false;
        res.levels = level;
        return res;
      }
      l1 += h * std::abs(t);
    }
    const Complex next = 0.5 * current + h * pairwise_sum(fresh);
    res.err_estimate = std::abs(next - current);
    res.value = next;
    res.levels = level;
    current = next;
    if (converged_at(res.err_estimate, next, l1 / 2.0, spec.target_rel_tol)) {
      res.converged = tail_ok;
      return res;
    }
  }
  res.converged = false;
  return res;
}

// Composite 20-point Gauss-Legendre on panels graded geometrically toward
// the singular end(s) of (0,1). Level l splits every panel into 2^l pieces.
using Gauss20 = boost::math::quadrature::gauss<double, 20>;

std::vector<std::pair<double, double>> graded_panels(bool both_ends) {
  constexpr int kDepth = 100;
  std::vector<std::pair<double, double>> panels;
  const double mid = both_ends ? 0.5 : 1.0;
  double right = mid;
  for (int j = 0; j < kDepth; ++j) {
    const double left = right / 2.0;
    panels.emplace_back(left, right);
    right = left;
  }
  panels.emplace_back(0.0, right);
  return panels;
}

// Integrates over one panel [a,b] of the left half; `eval(x, xc)`.
Complex gauss_panel(double a, double b, int pieces, const UnitIntegrand& eval, bool mirrored) {
  const auto& abscissa = Gauss20::abscissa();
  const auto& weights = Gauss20::weights();
  std::vector<Complex> acc;
  acc.reserve(static_cast<std::size_t>(pieces) * 20);
  const double width = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * width;
    const double half = width / 2.0;
    const double c = lo + half;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      for (int sgn : {-1, 1}) {
        if (i == 0 && sgn == 1 && abscissa[0] == 0.0) continue;
        const double x = c + sgn * half * abscissa[i];
        const Complex f = mirrored ? eval(1.0 - x, x) : eval(x, 1.0 - x);
        acc.push_back(half * weights[i] * f);
      }
    }
  }
  return pairwise_sum(acc);
}

QuadResult gauss_unit(const UnitIntegrand& g, const QuadratureSpec& spec, bool both_ends) {
  const auto panels = graded_panels(both_ends);
  QuadResult res;
  Complex previous = 0.0;
  for (int level = 0; level <= spec.max_level; ++level) {
    const int pieces = 1 << level;
    const std::size_t sides = both_ends ? 2 : 1;
    std::vector<Complex> parts(panels.size() * sides);
    map_indices(spec.exec, parts, [&](std::size_t i) {
      const auto& pn = panels[i % panels.size()];
      return gauss_panel(pn.first, pn.second, pieces, g, i >= panels.size());
    });
    res.evaluations += parts.size() * static_cast<std::size_t>(pieces) * 20;
    const Complex value = pairwise_sum(parts);
    res.value = value;
    res.levels = level;
    if (level > 0) {
      res.err_estimate = std::abs(value - previous);
      if (res.err_estimate <= spec.target_rel_tol * std::abs(value) || value == previous) {
        res.converged = true;
        return res;
      }
    }
    previous = value;
  }
  return res;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(target_rel_tol >= 1e-13)) throw ValidationError("target_rel_tol must be >= 1e-13");
  if (max_level < 1 || max_level > 14) throw ValidationError("max_level must be in [1, 14]");
}

QuadResult integrate_halfline(const HalfLineIntegrand& g, double alpha, const QuadratureSpec& spec) {
  spec.validate();
  if (!(alpha > -1.0)) throw RegionError("integrand is not integrable at 0 (exponent <= -1)");
  if (spec.scheme == QuadratureScheme::GaussLegendreComposite) {
    // (0,1] directly; [1,inf) through x = 1/y.
    const UnitIntegrand folded = [&](double y, double) {
      Complex v = g(y);
      if (y > 0.0) {
        const double inv = 1.0 / y;
        v += g(inv) * inv * inv;
      }
      return v;
    };
    return gauss_unit(folded, spec, false);
  }
  return de_integrate(exp_sinh_node, [&](const Node& nd) { return g(nd.x); }, spec);
}

QuadResult integrate_unit(const UnitIntegrand& g, const QuadratureSpec& spec) {
  spec.validate();
  if (spec.scheme == QuadratureScheme::GaussLegendreComposite) return gauss_unit(g, spec, true);
  return de_integrate(tanh_sinh_node, [&](const Node& nd) { return g(nd.x, nd.xc); }, spec);
}

QuadResult integrate_line(const HalfLineIntegrand& g, const QuadratureSpec& spec) {
  return integrate_halfline([&](double x) { return g(x) + g(-x); }, 0.0, spec);
}

namespace {

struct ConeState {
  const PointIntegrand* g;
  int n;
  ConeMode mode;
  QuadratureSpec spec;
  bool all_converged = true;
  std::size_t evaluations = 0;
};

Complex cone_point(const ConeState& st, const std::vector<double>& coords) {
  if (st.mode == ConeMode::Orthant) return (*st.g)(coords);
  // Ordered: coords = (r, u_1, ...), x_{k+1} = x_k u_k.
  std::vector<double> x(coords.size());
  x[0] = coords[0];
  double jac = 1.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    x[k] = x[k - 1] * coords[k];
    jac *= x[k - 1];
  }
  return jac * (*st.g)(x);
}

// Iterated integral over coordinates [level, n) with the outer ones fixed.
Complex cone_level(ConeState& st, std::vector<double>& coords, int level) {
  QuadratureSpec spec = st.spec;
  spec.exec = Exec::Serial;
  const auto body = [&, level](double y) -> Complex {
    coords[static_cast<std::size_t>(level)] = y;
    if (level == st.n - 1) return cone_point(st, coords);
    return cone_level(st, coords, level + 1);
  };
  QuadResult r;
  if (st.mode == ConeMode::Ordered && level > 0) {
    r = integrate_unit([&](double x, double) { return body(x); }, spec);
  } else {
    r = integrate_halfline(body, 0.0, spec);
  }
  st.evaluations += r.evaluations;
  if (!r.converged) st.all_converged = false;
  return r.value;
}

}  // namespace

QuadResult integrate_cone(const PointIntegrand& g, int n, ConeMode mode, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 1 || n > 3) throw ValidationError("cone integration supports 1 <= n <= 3");
  if (n == 1) return integrate_halfline([&](double x) { return g(std::span<const double>(&x, 1)); }, 0.0, spec);

  // Only the outermost integral runs in parallel; each outer node owns its
  // inner state and the flags are merged afterwards.
  std::mutex guard;
  bool all_ok = true;
  std::size_t inner_evals = 0;
  const HalfLineIntegrand outer_body = [&](double y) {
    ConeState st{&g, n, mode, spec};
    std::vector<double> coords(static_cast<std::size_t>(n), 0.0);
    coords[0] = y;
    const Complex v = cone_level(st, coords, 1);
    std::lock_guard<std::mutex> lock(guard);
    inner_evals += st.evaluations;
    all_ok = all_ok && st.all_converged;
    return v;
  };
  QuadResult outer = integrate_halfline(outer_body, 0.0, spec);
  outer.evaluations += inner_evals;
  outer.converged = outer.converged && all_ok;
  return outer;
}

MonteCarloResult integrate_mc_fullspace(const PointIntegrand& f, int dim, const MonteCarloSpec& spec) {
  if (dim < 1) throw ValidationError("Monte Carlo dimension must be positive");
  if (spec.samples < 2) throw ValidationError("Monte Carlo needs at least two samples");
  if (!(spec.proposal_scale > 0.0)) throw ValidationError("proposal_scale must be positive");

  constexpr std::int64_t kChunk = 4096;
  const std::int64_t chunks = (spec.samples + kChunk - 1) / kChunk;
  const double sigma = spec.proposal_scale / std::sqrt(2.0 * kPi);
  const double inv_var = 1.0 / (sigma * sigma);
  const double log_norm = dim * std::log(sigma * std::sqrt(2.0 * kPi));

  std::vector<Complex> sums(static_cast<std::size_t>(chunks));
  std::vector<double> squares(static_cast<std::size_t>(chunks));
  map_indices(spec.exec, sums, [&](std::size_t c) {
    std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(static_cast<std::uint64_t>(c))));
    std::normal_distribution<double> normal(0.0, sigma);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(spec.samples, begin + kChunk);
    std::vector<double> x(static_cast<std::size_t>(dim));
    Complex sum = 0.0;
    double sq = 0.0;
    for (std::int64_t i = begin; i < end; ++i) {
      double r2 = 0.0;
      for (auto& xi : x) {
        xi = normal(rng);
        r2 += xi * xi;
      }
      // 1/q(X) with q the proposal density.
      const double inv_q = std::exp(0.5 * r2 * inv_var + log_norm);
      const Complex w = f(x) * inv_q;
      sum += w;
      sq += std::norm(w);
    }
    squares[c] = sq;
    return sum;
  });

  const double count = static_cast<double>(spec.samples);
  const Complex mean = pairwise_sum(sums) / count;
  const double mean_sq = pairwise_sum(squares) / count;
  const double var = std::max(0.0, mean_sq - std::norm(mean));
  MonteCarloResult out;
  out.value = mean;
  out.samples = spec.samples;
  out.std_error = std::sqrt(var / (count - 1.0));
  out.variance_warning = out.std_error > 0.2 * std::abs(mean);
  return out;
}

}  // namespace pvs
