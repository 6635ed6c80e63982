#include "pvszeta/functional_equation.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "pvszeta/kernels.hpp"
#include "pvszeta/special_functions.hpp"

namespace pvs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ĥ(rho) decays like exp(-2 pi rho); past this radius it is below 1e-500.
constexpr double kFourierCutoff = 200.0;

// Distance from the continuation point to the nearest root of the b_k used.
std::string check_continuation(Complex u, const StructureConstants& c, const FEOptions& opt, const char* side) {
  const int k = continuation_shifts(u, c, opt.zeta.strip_margin);
  if (k == 0) return {};
  for (double root : bernstein_bk_roots(c, k)) {
    if (std::abs(u + 2.0 * k - root) < opt.pole_margin) {
      return std::string(side) + ": within margin of b_" + std::to_string(k) + " root " + fmt(root);
    }
  }
  return {};
}

ZetaResult spherical_rhs_zeta(const SphericalVector& h, Complex u, const ZetaOptions& opt, double polar_constant) {
  const StructureConstants& c = h.constants;
  const double lower = direct_lower_bound(c);
  if (!(u.real() > lower)) {
    throw RegionError("transform zeta needs Re(-t) > " + fmt(lower) + ", got " + fmt(u.real()));
  }
  QuadratureSpec inner = opt.quad;
  inner.exec = Exec::Serial;
  const Complex power = u + static_cast<double>(c.e);
  std::atomic<bool> inner_ok{true};
  const QuadResult q = integrate_halfline(
      [&](double rho) -> Complex {
        if (rho <= 0.0 || rho > kFourierCutoff) return 0.0;
        const QuadResult f = spherical_fourier(h, rho, inner);
        if (!f.converged) inner_ok = false;
        return f.value * std::exp(power * std::log(rho));
      },
      power.real(), opt.quad);
  ZetaResult res;
  res.value = polar_constant * q.value;
  res.err_estimate = polar_constant * q.err_estimate;
  res.converged = q.converged && inner_ok;
  res.method = "radial-transform";
  res.region = "Re t > " + fmt(lower);
  return res;
}

}  // namespace

std::string fe_skip_reason(const FEFunction& f, Complex t, const StructureConstants& c, const FEOptions& opt) {
  const GammaFactorSpec spec = GammaFactorSpec::from(c);
  const double mn = c.m_over_n();
  if (gamma_n_pole_distance(t, spec) < opt.pole_margin) return "near a pole of Gamma_n(t)";
  if (gamma_n_pole_distance(mn - t, spec) < opt.pole_margin) return "near a pole of Gamma_n(m/n - t)";
  if (const auto* h = std::get_if<SphericalVector>(&f)) {
    const double lower = direct_lower_bound(c);
    const double upper = h->s.real() - c.d.value() * (c.n - 1);
    const double u = t.real() - mn;
    if (!(u > lower && u < upper)) return "outside the spherical strip " + fmt(lower + mn) + " < Re t < " + fmt(upper + mn);
    if (!(-t.real() > lower)) return "transform zeta needs Re t < " + fmt(-lower);
    return {};
  }
  std::string why = check_continuation(t - mn, c, opt, "lhs");
  if (why.empty()) why = check_continuation(-t, c, opt, "rhs");
  return why;
}

FESides fe_sides(const FEFunction& f, Complex t, const StructureConstants& c, const FEOptions& opt) {
  const std::string why = fe_skip_reason(f, t, c, opt);
  if (!why.empty()) throw PoleError("t = " + format_complex(t) + " is " + why, t);
  const GammaFactorSpec spec = GammaFactorSpec::from(c);
  const double mn = c.m_over_n();
  const double nd = c.n;
  const Complex pre_l = std::pow(kPi, nd * t / 2.0) * reciprocal_gamma_n(t, spec);
  const Complex pre_r = std::pow(kPi, nd * (mn - t) / 2.0) * reciprocal_gamma_n(mn - t, spec);
  FESides out;
  if (const auto* g = std::get_if<GaussPoly>(&f)) {
    out.lhs_zeta = zeta_auto(*g, t - mn, c, opt.zeta);
    out.rhs_zeta = zeta_auto(gp_fourier(*g), -t, c, opt.zeta);
  } else {
    const SphericalVector& h = std::get<SphericalVector>(f);
    if (c.n != 1) throw UnsupportedError("spherical functional equation is implemented for rank one");
    ZetaOptions zo = opt.zeta;
    if (!zo.polar_constant) zo.polar_constant = calibrate_polar_constant(c, zo.quad).value;
    out.lhs_zeta = zeta_direct(h, t - mn, zo);
    out.rhs_zeta = spherical_rhs_zeta(h, -t, zo, *zo.polar_constant);
  }
  out.lhs = pre_l * out.lhs_zeta.value;
  out.rhs = pre_r * out.rhs_zeta.value;
  return out;
}

TGrid TGrid::parse(const std::string& text) {
  const auto parse_range = [&](const std::string& part, double& lo, double& hi, double& step) {
    std::vector<std::string> fields;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ':')) fields.push_back(item);
    if (fields.size() != 3) throw ValidationError("grid range must be min:max:step, got '" + part + "'");
    try {
      lo = std::stod(fields[0]);
      hi = std::stod(fields[1]);
      step = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ValidationError("grid range has a non-numeric field: '" + part + "'");
    }
    if (!(step > 0.0) || hi < lo) throw ValidationError("grid range needs max >= min and step > 0: '" + part + "'");
  };
  TGrid g;
  const auto comma = text.find(',');
  parse_range(text.substr(0, comma), g.re_min, g.re_max, g.re_step);
  if (comma != std::string::npos) {
    const std::string rest = text.substr(comma + 1);
    g.im.clear();
    if (rest.find(':') == std::string::npos) {
      try {
        g.im.push_back(std::stod(rest));
      } catch (const std::exception&) {
        throw ValidationError("imaginary part is not a number: '" + rest + "'");
      }
    } else {
      double lo = 0, hi = 0, step = 1;
      parse_range(rest, lo, hi, step);
      for (int i = 0; lo + i * step <= hi + 1e-9 * step; ++i) g.im.push_back(lo + i * step);
    }
  }
  return g;
}

std::vector<Complex> TGrid::points() const {
  std::vector<Complex> out;
  for (double y : im) {
    for (int i = 0; re_min + i * re_step <= re_max + 1e-9 * re_step; ++i) out.emplace_back(re_min + i * re_step, y);
  }
  return out;
}

double fe_rel_err(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

FEReport fe_scan(const FEFunction& f, const std::vector<Complex>& grid, const StructureConstants& c,
                 const FEOptions& opt) {
  FEOptions local = opt;
  if (std::holds_alternative<SphericalVector>(f) && !local.zeta.polar_constant && !grid.empty()) {
    local.zeta.polar_constant = calibrate_polar_constant(c, local.zeta.quad).value;
  }
  FEReport report;
  report.points.resize(grid.size());
  std::vector<Complex> dummy(grid.size());
  map_indices(local.zeta.quad.exec, dummy, [&](std::size_t i) -> Complex {
    FEPoint& pt = report.points[i];
    pt.t = grid[i];
    pt.note = fe_skip_reason(f, pt.t, c, local);
    if (!pt.note.empty()) {
      pt.skipped = true;
      return 0.0;
    }
    try {
      const FESides sides = fe_sides(f, pt.t, c, local);
      pt.lhs = sides.lhs;
      pt.rhs = sides.rhs;
      pt.rel_err = fe_rel_err(sides.lhs, sides.rhs);
      pt.lhs_path = to_string(sides.lhs_zeta.path) + "/" + std::to_string(sides.lhs_zeta.k_shifts);
      pt.rhs_path = to_string(sides.rhs_zeta.path) + "/" + std::to_string(sides.rhs_zeta.k_shifts);
      if (!sides.lhs_zeta.converged || !sides.rhs_zeta.converged) {
        pt.failed = true;
        pt.note = "quadrature did not converge";
      }
      if (!std::isfinite(pt.rel_err)) {
        pt.failed = true;
        pt.note = "non-finite value";
      }
    } catch (const std::exception& e) {
      pt.failed = true;
      pt.note = e.what();
    }
    return 0.0;
  });
  for (const FEPoint& pt : report.points) {
    if (pt.skipped) {
      ++report.skipped;
    } else if (pt.failed) {
      ++report.failed;
    } else {
      ++report.evaluated;
      report.max_rel_err = std::max(report.max_rel_err, pt.rel_err);
    }
  }
  return report;
}

}  // namespace pvs
