// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>

#include "pvszeta/functional_equation.hpp"
#include "pvszeta/representation_ops.hpp"
#include "pvszeta/sl2_operators.hpp"
#include "pvszeta/special_functions.hpp"
#include "pvszeta/structure_tables.hpp"
#include "pvszeta/zeta_engine.hpp"

using namespace pvs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

StructureConstants euclid(int p) {
  GroupCase g = GroupCase::row(12);
  g.p = p;
  return lookup_case(g);
}

StructureConstants absdet(int n) {
  if (n == 1) {
    StructureConstants c;
    c.invariant_kind = InvariantKind::AbsDet;
    return c;
  }
  GroupCase g = GroupCase::row(1);
  g.rank = n;
  return lookup_case(g);
}

Outcome fe_constant(int m, const char* grid, std::size_t expected_points, double tol) {
  const StructureConstants c = euclid(m);
  FEOptions opt;
  opt.pole_margin = 0.15;
  const auto pts = TGrid::parse(grid).points();
  const FEReport r = fe_scan(GaussPoly::gaussian(m), pts, c, opt);
  const double expect = std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0);
  double worst = 0.0;
  for (const FEPoint& p : r.points) {
    if (p.skipped || p.failed) continue;
    worst = std::max({worst, p.rel_err, rel(p.lhs, expect), rel(p.rhs, expect)});
  }
  const bool ok = r.failed == 0 && r.skipped == 0 && pts.size() == expected_points &&
                  static_cast<std::size_t>(r.evaluated) == expected_points && worst <= tol;
  return {ok, fmt("m=%d points=%d max_rel_err=%.2e", m, r.evaluated, worst)};
}

Outcome criterion1() { return fe_constant(1, "-2.85:2.85:0.3,-1:1:2", 40, 1e-7); }

Outcome criterion2() {
  Outcome all{true, ""};
  for (int m : {2, 3, 5}) {
    const Outcome o = fe_constant(m, "-2.8:2.8:0.4,-0.5:0.5:1", 30, 1e-6);
    all.pass = all.pass && o.pass;
    all.detail += (all.detail.empty() ? "" : "; ") + o.detail;
  }
  return all;
}

Outcome criterion3() {
  const StructureConstants c = absdet(2);
  ZetaOptions opt;
  opt.method = ZetaMethod::MonteCarlo;
  opt.mc.samples = 1000000;
  opt.mc.seed = 20240501;
  Outcome o{true, ""};
  for (double t : {0.5, 1.0, 2.0}) {
    const ZetaResult z = zeta_direct(GaussPoly::gaussian(4), t, c, opt);
    const Complex oracle = closed_form_oracle(OracleFunction::Gaussian, 0.0, t, c, 0.0);
    const double dev = std::abs(z.value - oracle);
    const bool ok = z.method == "monte-carlo" && dev <= 3.0 * z.err_estimate && dev <= 0.02 * std::abs(oracle);
    o.pass = o.pass && ok;
    o.detail += fmt("%st=%g rel=%.2e se=%.2e", o.detail.empty() ? "" : "; ", t, dev / std::abs(oracle),
                    z.err_estimate / std::abs(oracle));
  }
  return o;
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (const StructureConstants& c : {euclid(1), euclid(3), absdet(1), absdet(2)}) {
    const GaussPoly g = GaussPoly::gaussian(full_space_dim(c));
    const GaussPoly dg = gp_apply_invariant_operator(g, c, 1);
    const double lo = direct_lower_bound(c) + 2.0;
    std::uniform_real_distribution<double> re(lo + 0.2, lo + 4.0), im(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
      const Complex t(re(rng), im(rng));
      const Complex lhs = zeta_direct(dg, t, c).value;
      const Complex rhs = bernstein_b(c).eval(t) * zeta_direct(g, t - 2.0, c).value;
      worst = std::max(worst, rel(lhs, rhs));
    }
  }
  return {worst <= 1e-7, fmt("40 points, max_rel_err=%.2e", worst)};
}

Outcome criterion5() {
  const StructureConstants c = euclid(1);
  const GaussPoly g = GaussPoly::gaussian(1);
  std::mt19937_64 rng(5);
  double overlap = 0.0, oracle_err = 0.0;
  std::uniform_real_distribution<double> in(-0.8, 3.0), im(-2.0, 2.0), out(-5.0, -1.0);
  for (int i = 0; i < 10; ++i) {
    const Complex t(in(rng), im(rng));
    const Complex d = zeta_direct(g, t, c).value;
    overlap = std::max({overlap, rel(zeta_continued(g, t, c, {}, 1).value, d), rel(zeta_continued(g, t, c, {}, 2).value, d)});
  }
  int done = 0;
  while (done < 10) {
    const Complex t(out(rng), im(rng));
    if (distance_to_nonpositive_integer((t + 1.0) / 2.0) < 0.05) continue;
    oracle_err = std::max(oracle_err, rel(zeta_continued(g, t, c).value,
                                          closed_form_oracle(OracleFunction::Gaussian, 0.0, t, c, 0.0)));
    ++done;
  }
  return {overlap <= 1e-8 && oracle_err <= 1e-6, fmt("overlap=%.2e oracle=%.2e", overlap, oracle_err)};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int p : {1, 3}) {
    const StructureConstants c = euclid(p);
    ZetaOptions opt;
    opt.polar_constant = calibrate_polar_constant(c, QuadratureSpec{}).value;
    const double mn = c.m_over_n();
    std::uniform_real_distribution<double> sre(0.5, 4.0), im(-1.5, 1.5), frac(0.05, 0.95);
    for (int i = 0; i < 10; ++i) {
      const Complex s(sre(rng), im(rng));
      const double lo = -(c.e + 1.0), hi = s.real();
      const Complex t(lo + frac(rng) * (hi - lo), im(rng));
      const Complex z = zeta_direct(SphericalVector{s, c}, t, opt).value;
      const double e1 = c.e + 1.0;
      const Complex closed = *opt.polar_constant * 0.5 * beta((t + e1) / 2.0, (s + mn - t - e1) / 2.0);
      worst = std::max(worst, rel(z, closed));
    }
  }
  return {worst <= 1e-8, fmt("m in {1,3}, 20 points, max_rel_err=%.2e", worst)};
}

Outcome criterion7() {
  const QuadratureSpec q;
  TnParams one;
  one.a = {1};
  one.b = {0.0};
  one.c = {0.0};
  one.p = {0};
  one.profile = PolarSymbolicFunction::term(1.0, {0.0}, {-0.5});
  one.s = Complex(2.5, 0.2);
  one.t = Complex(0.6, 0.1);

  TnParams two;
  two.constants.n = 2;
  two.constants.d = HalfInt::from_int(2);
  two.a = {1, 1};
  two.b = {0.0, 0.5};
  two.c = {0.0, 0.3};
  two.p = {0, 1};
  two.profile = PolarSymbolicFunction::term(1.0, {0.0, 0.0}, {-0.5, -1.0});
  two.s = Complex(2.0, 0.1);
  two.t = Complex(0.2, 0.2);

  double ibp = 0.0;
  const auto [l1, r1] = integration_by_parts_sides(0, Complex(3.0, 0.1), Complex(0.8, 0.2), one, {1.0}, q);
  ibp = std::max(ibp, rel(l1, r1));
  for (int l = 0; l < 2; ++l) {
    const auto [lhs, rhs] = integration_by_parts_sides(l, Complex(3.0, 0.1), Complex(0.8, 0.2), two, {0.7, 1.3}, q);
    ibp = std::max(ibp, rel(lhs, rhs));
  }
  double overlap = 0.0;
  for (TnParams* p : {&one, &two}) {
    overlap = std::max(overlap, rel(tn_continued(*p, 1, q).value, tn_direct(*p, q).value));
  }
  const double morera = std::max(std::abs(tn_contour_integral(one, one.t, 0.1, q)),
                                 std::abs(tn_contour_integral(two, two.t, 0.1, q)));
  return {ibp <= 1e-7 && overlap <= 1e-6 && morera <= 1e-6,
          fmt("by-parts=%.2e overlap=%.2e contour=%.2e", ibp, overlap, morera)};
}

Outcome criterion8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  StructureConstants c;
  c.e = 2;
  double adj = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Complex s(u(rng), u(rng)), t(u(rng), u(rng));
    const PolarSymbolicFunction xt = PolarSymbolicFunction::term(1.0, {t}, {0.0});
    const PolarSymbolicFunction rhs = PolarSymbolicFunction::term(shift_constant(s, t, c), {t - 1.0}, {1.0});
    adj = std::max(adj, symbolic_distance(d_operator(0, s, t, xt, true, c), rhs));
  }
  StructureConstants c2;
  c2.n = 2;
  c2.d = HalfInt::from_int(1);
  const Complex s(0.9, 0.4);
  double commute = 0.0;
  const std::array<Sl2Gen, 3> gens{Sl2Gen::E, Sl2Gen::H, Sl2Gen::F};
  const PolarSymbolicFunction f = PolarSymbolicFunction::term(Complex(1.0, 0.5), {1.0, 2.0}, {Complex(-0.5, 0.3), -1.0});
  for (Sl2Gen a : gens) {
    for (Sl2Gen b : gens) {
      commute = std::max(commute, symbolic_distance(sl2_act(a, 0, sl2_act(b, 1, f, s, c2), s, c2),
                                                    sl2_act(b, 1, sl2_act(a, 0, f, s, c2), s, c2)));
    }
  }
  const PolarSymbolicFunction hs = PolarSymbolicFunction::spherical(SphericalVector{s, c2});
  const CoordinateFunction hf = [&](std::span<const double> x) { return hs.eval(x); };
  const std::vector<double> x{1.7, 0.6};
  const double tau = 1e-4;
  double flow = 0.0;
  for (Sl2Gen g : {Sl2Gen::F, Sl2Gen::H}) {
    for (int j = 0; j < 2; ++j) {
      const Complex fd = (sl2_flow(g, j, tau, hf, s, c2, x) - sl2_flow(g, j, -tau, hf, s, c2, x)) / (2 * tau);
      flow = std::max(flow, rel(fd, sl2_act(g, j, hs, s, c2).eval(x)));
    }
  }
  // Exact means agreement up to rounding in the coefficient arithmetic.
  return {adj <= 1e-13 && commute <= 1e-14 && flow <= 1e-5,
          fmt("adjoint=%.2e commute=%.2e flow=%.2e", adj, commute, flow)};
}

Outcome criterion9() {
  const QuadratureSpec q;
  bool ok = true;
  std::string d;
  for (const PositivityPoint& p : positivity_scan({0.25, 0.5, 0.75}, q)) {
    ok = ok && p.positive && p.value.real() - p.err_estimate > 0.0;
    d += fmt("<h,h>(%.2f)=%.4g+-%.1e; ", p.s, p.value.real(), p.err_estimate);
  }
  double worst = 0.0;
  for (auto [s, t] : {std::pair{1.5, 0.5}, std::pair{0.8, 0.3}, std::pair{2.0, 0.7}}) {
    worst = std::max(worst, herm_identity(s, t, q).rel_err);
  }
  ok = ok && worst <= 1e-5;
  return {ok, d + fmt("identity max_rel_err=%.2e", worst)};
}

Outcome criterion10() {
  bool ok = true;
  for (const GroupCase& g : representative_cases()) ok = ok && validate_constants(lookup_case(g)).passed();
  const std::string cmd = std::string(PVSZETA_CLI_PATH) + " tables";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  if (pipe) {
    char line[1024];
    while (std::fgets(line, sizeof line, pipe.get())) out += line;
  }
  int notes = 0, row12 = 0;
  for (std::size_t pos = out.find("note:"); pos != std::string::npos; pos = out.find("note:", pos + 1)) {
    ++notes;
    row12 += out.compare(pos, 12, "note: row 12") == 0;
  }
  ok = ok && notes == 1 && row12 == 1;
  return {ok, fmt("12 rows validated=%s, notes=%d (row 12: %d)", ok ? "yes" : "no", notes, row12)};
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 = no runtime bound
  };
  const std::array<Item, 10> items{{
      {"tate functional equation", criterion1, 5},
      {"radial functional equations", criterion2, 30},
      {"abs-det Monte Carlo zeta", criterion3, 60},
      {"b-function identity", criterion4, 0},
      {"continuation consistency", criterion5, 0},
      {"spherical closed form", criterion6, 0},
      {"T_n continuation", criterion7, 0},
      {"sl2 operators", criterion8, 0},
      {"hermitian form", criterion9, 120},
      {"structure tables", criterion10, 0},
  }};
  int failed = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = items[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (items[i].budget_s > 0 && secs > items[i].budget_s) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s budget)", items[i].budget_s);
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, items[i].name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}
