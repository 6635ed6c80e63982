#include "doctest.h"
#include "pvszeta/sl2_operators.hpp"

#include <cmath>
#include <random>

#include "pvszeta/quadrature.hpp"

using namespace pvs;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

StructureConstants rank_two() {
  StructureConstants c;
  c.n = 2;
  c.d = HalfInt::from_int(2);
  c.e = 0;  // m = 6, m/n = 3
  return c;
}

std::vector<PolarSymbolicFunction> basis(int n) {
  std::vector<PolarSymbolicFunction> out;
  for (int a = 0; a <= 2; ++a) {
    for (double w : {-1.5, -0.5}) {
      std::vector<Complex> p(static_cast<std::size_t>(n), 0.0), wv(static_cast<std::size_t>(n), 0.0);
      p[0] = static_cast<double>(a);
      wv[0] = Complex(w, 0.3);
      if (n > 1) {
        p[1] = 1.0;
        wv[1] = -1.0;
      }
      out.push_back(PolarSymbolicFunction::term(Complex(1.0, 0.5 * a), p, wv));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("generator examples") {
  StructureConstants c;
  const Complex s(1.3, 0.2);
  const PolarSymbolicFunction x = PolarSymbolicFunction::term(1.0, {1.0}, {0.0});
  CHECK(symbolic_distance(sl2_act(Sl2Gen::F, 0, x, s, c), PolarSymbolicFunction::constant(1, -1.0)) < 1e-15);
  const PolarSymbolicFunction one = PolarSymbolicFunction::constant(1, 1.0);
  CHECK(symbolic_distance(sl2_act(Sl2Gen::H, 0, one, s, c), PolarSymbolicFunction::constant(1, s + 1.0)) < 1e-15);
}

TEST_CASE("sl(2) commutation relations at fixed s") {
  const StructureConstants c = rank_two();
  const Complex s(0.7, -0.4);
  for (int j = 0; j < 2; ++j) {
    for (const PolarSymbolicFunction& f : basis(2)) {
      const auto act = [&](Sl2Gen g, const PolarSymbolicFunction& h) { return sl2_act(g, j, h, s, c); };
      const PolarSymbolicFunction ef = act(Sl2Gen::E, act(Sl2Gen::F, f)) - act(Sl2Gen::F, act(Sl2Gen::E, f));
      CHECK(symbolic_distance(ef, act(Sl2Gen::H, f)) < 1e-13);
      const PolarSymbolicFunction he = act(Sl2Gen::H, act(Sl2Gen::E, f)) - act(Sl2Gen::E, act(Sl2Gen::H, f));
      CHECK(symbolic_distance(he, act(Sl2Gen::E, f) * 2.0) < 1e-13);
      const PolarSymbolicFunction hf = act(Sl2Gen::H, act(Sl2Gen::F, f)) - act(Sl2Gen::F, act(Sl2Gen::H, f));
      CHECK(symbolic_distance(hf, act(Sl2Gen::F, f) * -2.0) < 1e-13);
    }
  }
}

TEST_CASE("distinct copies commute") {
  const StructureConstants c = rank_two();
  const Complex s(2.1, 0.3);
  for (Sl2Gen a : {Sl2Gen::E, Sl2Gen::H, Sl2Gen::F}) {
    for (Sl2Gen b : {Sl2Gen::E, Sl2Gen::H, Sl2Gen::F}) {
      for (const PolarSymbolicFunction& f : basis(2)) {
        const PolarSymbolicFunction ab = sl2_act(a, 0, sl2_act(b, 1, f, s, c), s, c);
        const PolarSymbolicFunction ba = sl2_act(b, 1, sl2_act(a, 0, f, s, c), s, c);
        CHECK(symbolic_distance(ab, ba) < 1e-14);
      }
    }
  }
}

TEST_CASE("adjoint on x^t") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  StructureConstants c;
  c.e = 2;  // m/n = 3
  for (int i = 0; i < 20; ++i) {
    const Complex s(u(rng), u(rng)), t(u(rng), u(rng));
    const PolarSymbolicFunction xt = PolarSymbolicFunction::term(1.0, {t}, {0.0});
    const PolarSymbolicFunction lhs = d_operator(0, s, t, xt, true, c);
    const PolarSymbolicFunction rhs = PolarSymbolicFunction::term(shift_constant(s, t, c), {t - 1.0}, {1.0});
    CHECK(symbolic_distance(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("D at t = 0") {
  StructureConstants c;
  const Complex s(1.7, 0.0);
  const PolarSymbolicFunction f = PolarSymbolicFunction::term(1.0, {2.0}, {Complex(-1.2, 0.4)});
  CHECK(symbolic_distance(d_operator(0, s, 0.0, f, false, c), f.derivative(0) * -(s + 1.0 - 2.0)) < 1e-14);
}

TEST_CASE("integration by parts on a finite interval") {
  StructureConstants c;
  c.e = 1;  // m/n = 2
  const Complex s(1.4, 0.3), t(0.6, -0.2);
  const Complex sigma = s + 2.0;
  const PolarSymbolicFunction f = PolarSymbolicFunction::term(1.0, {Complex(1.5, 0.0)}, {Complex(-0.8, 0.1)});
  const PolarSymbolicFunction g = PolarSymbolicFunction::term(Complex(0.5, 1.0), {2.0}, {Complex(-1.1, 0.0)});
  const PolarSymbolicFunction dg = d_operator(0, s, t, g, false, c);
  const PolarSymbolicFunction df = d_operator(0, s, t, f, true, c);
  const double a = 0.3, b = 2.2;
  QuadratureSpec q;
  q.exec = Exec::Serial;
  const QuadResult r = integrate_unit(
      [&](double v, double) {
        const std::vector<double> x{a + (b - a) * v};
        return f.eval(x) * dg.eval(x) - df.eval(x) * g.eval(x);
      },
      q);
  const auto bracket = [&](double x) {
    const std::vector<double> p{x};
    return (t * (1.0 + x * x) - (sigma - 2.0)) * f.eval(p) * g.eval(p);
  };
  CHECK(rel(r.value * (b - a), bracket(b) - bracket(a)) < 1e-8);
}

TEST_CASE("shift constants") {
  StructureConstants c;
  c.e = 1;  // m/n = 2
  CHECK(shift_constant(3.0, 1.0, c) == Complex(2.0));
  CHECK(shift_constant(3.0, 0.0, c) == Complex(0.0));
  CHECK(shift_constant(3.0, 3.0, c) == Complex(0.0));
  CHECK(gamma_shift(3.0, 1.0, 1, c) == shift_constant(3.0, 1.0, c));
  CHECK(gamma_shift(Complex(0.3, 2.0), 1.1, 0, c) == Complex(1.0));
  CHECK(gamma_shift(6.0, 3.0, 2, c) == Complex(36.0));
}

TEST_CASE("F and H flows differentiate to the symbolic action") {
  StructureConstants c;
  c.n = 2;
  c.d = HalfInt::from_int(1);  // m/n = 2
  const Complex s(0.9, 0.4);
  const SphericalVector h{s, c};
  const PolarSymbolicFunction hs = PolarSymbolicFunction::spherical(h);
  const CoordinateFunction f = [&](std::span<const double> x) { return hs.eval(x); };
  const std::vector<double> x{1.7, 0.6};
  const double tau = 1e-4;
  for (Sl2Gen gen : {Sl2Gen::F, Sl2Gen::H, Sl2Gen::E}) {
    for (int j = 0; j < 2; ++j) {
      const Complex fd = (sl2_flow(gen, j, tau, f, s, c, x) - sl2_flow(gen, j, -tau, f, s, c, x)) / (2 * tau);
      CHECK(rel(fd, sl2_act(gen, j, hs, s, c).eval(x)) < 1e-5);
    }
  }
}
