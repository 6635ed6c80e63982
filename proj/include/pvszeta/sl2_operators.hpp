#pragma once

#include <functional>
#include <span>

#include "pvszeta/polar_symbolic.hpp"
#include "pvszeta/structure_tables.hpp"

namespace pvs {

enum class Sl2Gen { E, H, F };

/// Action of the j-th sl(2) copy on I(s), in the polar variable x_j:
/// E = (s+m/n) x f + x^2 f', H = (s+m/n) f + 2 x f', F = -f'.
PolarSymbolicFunction sl2_act(Sl2Gen gen, int j, const PolarSymbolicFunction& f, Complex s,
                              const StructureConstants& c);

/// D_{s,t}^j f = (s+m/n) t x f + t (1+x^2) f' - (s+m/n-2) f', or its formal adjoint
/// (s+m/n) t x f - t ((1+x^2) f)' + (s+m/n-2) f'.
PolarSymbolicFunction d_operator(int j, Complex s, Complex t, const PolarSymbolicFunction& f, bool adjoint,
                                 const StructureConstants& c);

/// (s:t) = (s + m/n - t - 2) t.
Complex shift_constant(Complex s, Complex t, const StructureConstants& c);

/// gamma_a(s:t) = prod_{r<a} (s-2r : t-r); gamma_0 = 1.
Complex gamma_shift(Complex s, Complex t, int a, const StructureConstants& c);

using CoordinateFunction = std::function<Complex(std::span<const double>)>;

/// (exp(tau Y) F)(x) for the one-parameter group of a generator acting on
/// coordinate j; d/dtau at 0 reproduces sl2_act.
Complex sl2_flow(Sl2Gen gen, int j, double tau, const CoordinateFunction& f, Complex s, const StructureConstants& c,
                 std::span<const double> x);

}  // namespace pvs
