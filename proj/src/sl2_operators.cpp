#include "pvszeta/sl2_operators.hpp"

#include <cmath>
#include <vector>

namespace pvs {

PolarSymbolicFunction sl2_act(Sl2Gen gen, int j, const PolarSymbolicFunction& f, Complex s,
                              const StructureConstants& c) {
  if (j < 0 || j >= f.rank() || f.rank() != c.n) throw ValidationError("sl2 index out of range");
  const Complex sigma = s + c.m_over_n();
  const PolarSymbolicFunction df = f.derivative(j);
  switch (gen) {
    case Sl2Gen::E: return f.times_power(j, 1.0) * sigma + df.times_power(j, 2.0);
    case Sl2Gen::H: return f * sigma + df.times_power(j, 1.0) * 2.0;
    case Sl2Gen::F: return df * -1.0;
  }
  throw ValidationError("unknown generator");
}

PolarSymbolicFunction d_operator(int j, Complex s, Complex t, const PolarSymbolicFunction& f, bool adjoint,
                                 const StructureConstants& c) {
  if (j < 0 || j >= f.rank()) throw ValidationError("operator index out of range");
  const Complex sigma = s + c.m_over_n();
  const PolarSymbolicFunction lead = f.times_power(j, 1.0) * (sigma * t);
  if (!adjoint) {
    const PolarSymbolicFunction df = f.derivative(j);
    return lead + (df + df.times_power(j, 2.0)) * t - df * (sigma - 2.0);
  }
  const PolarSymbolicFunction g = f + f.times_power(j, 2.0);
  return lead - g.derivative(j) * t + f.derivative(j) * (sigma - 2.0);
}

Complex shift_constant(Complex s, Complex t, const StructureConstants& c) {
  return (s + c.m_over_n() - t - 2.0) * t;
}

Complex gamma_shift(Complex s, Complex t, int a, const StructureConstants& c) {
  if (a < 0) throw ValidationError("gamma shift count must be nonnegative");
  Complex acc = 1.0;
  for (int r = 0; r < a; ++r) acc *= shift_constant(s - 2.0 * r, t - static_cast<double>(r), c);
  return acc;
}

Complex sl2_flow(Sl2Gen gen, int j, double tau, const CoordinateFunction& f, Complex s, const StructureConstants& c,
                 std::span<const double> x) {
  if (j < 0 || j >= static_cast<int>(x.size())) throw ValidationError("flow index out of range");
  const Complex sigma = s + c.m_over_n();
  std::vector<double> y(x.begin(), x.end());
  const double xj = x[static_cast<std::size_t>(j)];
  double& yj = y[static_cast<std::size_t>(j)];
  switch (gen) {
    case Sl2Gen::F:
      yj = xj - tau;
      return f(y);
    case Sl2Gen::H:
      yj = xj * std::exp(2.0 * tau);
      return std::exp(sigma * tau) * f(y);
    case Sl2Gen::E: {
      const double denom = 1.0 - tau * xj;
      if (denom <= 0.0) throw RegionError("flow parameter leaves the chart");
      yj = xj / denom;
      return std::exp(-sigma * std::log(denom)) * f(y);
    }
  }
  throw ValidationError("unknown generator");
}

}  // namespace pvs
