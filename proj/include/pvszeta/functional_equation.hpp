#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pvszeta/zeta_engine.hpp"

namespace pvs {

using FEFunction = std::variant<GaussPoly, SphericalVector>;

struct FEOptions {
  ZetaOptions zeta;
  /// Distance kept from poles of either gamma factor and from b_k zeros.
  double pole_margin = 0.1;
};

struct FESides {
  Complex lhs;
  Complex rhs;
  ZetaResult lhs_zeta;  ///< Z(f, t - m/n)
  ZetaResult rhs_zeta;  ///< Z(f^, -t)
};

/// lhs = pi^{nt/2} / Gamma_n(t) Z(f, t-m/n),
/// rhs = pi^{n(m/n-t)/2} / Gamma_n(m/n-t) Z(f^, -t).
/// Throws PoleError inside the pole margin.
FESides fe_sides(const FEFunction& f, Complex t, const StructureConstants& c, const FEOptions& opt = {});

/// Empty string when t is usable, otherwise why it is skipped.
std::string fe_skip_reason(const FEFunction& f, Complex t, const StructureConstants& c, const FEOptions& opt);

/// Real parts re_min, re_min+step, ... <= re_max at each imaginary part.
struct TGrid {
  double re_min = 0.0;
  double re_max = 0.0;
  double re_step = 1.0;
  std::vector<double> im{0.0};

  /// "reMin:reMax:step" optionally followed by ",im" or ",imMin:imMax:imStep".
  static TGrid parse(const std::string& text);
  std::vector<Complex> points() const;
};

struct FEPoint {
  Complex t;
  Complex lhs;
  Complex rhs;
  double rel_err = 0.0;
  bool skipped = false;
  bool failed = false;
  std::string note;  ///< skip reason or failure message
  std::string lhs_path;
  std::string rhs_path;
};

struct FEReport {
  std::vector<FEPoint> points;
  double max_rel_err = 0.0;
  int evaluated = 0;
  int skipped = 0;
  int failed = 0;
};

double fe_rel_err(Complex lhs, Complex rhs);

/// Evaluates every grid point in parallel; failures are recorded per point.
FEReport fe_scan(const FEFunction& f, const std::vector<Complex>& grid, const StructureConstants& c,
                 const FEOptions& opt = {});

}  // namespace pvs
