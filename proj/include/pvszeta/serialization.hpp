#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "pvszeta/functional_equation.hpp"
#include "pvszeta/gauss_poly.hpp"
#include "pvszeta/representation_ops.hpp"
#include "pvszeta/structure_tables.hpp"
#include "pvszeta/zeta_engine.hpp"

namespace pvs {

using Json = nlohmann::ordered_json;

/// "a", "a+bi", "a-bi", "bi" with decimal reals. Throws ValidationError.
Complex parse_complex(const std::string& text);

/// {dim, terms: [{alpha, re_num, re_den, im_num, im_den, pi_pow}]}; numerators and
/// denominators are integers, or decimal strings when they exceed 64 bits.
Json to_json(const GaussPoly& f);
GaussPoly gauss_poly_from_json(const Json& j);
GaussPoly read_gauss_poly(const std::string& path);

Json to_json(const StructureConstants& c);
Json to_json(const ValidationReport& r);
Json to_json(const QuadratureSpec& q);
Json to_json(const MonteCarloSpec& mc);
/// {value_re, value_im, err, path, k_shifts, region} plus method and converged.
Json to_json(const ZetaResult& r);
Json to_json(const CalibrationResult& r);
Json to_json(const FEPoint& p);
/// Summary only; points are streamed separately.
Json fe_summary_json(const FEReport& r);
Json to_json(const HermIdentity& h);
Json to_json(const PositivityPoint& p);

inline constexpr const char* kFECsvHeader = "re_t,im_t,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,skipped";
void write_fe_csv(std::ostream& os, const FEReport& r);

}  // namespace pvs
