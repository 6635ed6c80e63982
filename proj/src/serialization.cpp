#include "pvszeta/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <regex>

namespace pvs {

namespace {

using boost::multiprecision::cpp_int;

Json int_json(const cpp_int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

cpp_int int_from_json(const Json& j, const char* field) {
  if (j.is_number_integer()) return cpp_int(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, std::regex("-?[0-9]+"))) throw ValidationError(std::string(field) + " is not an integer: " + s);
    return cpp_int(s);
  }
  throw ValidationError(std::string(field) + " must be an integer or a decimal string");
}

Rational rational_from(const Json& t, const char* num, const char* den) {
  const cpp_int n = t.contains(num) ? int_from_json(t.at(num), num) : cpp_int(0);
  const cpp_int d = t.contains(den) ? int_from_json(t.at(den), den) : cpp_int(1);
  if (d == 0) throw ValidationError(std::string(den) + " is zero");
  return Rational(n, d);
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

Complex parse_complex(const std::string& text) {
  static const std::regex num(R"([+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)");
  static const std::regex full(R"(\s*([+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)\s*)"
                               R"(([+-]\s*(?:[0-9]+\.?[0-9]*|\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)\s*i\s*)");
  static const std::regex imag_only(R"(\s*([+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)\s*i\s*)");
  std::smatch m;
  const auto coeff = [](std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  if (std::regex_match(text, m, num)) return {std::stod(m.str(0)), 0.0};
  if (std::regex_match(text, m, full)) return {std::stod(m.str(1)), coeff(m.str(2))};
  if (std::regex_match(text, m, imag_only)) return {0.0, coeff(m.str(1))};
  throw ValidationError("not a complex number (expected a, a+bi or a-bi): '" + text + "'");
}

Json to_json(const GaussPoly& f) {
  Json terms = Json::array();
  for (const auto& [key, c] : f.terms()) {
    terms.push_back({{"alpha", key.alpha},
                     {"re_num", int_json(numerator(c.re))},
                     {"re_den", int_json(denominator(c.re))},
                     {"im_num", int_json(numerator(c.im))},
                     {"im_den", int_json(denominator(c.im))},
                     {"pi_pow", key.pi_pow}});
  }
  return {{"dim", f.dim()}, {"terms", terms}};
}

GaussPoly gauss_poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.at("dim").is_number_integer()) {
    throw ValidationError("Gaussian polynomial JSON needs an integer 'dim'");
  }
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw ValidationError("'dim' must be positive");
  GaussPoly f(dim);
  if (!j.contains("terms")) return f;
  if (!j.at("terms").is_array()) throw ValidationError("'terms' must be an array");
  for (const Json& t : j.at("terms")) {
    if (!t.contains("alpha") || !t.at("alpha").is_array()) throw ValidationError("each term needs an 'alpha' array");
    std::vector<int> alpha;
    for (const Json& a : t.at("alpha")) {
      if (!a.is_number_integer() || a.get<int>() < 0) throw ValidationError("'alpha' entries must be nonnegative integers");
      alpha.push_back(a.get<int>());
    }
    if (static_cast<int>(alpha.size()) != dim) throw ValidationError("'alpha' length differs from 'dim'");
    const int pi_pow = t.value("pi_pow", 0);
    f.add_term(alpha, pi_pow, GaussRational(rational_from(t, "re_num", "re_den"), rational_from(t, "im_num", "im_den")));
  }
  return f;
}

GaussPoly read_gauss_poly(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return gauss_poly_from_json(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Json to_json(const StructureConstants& c) {
  Json j = {{"n", c.n},
            {"m", c.m()},
            {"d", c.d.value()},
            {"e", c.e},
            {"invariant_kind", to_string(c.invariant_kind)},
            {"group_label", c.group_label},
            {"case_id", c.case_id}};
  if (c.p) j["p"] = *c.p;
  if (c.q) j["q"] = *c.q;
  return j;
}

Json to_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const ValidationCheck& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"passed", r.passed()}, {"checks", checks}, {"notes", r.notes}};
}

Json to_json(const QuadratureSpec& q) {
  return {{"scheme", q.scheme == QuadratureScheme::DoubleExponential ? "double-exponential" : "gauss-legendre"},
          {"max_level", q.max_level},
          {"target_rel_tol", q.target_rel_tol},
          {"exec", q.exec == Exec::Parallel ? "parallel" : "serial"}};
}

Json to_json(const MonteCarloSpec& mc) {
  return {{"seed", mc.seed}, {"samples", mc.samples}, {"proposal_scale", mc.proposal_scale}};
}

Json to_json(const ZetaResult& r) {
  return {{"value_re", number(r.value.real())},
          {"value_im", number(r.value.imag())},
          {"err", number(r.err_estimate)},
          {"path", to_string(r.path)},
          {"k_shifts", r.k_shifts},
          {"region", r.region},
          {"method", r.method},
          {"converged", r.converged}};
}

Json to_json(const CalibrationResult& r) {
  return {{"value", r.value},
          {"err", r.err_estimate},
          {"method", r.method},
          {"cross_check", r.cross_check},
          {"cross_check_err", r.cross_check_err}};
}

Json to_json(const FEPoint& p) {
  Json j = {{"re_t", p.t.real()}, {"im_t", p.t.imag()}, {"skipped", p.skipped}, {"failed", p.failed}};
  if (!p.skipped && !p.failed) {
    j["lhs_re"] = number(p.lhs.real());
    j["lhs_im"] = number(p.lhs.imag());
    j["rhs_re"] = number(p.rhs.real());
    j["rhs_im"] = number(p.rhs.imag());
    j["rel_err"] = number(p.rel_err);
    j["lhs_path"] = p.lhs_path;
    j["rhs_path"] = p.rhs_path;
  }
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

Json fe_summary_json(const FEReport& r) {
  return {{"max_rel_err", number(r.max_rel_err)},
          {"evaluated", r.evaluated},
          {"skipped", r.skipped},
          {"failed", r.failed}};
}

Json to_json(const HermIdentity& h) {
  return {{"lhs_re", number(h.lhs.real())},     {"lhs_im", number(h.lhs.imag())},
          {"rhs_re", number(h.rhs.real())},     {"rhs_im", number(h.rhs.imag())},
          {"ratio_re", number(h.ratio.real())}, {"ratio_im", number(h.ratio.imag())},
          {"rel_err", number(h.rel_err)},       {"lhs_err", number(h.lhs_err)},
          {"rhs_err", number(h.rhs_err)}};
}

Json to_json(const PositivityPoint& p) {
  return {{"s", p.s},
          {"value_re", number(p.value.real())},
          {"value_im", number(p.value.imag())},
          {"err", number(p.err_estimate)},
          {"positive", p.positive}};
}

void write_fe_csv(std::ostream& os, const FEReport& r) {
  os << kFECsvHeader << '\n';
  os.precision(17);
  for (const FEPoint& p : r.points) {
    os << p.t.real() << ',' << p.t.imag() << ',';
    if (p.skipped || p.failed) {
      os << "nan,nan,nan,nan,nan," << (p.skipped ? 1 : 0) << '\n';
    } else {
      os << p.lhs.real() << ',' << p.lhs.imag() << ',' << p.rhs.real() << ',' << p.rhs.imag() << ',' << p.rel_err
         << ",0\n";
    }
  }
}

}  // namespace pvs
