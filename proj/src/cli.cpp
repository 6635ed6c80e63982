#include "pvszeta/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pvszeta/functional_equation.hpp"
#include "pvszeta/kernels.hpp"
#include "pvszeta/representation_ops.hpp"
#include "pvszeta/serialization.hpp"
#include "pvszeta/zeta_engine.hpp"

namespace pvs {

namespace {

struct CaseArgs {
  int id = 0;
  std::optional<int> p, q, rank;

  void attach(CLI::App* cmd) {
    cmd->add_option("--case", id, "table row 1..12")->required();
    cmd->add_option("--p", p, "row parameter p");
    cmd->add_option("--q", q, "row parameter q");
    cmd->add_option("--rank", rank, "rank n for rank-parameterized rows");
  }
  StructureConstants resolve() const {
    GroupCase g = GroupCase::row(id);
    g.p = p;
    g.q = q;
    g.rank = rank;
    return lookup_case(g);
  }
};

struct Common {
  int threads = -1;
  double tol = QuadratureSpec{}.target_rel_tol;
  std::uint64_t seed = MonteCarloSpec{}.seed;
  std::int64_t samples = 1000000;

  QuadratureSpec quad() const {
    QuadratureSpec q;
    q.target_rel_tol = tol;
    q.validate();
    return q;
  }
  MonteCarloSpec mc() const {
    MonteCarloSpec m;
    m.seed = seed;
    m.samples = samples;
    if (samples < 100) throw ValidationError("--samples must be at least 100");
    return m;
  }
};

// Emits one JSON object per line and flushes, so partial output stays usable.
void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n' << std::flush; }

Json config(const std::string& command, const StructureConstants* c, const Common& common) {
  Json j = {{"record", "config"}, {"command", command}};
  if (c) j["constants"] = to_json(*c);
  j["quadrature"] = to_json(common.quad());
  j["threads"] = thread_limit();
  return j;
}

struct FunctionArg {
  std::string spec = "gaussian";
  std::optional<std::string> s;

  std::optional<Complex> s_value() const {
    if (!s) return std::nullopt;
    return parse_complex(*s);
  }
  SphericalVector spherical(const StructureConstants& c) const {
    const auto sv = s_value();
    if (!sv) throw ValidationError("--function spherical needs --s");
    return SphericalVector{*sv, c};
  }
  bool is_spherical() const { return spec == "spherical"; }
  GaussPoly gauss(const StructureConstants& c) const {
    if (spec == "gaussian") return GaussPoly::gaussian(full_space_dim(c));
    if (spec.rfind("gp:", 0) == 0) {
      GaussPoly f = read_gauss_poly(spec.substr(3));
      if (f.dim() != full_space_dim(c)) {
        throw ValidationError("function dimension " + std::to_string(f.dim()) + " does not match the space (" +
                              std::to_string(full_space_dim(c)) + ")");
      }
      return f;
    }
    throw ValidationError("--function must be gaussian, spherical or gp:<file>, got '" + spec + "'");
  }
  Json describe() const {
    Json j = {{"function", spec}};
    if (s) j["s"] = format_complex(parse_complex(*s));
    return j;
  }
};

int exit_for(bool ok) { return ok ? kExitOk : kExitNumerical; }

Json error_record(const std::string& kind, const std::string& what) {
  return {{"record", "error"}, {"kind", kind}, {"message", what}};
}

// ---- subcommands ---------------------------------------------------------

int cmd_tables(bool as_json, std::ostream& out) {
  Json rows = Json::array();
  std::vector<std::string> notes;
  bool all_ok = true;
  for (const GroupCase& g : representative_cases()) {
    const StructureConstants c = lookup_case(g);
    const ValidationReport r = validate_constants(c, table_m_literal(c));
    all_ok = all_ok && r.passed();
    for (const std::string& note : r.notes) {
      if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
    }
    Json row = to_json(c);
    row["validation"] = to_json(r);
    row["validation"].erase("notes");
    rows.push_back(row);
  }
  if (as_json) {
    out << Json{{"rows", rows}, {"notes", notes}, {"all_passed", all_ok}}.dump(2) << '\n';
  } else {
    out << "case  group                    n    d   e    m  kind             checks\n";
    for (const Json& row : rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%4d  %-22s %3d %4.1f %3d %4d  %-16s %s\n", row["case_id"].get<int>(),
                    row["group_label"].get<std::string>().c_str(), row["n"].get<int>(), row["d"].get<double>(),
                    row["e"].get<int>(), row["m"].get<int>(), row["invariant_kind"].get<std::string>().c_str(),
                    row["validation"]["passed"].get<bool>() ? "ok" : "FAILED");
      out << line;
    }
    for (const std::string& note : notes) out << "note: " << note << '\n';
  }
  return all_ok ? kExitOk : kExitValidation;
}

int cmd_zeta(const CaseArgs& ca, const FunctionArg& fa, const std::string& t_text, const std::string& method,
             const Common& common, std::ostream& out) {
  const StructureConstants c = ca.resolve();
  if (t_text.empty()) throw ValidationError("--t is required");
  const Complex t = parse_complex(t_text);
  if (method != "auto" && method != "direct" && method != "continued") {
    throw ValidationError("--method must be direct, continued or auto");
  }
  ZetaOptions opt;
  opt.quad = common.quad();
  opt.mc = common.mc();
  Json cfg = config("zeta", &c, common);
  cfg.update(fa.describe());
  cfg["t"] = format_complex(t);
  cfg["method"] = method;
  cfg["monte_carlo"] = to_json(opt.mc);
  emit(out, cfg);
  try {
    ZetaResult r;
    if (fa.is_spherical()) {
      if (method == "continued") throw UnsupportedError("spherical input is evaluated directly only");
      r = zeta_direct(fa.spherical(c), t, opt);
    } else {
      const GaussPoly f = fa.gauss(c);
      if (method == "direct") {
        r = zeta_direct(f, t, c, opt);
      } else if (method == "continued") {
        r = zeta_continued(f, t, c, opt, 1);
      } else {
        r = zeta_auto(f, t, c, opt);
      }
    }
    Json rec = {{"record", "result"}};
    rec.update(to_json(r));
    emit(out, rec);
    return exit_for(r.converged && std::isfinite(std::abs(r.value)));
  } catch (const PoleError& e) {
    Json rec = error_record("pole", e.what());
    rec["root"] = format_complex(e.root());
    emit(out, rec);
  } catch (const RegionError& e) {
    emit(out, error_record("region", e.what()));
  }
  return kExitNumerical;
}

int cmd_verify_fe(const CaseArgs& ca, const FunctionArg& fa, const std::string& grid_text, double pole_margin,
                  const std::optional<std::string>& out_file, const Common& common, std::ostream& out) {
  const StructureConstants c = ca.resolve();
  const TGrid grid = TGrid::parse(grid_text);
  if (!(pole_margin > 0.0)) throw ValidationError("--pole-margin must be positive");
  FEOptions opt;
  opt.zeta.quad = common.quad();
  opt.zeta.mc = common.mc();
  opt.pole_margin = pole_margin;
  FEFunction f = fa.is_spherical() ? FEFunction{fa.spherical(c)} : FEFunction{fa.gauss(c)};
  std::string format;
  std::ofstream file;
  if (out_file) {
    const auto dot = out_file->rfind('.');
    format = dot == std::string::npos ? "" : out_file->substr(dot + 1);
    if (format != "json" && format != "csv") throw ValidationError("--out must end in .json or .csv");
    file.open(*out_file);
    if (!file) throw ValidationError("cannot write " + *out_file);
  }
  Json cfg = config("verify-fe", &c, common);
  cfg.update(fa.describe());
  cfg["t_grid"] = grid_text;
  cfg["pole_margin"] = pole_margin;
  emit(out, cfg);
  if (format == "json") emit(file, cfg);
  if (std::holds_alternative<SphericalVector>(f)) {
    opt.zeta.polar_constant = calibrate_polar_constant(c, opt.zeta.quad).value;
  }

  const std::vector<Complex> points = grid.points();
  const std::size_t chunk = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(std::max(1, thread_limit())));
  FEReport total;
  for (std::size_t start = 0; start < points.size(); start += chunk) {
    const std::vector<Complex> part(points.begin() + static_cast<std::ptrdiff_t>(start),
                                    points.begin() + static_cast<std::ptrdiff_t>(std::min(points.size(), start + chunk)));
    const FEReport r = fe_scan(f, part, c, opt);
    for (const FEPoint& p : r.points) {
      Json rec = {{"record", "point"}};
      rec.update(to_json(p));
      emit(out, rec);
      if (format == "json") emit(file, rec);
      total.points.push_back(p);
    }
    total.evaluated += r.evaluated;
    total.skipped += r.skipped;
    total.failed += r.failed;
    total.max_rel_err = std::max(total.max_rel_err, r.max_rel_err);
  }
  Json summary = {{"record", "summary"}};
  summary.update(fe_summary_json(total));
  emit(out, summary);
  if (format == "json") emit(file, summary);
  if (format == "csv") write_fe_csv(file, total);
  return exit_for(total.failed == 0);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("not a number in list: '" + item + "'");
    }
  }
  return out;
}

struct TnArgs {
  std::string a, b, c, p;
};

int cmd_continue_tn(const CaseArgs& ca, const std::string& s_text, const std::string& t_text, int depth,
                    const TnArgs& ta, const Common& common, std::ostream& out) {
  TnParams params;
  params.constants = ca.resolve();
  const int n = params.constants.n;
  const auto fill = [n](const std::string& text, double dflt) {
    if (text.empty()) return std::vector<double>(static_cast<std::size_t>(n), dflt);
    std::vector<double> v = parse_list(text);
    if (static_cast<int>(v.size()) != n) throw ValidationError("per-index lists need exactly n = " + std::to_string(n) + " entries");
    return v;
  };
  for (double v : fill(ta.a, 1.0)) {
    if (v != std::floor(v) || v < 1) throw ValidationError("--a entries must be positive integers");
    params.a.push_back(static_cast<int>(v));
  }
  params.b = fill(ta.b, 0.0);
  params.c = fill(ta.c, 0.0);
  if (ta.p.empty()) {
    for (int j = 0; j < n; ++j) params.p.push_back(j);
  } else if (ta.p != "none") {
    for (double v : parse_list(ta.p)) params.p.push_back(static_cast<int>(v));
  }
  params.s = parse_complex(s_text);
  params.t = parse_complex(t_text);
  params.profile = PolarSymbolicFunction::constant(n, 1.0);
  if (depth < 0) throw ValidationError("--depth must be nonnegative");
  params.validate();

  const TnRegion region = tn_region(params);
  Json cfg = config("continue-tn", &params.constants, common);
  cfg["s"] = format_complex(params.s);
  cfg["t"] = format_complex(params.t);
  cfg["depth"] = depth;
  cfg["a"] = params.a;
  cfg["b"] = params.b;
  cfg["c"] = params.c;
  cfg["p"] = params.p;
  cfg["profile"] = "1";
  cfg["region"] = region.describe();
  emit(out, cfg);
  const QuadratureSpec quad = common.quad();
  bool ok = true;
  try {
    const ZetaResult r = depth == 0 ? tn_direct(params, quad) : tn_continued(params, depth, quad);
    Json rec = {{"record", "result"}, {"depth", depth}};
    rec.update(to_json(r));
    emit(out, rec);
    ok = r.converged;
    if (depth > 0 && region.contains(params.s, params.t)) {
      const ZetaResult d = tn_direct(params, quad);
      Json cmp = {{"record", "direct"}};
      cmp.update(to_json(d));
      cmp["rel_diff"] = fe_rel_err(r.value, d.value);
      emit(out, cmp);
    }
  } catch (const PoleError& e) {
    emit(out, error_record("pole", e.what()));
    ok = false;
  } catch (const RegionError& e) {
    emit(out, error_record("region", e.what()));
    ok = false;
  }
  return exit_for(ok);
}

int cmd_herm(const std::string& s_text, const std::optional<std::string>& t_text,
             const std::optional<std::string>& grid_text, const Common& common, std::ostream& out) {
  const Complex s = parse_complex(s_text);
  const QuadratureSpec quad = common.quad();
  StructureConstants tate;
  tate.group_label = "GL(2,R)";
  Json cfg = config("herm", &tate, common);
  cfg["s"] = format_complex(s);
  if (t_text) cfg["t"] = t_text.value();
  if (grid_text) cfg["grid"] = grid_text.value();
  emit(out, cfg);

  std::vector<Complex> ts;
  if (grid_text) {
    ts = TGrid::parse(*grid_text).points();
  } else if (t_text) {
    ts.push_back(parse_complex(*t_text));
  }
  bool ok = true;
  if (ts.empty()) {
    // s = t: the invariant form.
    if (std::abs(s.imag()) > 0.0) throw ValidationError("positivity needs real s (or pass --t)");
    for (const PositivityPoint& p : positivity_scan({s.real()}, quad)) {
      Json rec = {{"record", "positivity"}};
      rec.update(to_json(p));
      emit(out, rec);
      ok = ok && std::isfinite(p.err_estimate);
    }
    return exit_for(ok);
  }
  for (Complex t : ts) {
    Json rec = {{"t", format_complex(t)}};
    try {
      if (t.real() > 0.0 && t.real() < 1.0 && s.real() > 0.0) {
        rec["record"] = "identity";
        rec.update(to_json(herm_identity(s, t, quad)));
      } else {
        const HermResult h = hermitian_form(KTypeVector::spherical(s), KTypeVector::spherical(s), {s, t, quad});
        rec["record"] = "form";
        rec["value_re"] = h.value.real();
        rec["value_im"] = h.value.imag();
        rec["err"] = h.err_estimate;
        rec["converged"] = h.converged;
        ok = ok && h.converged;
      }
    } catch (const PoleError& e) {
      rec["record"] = "error";
      rec["kind"] = "pole";
      rec["message"] = e.what();
      ok = false;
    } catch (const RegionError& e) {
      rec["record"] = "error";
      rec["kind"] = "region";
      rec["message"] = e.what();
      ok = false;
    }
    emit(out, rec);
  }
  return exit_for(ok);
}

int cmd_calibrate(const CaseArgs& ca, const Common& common, std::ostream& out) {
  const StructureConstants c = ca.resolve();
  Json cfg = config("calibrate", &c, common);
  const MonteCarloSpec mc = common.mc();
  cfg["monte_carlo"] = to_json(mc);
  emit(out, cfg);
  const CalibrationResult r = calibrate_polar_constant(c, common.quad(), mc);
  Json rec = {{"record", "result"}};
  rec.update(to_json(r));
  emit(out, rec);
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta distributions on prehomogeneous spaces: evaluation and checks", "pvszeta"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "worker cap (0 = all); PVSZETA_THREADS is the default");
  app.add_option("--tol", common.tol, "target relative tolerance of the quadrature");
  app.add_option("--seed", common.seed, "Monte Carlo seed");
  app.add_option("--samples", common.samples, "Monte Carlo sample count");

  bool as_json = false;
  auto* tables = app.add_subcommand("tables", "structure constants of the group table");
  tables->add_flag("--json", as_json);

  CaseArgs zeta_case;
  FunctionArg zeta_fn;
  std::string zeta_t, zeta_method = "auto";
  auto* zeta = app.add_subcommand("zeta", "evaluate Z(f, t)");
  zeta_case.attach(zeta);
  zeta->add_option("--function", zeta_fn.spec, "gaussian | spherical | gp:<json-file>");
  zeta->add_option("--s", zeta_fn.s, "spherical parameter (a+bi)");
  zeta->add_option("--t", zeta_t, "exponent (a+bi)");
  zeta->add_option("--method", zeta_method, "direct | continued | auto");

  CaseArgs fe_case;
  FunctionArg fe_fn;
  std::string fe_grid;
  double fe_margin = FEOptions{}.pole_margin;
  std::optional<std::string> fe_out;
  auto* fe = app.add_subcommand("verify-fe", "scan both sides of the functional equation");
  fe_case.attach(fe);
  fe->add_option("--function", fe_fn.spec, "gaussian | spherical | gp:<json-file>");
  fe->add_option("--s", fe_fn.s, "spherical parameter (a+bi)");
  fe->add_option("--t-grid", fe_grid, "reMin:reMax:step[,im | ,imMin:imMax:imStep]")->required();
  fe->add_option("--pole-margin", fe_margin, "distance kept from poles");
  fe->add_option("--out", fe_out, "also write file.json (JSON lines) or file.csv");

  CaseArgs tn_case;
  TnArgs tn_args;
  std::string tn_s, tn_t;
  int tn_depth = 1;
  auto* tn = app.add_subcommand("continue-tn", "continue T_n(s, t) by integration by parts");
  tn_case.attach(tn);
  tn->add_option("--s", tn_s, "s (a+bi)")->required();
  tn->add_option("--t", tn_t, "t (a+bi)")->required();
  tn->add_option("--depth", tn_depth, "number of continuation steps (0 = direct)");
  tn->add_option("--a", tn_args.a, "comma list of a_j (default 1)");
  tn->add_option("--b", tn_args.b, "comma list of b_j (default 0)");
  tn->add_option("--c", tn_args.c, "comma list of c_j (default 0)");
  tn->add_option("--signed", tn_args.p, "comma list of indices in the sign factor, or 'none' (default all)");

  std::string herm_s;
  std::optional<std::string> herm_t, herm_grid;
  auto* herm = app.add_subcommand("herm", "hermitian form at rank one");
  herm->add_option("--s", herm_s, "s (a+bi)")->required();
  herm->add_option("--t", herm_t, "t (a+bi); omitted means t = s");
  herm->add_option("--grid", herm_grid, "t grid reMin:reMax:step[,im]");

  CaseArgs cal_case;
  auto* cal = app.add_subcommand("calibrate", "polar-formula constant from the Gaussian mass");
  cal_case.attach(cal);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (common.threads >= 0) set_thread_limit(common.threads);
    if (*tables) return cmd_tables(as_json, out);
    if (*zeta) return cmd_zeta(zeta_case, zeta_fn, zeta_t, zeta_method, common, out);
    if (*fe) return cmd_verify_fe(fe_case, fe_fn, fe_grid, fe_margin, fe_out, common, out);
    if (*tn) return cmd_continue_tn(tn_case, tn_s, tn_t, tn_depth, tn_args, common, out);
    if (*herm) return cmd_herm(herm_s, herm_t, herm_grid, common, out);
    if (*cal) return cmd_calibrate(cal_case, common, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace pvs
