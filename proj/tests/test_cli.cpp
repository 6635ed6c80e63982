#include "doctest.h"
#include "pvszeta/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pvszeta/serialization.hpp"

using namespace pvs;

namespace {

struct Run {
  int code = 0;
  std::vector<Json> records;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("{\"", 0) == 0) r.records.push_back(Json::parse(line));
  }
  return r;
}

const Json* find(const Run& r, const std::string& kind) {
  for (const Json& j : r.records) {
    if (j.value("record", "") == kind) return &j;
  }
  return nullptr;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pvszeta_test_" + name);
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(parse_complex("2") == Complex(2.0, 0.0));
  CHECK(parse_complex("-1.5+0.25i") == Complex(-1.5, 0.25));
  CHECK(parse_complex("3-2i") == Complex(3.0, -2.0));
  CHECK(parse_complex("1e-3+1e2i") == Complex(1e-3, 100.0));
  CHECK(parse_complex("0.5i") == Complex(0.0, 0.5));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("2+i") == Complex(2.0, 1.0));
  CHECK_THROWS_AS(parse_complex("abc"), ValidationError);
  CHECK_THROWS_AS(parse_complex("1+2j"), ValidationError);
  CHECK_THROWS_AS(parse_complex(""), ValidationError);
}

TEST_CASE("Gaussian polynomial JSON round trip") {
  GaussPoly f = GaussPoly::gaussian(2) + GaussPoly::monomial(2, {1, 2}, GaussRational(Rational(-3, 7), Rational(5)), 2);
  using boost::multiprecision::cpp_int;
  const cpp_int big = cpp_int(1) << 80;
  f = f + GaussPoly::monomial(2, {0, 1}, GaussRational(Rational(big, 3), Rational(0)));
  const Json j = to_json(f);
  const GaussPoly g = gauss_poly_from_json(j);
  CHECK(to_json(g) == j);
  const double x[2] = {0.3, -0.8};
  CHECK(std::abs(gp_eval(f, x) - gp_eval(g, x)) < 1e-12 * std::abs(gp_eval(f, x)));
  CHECK_THROWS_AS(gauss_poly_from_json(Json::parse(R"({"terms":[]})")), ValidationError);
  CHECK_THROWS_AS(gauss_poly_from_json(Json::parse(R"({"dim":2,"terms":[{"alpha":[1]}]})")), ValidationError);
  CHECK_THROWS_AS(gauss_poly_from_json(Json::parse(R"({"dim":1,"terms":[{"alpha":[0],"re_den":0}]})")),
                  ValidationError);
}

TEST_CASE("FE CSV layout") {
  FEReport r;
  FEPoint ok;
  ok.t = Complex(0.5, 0.1);
  ok.lhs = 1.0;
  ok.rhs = 1.0;
  FEPoint skipped;
  skipped.t = 0.0;
  skipped.skipped = true;
  r.points = {ok, skipped};
  std::ostringstream os;
  write_fe_csv(os, r);
  std::istringstream in(os.str());
  std::string header, a, b;
  std::getline(in, header);
  std::getline(in, a);
  std::getline(in, b);
  CHECK(header == "re_t,im_t,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,skipped");
  CHECK(a == "0.5,0.10000000000000001,1,0,1,0,0,0");
  CHECK(b == "0,0,nan,nan,nan,nan,nan,1");
}

TEST_CASE("tables") {
  const Run r = run({"tables"});
  CHECK(r.code == kExitOk);
  std::size_t notes = 0;
  for (std::size_t pos = r.out.find("note:"); pos != std::string::npos; pos = r.out.find("note:", pos + 1)) ++notes;
  CHECK(notes == 1);
  const Run j = run({"tables", "--json"});
  CHECK(j.code == kExitOk);
  const Json doc = Json::parse(j.out);
  REQUIRE(doc.contains("rows"));
  CHECK(doc.at("rows").size() == 12);
}

TEST_CASE("zeta command") {
  SUBCASE("Gaussian at t = 0 has unit mass") {
    const Run r = run({"zeta", "--case", "12", "--p", "2", "--function", "gaussian", "--t", "0"});
    CHECK(r.code == kExitOk);
    const Json* cfg = find(r, "config");
    REQUIRE(cfg != nullptr);
    CHECK(cfg->at("constants").at("m") == 2);
    CHECK(cfg->contains("quadrature"));
    const Json* res = find(r, "result");
    REQUIRE(res != nullptr);
    CHECK(res->at("value_re").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res->at("path") == "direct");
  }
  SUBCASE("continued value") {
    const Run r = run({"zeta", "--case", "12", "--p", "1", "--function", "gaussian", "--t", "-1.5+0.2i"});
    CHECK(r.code == kExitOk);
    REQUIRE(find(r, "result") != nullptr);
    CHECK(find(r, "result")->at("path") == "continued");
  }
  SUBCASE("pole") {
    const Run r = run({"zeta", "--case", "12", "--p", "1", "--function", "gaussian", "--t", "-1"});
    CHECK(r.code == kExitNumerical);
    REQUIRE(find(r, "error") != nullptr);
    CHECK(find(r, "error")->at("kind") == "pole");
  }
  SUBCASE("validation failures") {
    CHECK(run({"zeta", "--case", "1", "--rank", "1", "--function", "gaussian", "--t", "1"}).code == kExitValidation);
    CHECK(run({"zeta", "--case", "13", "--function", "gaussian", "--t", "1"}).code == kExitValidation);
    CHECK(run({"zeta", "--case", "12", "--p", "2", "--function", "gaussian", "--t", "x"}).code == kExitValidation);
    CHECK(run({"zeta", "--case", "12", "--p", "2", "--function", "cube", "--t", "1"}).code == kExitValidation);
    CHECK(run({"frobnicate"}).code == kExitValidation);
  }
  SUBCASE("polynomial from a file") {
    const auto path = scratch("poly.json");
    {
      std::ofstream f(path);
      f << to_json(GaussPoly::gaussian(1)).dump();
    }
    const Run r = run({"zeta", "--case", "12", "--p", "1", "--function", "gp:" + path.string(), "--t", "2"});
    CHECK(r.code == kExitOk);
    REQUIRE(find(r, "result") != nullptr);
    CHECK(find(r, "result")->at("value_re").get<double>() == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-10));
    std::filesystem::remove(path);
    CHECK(run({"zeta", "--case", "12", "--p", "1", "--function", "gp:" + path.string(), "--t", "2"}).code ==
          kExitValidation);
  }
}

TEST_CASE("verify-fe command") {
  const auto csv = scratch("fe.csv");
  const Run r = run({"verify-fe", "--case", "12", "--p", "2", "--function", "gaussian", "--t-grid", "-3:3:0.5",
                     "--out", csv.string()});
  CHECK(r.code == kExitOk);
  const Json* summary = find(r, "summary");
  REQUIRE(summary != nullptr);
  CHECK(summary->at("max_rel_err").get<double>() < 1e-10);
  int points = 0;
  for (const Json& j : r.records) points += j.value("record", "") == "point";
  CHECK(points == 13);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == kFECsvHeader);
  std::filesystem::remove(csv);
  CHECK(run({"verify-fe", "--case", "12", "--p", "2", "--function", "gaussian", "--t-grid", "3:-3:1"}).code ==
        kExitValidation);
}

TEST_CASE("continue-tn command") {
  const Run r = run({"continue-tn", "--case", "12", "--p", "1", "--s", "3+0.2i", "--t", "-1.4+0.3i", "--depth", "1"});
  CHECK(r.code == kExitOk);
  REQUIRE(find(r, "result") != nullptr);
}

TEST_CASE("herm command") {
  const Run pos = run({"herm", "--s", "0.5"});
  CHECK(pos.code == kExitOk);
  REQUIRE(find(pos, "positivity") != nullptr);
  CHECK(find(pos, "positivity")->at("positive") == true);
  const Run id = run({"herm", "--s", "1.5", "--t", "0.5"});
  CHECK(id.code == kExitOk);
  CHECK(run({"herm", "--s", "0.5", "--t", "2"}).code == kExitNumerical);
}

TEST_CASE("calibrate command") {
  const Run r = run({"--samples", "100000", "calibrate", "--case", "12", "--p", "3"});
  CHECK(r.code == kExitOk);
  REQUIRE(find(r, "result") != nullptr);
  CHECK(find(r, "result")->at("value").get<double>() == doctest::Approx(4 * kPi).epsilon(1e-10));
}

TEST_CASE("installed binary") {
  const std::string cmd = std::string(PVSZETA_CLI_PATH) + " zeta --case 12 --p 2 --function gaussian --t 0 > " +
                          scratch("bin.out").string();
  CHECK(std::system(cmd.c_str()) == 0);
  std::filesystem::remove(scratch("bin.out"));
}
