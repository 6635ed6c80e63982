#include "doctest.h"
#include "pvszeta/structure_tables.hpp"

#include "pvszeta/common.hpp"

using namespace pvs;

namespace {

StructureConstants row(int id, std::optional<int> rank = {}, std::optional<int> p = {}, std::optional<int> q = {}) {
  GroupCase g = GroupCase::row(id);
  g.rank = rank;
  g.p = p;
  g.q = q;
  return lookup_case(g);
}

}  // namespace

TEST_CASE("GL(2n,R) at n=2") {
  const StructureConstants c = row(1, 2);
  CHECK(c.n == 2);
  CHECK(c.m() == 4);
  CHECK(c.d == HalfInt::from_int(1));
  CHECK(c.e == 0);
  CHECK(c.invariant_kind == InvariantKind::AbsDet);
}

TEST_CASE("O(3,3) is a quadratic form on R^4") {
  const StructureConstants c = row(4, {}, 3, 3);
  CHECK(c.n == 2);
  CHECK(c.m() == 4);
  CHECK(c.d.value() == 1.0);
  CHECK(c.e == 0);
  CHECK(c.invariant_kind == InvariantKind::QuadraticForm);
}

TEST_CASE("O(p,q) with p+q odd has half-integer d") {
  const StructureConstants c = row(4, {}, 3, 4);
  CHECK(c.d.twice == 3);
  CHECK_FALSE(c.d.is_integer());
  CHECK(c.m() == 5);
}

TEST_CASE("SO(4,1) uses m = e+1") {
  const StructureConstants c = row(12, {}, 4);
  CHECK(c.n == 1);
  CHECK(c.d.twice == 0);
  CHECK(c.e == 3);
  CHECK(c.m() == 4);
  CHECK(c.invariant_kind == InvariantKind::EuclideanNorm);
  const ValidationReport r = validate_constants(c, table_m_literal(c));
  CHECK(r.passed());
  CHECK(r.notes.size() == 1);
}

TEST_CASE("row parameter ranges are enforced") {
  CHECK_THROWS_AS(row(1, 1), ValidationError);
  CHECK_THROWS_AS(row(4, {}, 2, 3), ValidationError);
  CHECK_THROWS_AS(row(13), ValidationError);
  CHECK_THROWS_AS(row(0), ValidationError);
  CHECK_THROWS_AS(row(12), ValidationError);
}

TEST_CASE("dimension identity checks") {
  StructureConstants c;
  c.n = 2;
  c.d = HalfInt::from_int(1);
  c.e = 0;
  CHECK(c.m() == 4);
  CHECK(validate_constants(c).passed());
  CHECK(validate_constants(c, 4).passed());
  CHECK_FALSE(validate_constants(c, 5).passed());

  StructureConstants e7;
  e7.n = 3;
  e7.d = HalfInt::from_int(4);
  e7.e = 0;
  CHECK(e7.m() == 27);
  CHECK(validate_constants(e7, 27).passed());
}

TEST_CASE("negative multiplicities fail validation") {
  StructureConstants c;
  c.n = 2;
  c.d = HalfInt{-2};
  CHECK_FALSE(validate_constants(c).passed());
}

TEST_CASE("every representative row validates against the table column") {
  int rows = 0;
  int notes = 0;
  for (const GroupCase& g : representative_cases()) {
    const StructureConstants c = lookup_case(g);
    const ValidationReport r = validate_constants(c, table_m_literal(c));
    INFO("case " << c.case_id);
    CHECK(r.passed());
    CHECK(c.m() == doctest::Approx(c.n * (c.d.value() * (c.n - 1) + c.e + 1)));
    notes += static_cast<int>(r.notes.size());
    ++rows;
  }
  CHECK(rows == 12);
  CHECK(notes == 1);
}

TEST_CASE("lookup is pure") {
  for (const GroupCase& g : representative_cases()) {
    const StructureConstants a = lookup_case(g);
    const StructureConstants b = lookup_case(g);
    CHECK(a.n == b.n);
    CHECK(a.d == b.d);
    CHECK(a.e == b.e);
    CHECK(a.group_label == b.group_label);
    CHECK(a.invariant_kind == b.invariant_kind);
  }
}

TEST_CASE("kinds per row") {
  CHECK(row(2, 2).invariant_kind == InvariantKind::Pfaffian);
  CHECK(row(3).invariant_kind == InvariantKind::PolarOnly);
  CHECK(row(9, {}, 5).invariant_kind == InvariantKind::PolarOnly);
  CHECK(row(11, 2).invariant_kind == InvariantKind::PolarOnly);
}
