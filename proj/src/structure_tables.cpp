#include "pvszeta/structure_tables.hpp"

#include <sstream>

#include "pvszeta/common.hpp"

namespace pvs {

std::string to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::AbsDet: return "abs-det";
    case InvariantKind::Pfaffian: return "pfaffian";
    case InvariantKind::QuadraticForm: return "quadratic-form";
    case InvariantKind::EuclideanNorm: return "euclidean-norm";
    case InvariantKind::PolarOnly: return "polar-only";
  }
  return "unknown";
}

int StructureConstants::m() const {
  // n (d(n-1) + e + 1) with d = twice/2; the product n(n-1) is always even or
  // twice is even, so the result is integral for every table row.
  const int numerator = n * (d.twice * (n - 1) + 2 * (e + 1));
  return numerator / 2;
}

namespace {

int require(const std::optional<int>& v, const char* name, int case_id) {
  if (!v) {
    throw ValidationError("case " + std::to_string(case_id) + " requires --" + name);
  }
  return *v;
}

void require_at_least(int value, int bound, const std::string& what, int case_id) {
  if (value < bound) {
    throw ValidationError("case " + std::to_string(case_id) + ": " + what + " must be >= " +
                          std::to_string(bound) + " (got " + std::to_string(value) + ")");
  }
}

void forbid(const std::optional<int>& v, const char* name, int case_id) {
  if (v) {
    throw ValidationError("case " + std::to_string(case_id) + " takes no --" + name);
  }
}

}  // namespace

StructureConstants lookup_case(const GroupCase& gc) {
  StructureConstants c;
  if (gc.custom) {
    if (gc.custom_n < 1 || gc.custom_n > 3) throw ValidationError("custom rank must be in 1..3");
    if (gc.custom_d.twice < 0 || gc.custom_e < 0) throw ValidationError("custom d, e must be >= 0");
    c.n = gc.custom_n;
    c.d = gc.custom_d;
    c.e = gc.custom_e;
    c.invariant_kind = InvariantKind::PolarOnly;
    std::ostringstream label;
    label << "custom(n=" << c.n << ",d=" << c.d.value() << ",e=" << c.e << ")";
    c.group_label = label.str();
    return c;
  }

  const int id = gc.case_id;
  c.case_id = id;
  auto rank_row = [&](int min_rank, HalfInt d, int e, InvariantKind kind, const std::string& label) {
    forbid(gc.p, "p", id);
    forbid(gc.q, "q", id);
    const int n = require(gc.rank, "rank", id);
    require_at_least(n, min_rank, "rank", id);
    c.n = n;
    c.d = d;
    c.e = e;
    c.invariant_kind = kind;
    c.group_label = label + " (n=" + std::to_string(n) + ")";
  };
  auto fixed_row = [&](int n, HalfInt d, int e, const std::string& label) {
    forbid(gc.p, "p", id);
    forbid(gc.q, "q", id);
    forbid(gc.rank, "rank", id);
    c.n = n;
    c.d = d;
    c.e = e;
    c.invariant_kind = InvariantKind::PolarOnly;
    c.group_label = label;
  };

  switch (id) {
    case 1: rank_row(2, HalfInt::from_int(1), 0, InvariantKind::AbsDet, "GL(2n,R)"); break;
    case 2: rank_row(1, HalfInt::from_int(2), 0, InvariantKind::Pfaffian, "O(2n,2n)"); break;
    case 3: fixed_row(3, HalfInt::from_int(4), 0, "E7(7)"); break;
    case 4: {
      forbid(gc.rank, "rank", id);
      const int p = require(gc.p, "p", id);
      const int q = require(gc.q, "q", id);
      require_at_least(p, 3, "p", id);
      require_at_least(q, 3, "q", id);
      c.n = 2;
      c.d = HalfInt{p + q - 4};
      c.e = 0;
      c.p = p;
      c.q = q;
      c.invariant_kind = InvariantKind::QuadraticForm;
      c.group_label = "O(" + std::to_string(p) + "," + std::to_string(q) + ")";
      break;
    }
    case 5: rank_row(1, HalfInt::from_int(1), 1, InvariantKind::PolarOnly, "Sp(n,C)"); break;
    case 6: rank_row(1, HalfInt::from_int(2), 1, InvariantKind::PolarOnly, "SL(2n,C)"); break;
    case 7: rank_row(1, HalfInt::from_int(4), 1, InvariantKind::PolarOnly, "SO(4n,C)"); break;
    case 8: fixed_row(3, HalfInt::from_int(8), 1, "E7(C)"); break;
    case 9: {
      forbid(gc.rank, "rank", id);
      forbid(gc.q, "q", id);
      const int p = require(gc.p, "p", id);
      // d = p - 4 must be nonnegative.
      require_at_least(p, 4, "p", id);
      c.n = 2;
      c.d = HalfInt::from_int(p - 4);
      c.e = 1;
      c.p = p;
      c.invariant_kind = InvariantKind::PolarOnly;
      c.group_label = "SO(" + std::to_string(p) + ",C)";
      break;
    }
    case 10: rank_row(1, HalfInt::from_int(2), 2, InvariantKind::PolarOnly, "Sp(n,n)"); break;
    case 11: rank_row(1, HalfInt::from_int(4), 3, InvariantKind::PolarOnly, "GL(2n,H)"); break;
    case 12: {
      forbid(gc.rank, "rank", id);
      forbid(gc.q, "q", id);
      const int p = require(gc.p, "p", id);
      require_at_least(p, 1, "p", id);
      c.n = 1;
      c.d = HalfInt::from_int(0);
      c.e = p - 1;
      c.p = p;
      c.invariant_kind = InvariantKind::EuclideanNorm;
      c.group_label = "SO(" + std::to_string(p) + ",1)";
      break;
    }
    default:
      throw ValidationError("unknown case id " + std::to_string(id) + " (expected 1..12)");
  }
  return c;
}

int table_m_literal(const StructureConstants& c) {
  const int n = c.n;
  switch (c.case_id) {
    case 1: return n * n;
    case 2: return n * (2 * n - 1);
    case 3: return 27;
    case 4: return *c.p + *c.q - 2;
    case 5: return n * (n + 1);
    case 6: return 2 * n * n;
    case 7: return 2 * n * (2 * n - 1);
    case 8: return 54;
    case 9: return 2 * (*c.p - 2);
    case 10: return n * (2 * n + 1);
    case 11: return 4 * n * n;
    case 12: return *c.p;
    default: return c.m();
  }
}

bool ValidationReport::passed() const {
  for (const auto& ch : checks) {
    if (!ch.passed) return false;
  }
  return true;
}

ValidationReport validate_constants(const StructureConstants& c, std::optional<int> claimed_m) {
  ValidationReport r;
  const int m = c.m();
  {
    std::ostringstream os;
    os << "m = n(d(n-1)+(e+1)) = " << m;
    if (claimed_m) os << ", claimed " << *claimed_m;
    r.checks.push_back({"dimension-identity", !claimed_m || *claimed_m == m, os.str()});
  }
  r.checks.push_back({"rank-positive", c.n >= 1, "n = " + std::to_string(c.n)});
  r.checks.push_back({"d-nonnegative", c.d.twice >= 0, "d = " + std::to_string(c.d.value())});
  r.checks.push_back({"e-nonnegative", c.e >= 0, "e = " + std::to_string(c.e)});
  {
    // Half-integer d only occurs for O(p,q); anything else must be integral.
    const bool ok = c.d.is_integer() || c.case_id == 4 || c.case_id == 0;
    r.checks.push_back({"d-half-integer-rows", ok, "d = " + std::to_string(c.d.value())});
  }
  if (c.case_id != 0) {
    const int lit = table_m_literal(c);
    r.checks.push_back({"table-m-column", lit == m,
                        "table lists m = " + std::to_string(lit) + ", identity gives " + std::to_string(m)});
  }
  if (c.case_id == 12) {
    r.notes.push_back("row 12: the Jordan-algebra table lists V = R^{p-1} (dim " +
                      std::to_string(*c.p - 1) + ") while the dimension identity gives m = e+1 = " +
                      std::to_string(m) + "; m = " + std::to_string(m) + " is used");
  }
  return r;
}

std::vector<GroupCase> representative_cases() {
  std::vector<GroupCase> rows;
  for (int id = 1; id <= 12; ++id) {
    GroupCase g = GroupCase::row(id);
    switch (id) {
      case 3:
      case 8: break;
      case 4: g.p = 3; g.q = 4; break;
      case 9: g.p = 5; break;
      case 12: g.p = 4; break;
      default: g.rank = 2; break;
    }
    rows.push_back(g);
  }
  return rows;
}

}  // namespace pvs
