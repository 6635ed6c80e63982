#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pvs {

enum class InvariantKind { AbsDet, Pfaffian, QuadraticForm, EuclideanNorm, PolarOnly };

std::string to_string(InvariantKind kind);

/// Exact half-integer, stored as numerator over 2.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_int(int v) { return HalfInt{2 * v}; }
  double value() const { return twice / 2.0; }
  bool is_integer() const { return twice % 2 == 0; }
  bool operator==(const HalfInt&) const = default;
};

/// One row of the group table, optionally parameterized.
/// Rows 1,2,5,6,7,10,11 take `rank`; row 4 takes (p, q); rows 9 and 12 take p.
/// `custom` rows carry an explicit (n, d, e) triple.
struct GroupCase {
  int case_id = 0;  // 1..12, ignored when custom
  std::optional<int> rank;
  std::optional<int> p;
  std::optional<int> q;
  bool custom = false;
  int custom_n = 0;
  HalfInt custom_d;
  int custom_e = 0;

  static GroupCase row(int id) {
    GroupCase g;
    g.case_id = id;
    return g;
  }
  static GroupCase synthetic(int n, HalfInt d, int e) {
    GroupCase g;
    g.custom = true;
    g.custom_n = n;
    g.custom_d = d;
    g.custom_e = e;
    return g;
  }
};

struct StructureConstants {
  int n = 1;
  HalfInt d;
  int e = 0;
  InvariantKind invariant_kind = InvariantKind::PolarOnly;
  std::string group_label;
  int case_id = 0;  // 0 for custom
  std::optional<int> p;
  std::optional<int> q;

  /// m = n (d (n-1) + e + 1), always recomputed.
  int m() const;
  double m_over_n() const { return static_cast<double>(m()) / n; }
};

StructureConstants lookup_case(const GroupCase& c);

/// Literal value of the dimension column of the table for a parameterized row.
int table_m_literal(const StructureConstants& c);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> notes;
  bool passed() const;
};

/// Checks the dimension identity and sign constraints. `claimed_m` (if given)
/// is compared against the identity.
ValidationReport validate_constants(const StructureConstants& c,
                                    std::optional<int> claimed_m = std::nullopt);

/// All twelve rows at a representative parameter choice.
std::vector<GroupCase> representative_cases();

}  // namespace pvs
