#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dhp/modmath.hpp"

namespace dhp {

enum class FieldKind { kPrime, kBinary };

/// Published values for one curve row: log2 sqrt|E|, log2 M, log2 n, log2 T_DH.
struct TableValues {
  double log2_sqrt_e = 0;
  double log2_m = 0;
  double log2_n = 0;
  double log2_tdh = 0;

  std::array<double, 4> as_array() const { return {log2_sqrt_e, log2_m, log2_n, log2_tdh}; }
};

struct CurveRecord {
  std::string name;
  FieldKind field_kind = FieldKind::kPrime;
  /// Group order (prime-field curves) or largest prime divisor of the order (binary-field curves).
  BigNat p;
  std::optional<BigNat> d;
  std::optional<BigNat> d_as_printed;
  std::optional<TableValues> expected;
  std::string note;
};

std::vector<CurveRecord> parse_curve_database(std::string_view json_text);
std::vector<CurveRecord> load_curve_database(const std::string& path);
/// The database compiled into the library.
std::vector<CurveRecord> embedded_curve_database();
std::string_view embedded_curve_database_json();

/// Oracle calls to form x^d P: 0 for d = 1, else floor(log2 d) + popcount(d).
BigNat oracle_calls_exact(const BigNat& d);
/// M = 2 (floor(sqrt((p-1)/d)) + floor(sqrt(d))).
BigNat reduction_ops_bound(const BigNat& p, const BigNat& d);
/// log2 T_DH = log2 sqrt(p) - log2 n.
double log2_tdh(const BigNat& p, const BigNat& n);

enum class Agreement { kMatch, kRounding, kMismatch };

inline constexpr double kMatchTolerance = 0.02;
inline constexpr double kRoundingTolerance = 0.10;

Agreement classify_delta(double delta);
std::string_view agreement_name(Agreement a);

struct BoundRow {
  std::string name;
  FieldKind field_kind = FieldKind::kPrime;
  bool available = false;  // false: no usable d, rendered as a dash row
  BigNat p;
  BigNat d;
  BigNat n;
  BigNat m;
  TableValues computed;
  std::optional<TableValues> expected;
  std::array<Agreement, 4> agreement{Agreement::kMatch, Agreement::kMatch, Agreement::kMatch, Agreement::kMatch};
  /// log2 M > log2 sqrt p - 8: the reduction cost is not negligible next to sqrt p.
  bool m_not_negligible = false;
  /// d outside [cbrt p, sqrt p]; expected when the divisor came from the
  /// "largest d below cbrt p" fallback.
  bool d_outside_range = false;
  /// n > 2 floor(log2 d).
  bool exceeds_nominal_call_bound = false;
  std::string note;

  Agreement worst() const;
};

BoundRow compute_row(const CurveRecord& record);
std::vector<BoundRow> table_rows(const std::vector<CurveRecord>& db);

/// Exit status convention shared with the CLI: 0 all match, 2 worst is a
/// rounding discrepancy, 1 any mismatch.
int table_status(const std::vector<BoundRow>& rows);

enum class DivisorPolicy { kSmallestInRange, kMinOracleCalls };

/// kSmallestInRange: smallest divisor of p-1 in [ceil(cbrt p), floor(sqrt p)], else the
/// largest divisor in (1, cbrt p). kMinOracleCalls: the divisor with fewest
/// oracle calls whose M stays below 2^(log2 sqrt p - 8). Ties go to the
/// smaller divisor.
std::optional<BigNat> suggest_divisor(const BigNat& p, const Factorization& p_minus_1, DivisorPolicy policy,
                                      std::size_t cap = 1'000'000);

/// Rendering of the bound tables.
std::string render_markdown(const std::vector<BoundRow>& rows, bool with_diff);
std::string render_csv(const std::vector<BoundRow>& rows, bool with_diff);
std::string render_json(const std::vector<BoundRow>& rows, int indent = 2);

}  // namespace dhp
