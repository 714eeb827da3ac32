#include "dhp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "embedded_data.hpp"

namespace dhp {
namespace {

using nlohmann::json;

std::optional<BigNat> optional_bignat(const json& rec, const char* key) {
  if (!rec.contains(key) || rec.at(key).is_null()) return std::nullopt;
  return parse_bignat(rec.at(key).get<std::string>());
}

}  // namespace

std::vector<CurveRecord> parse_curve_database(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("curve database: ") + e.what());
  }
  if (!doc.contains("curves") || !doc.at("curves").is_array()) {
    throw Error(ErrorCode::kInvalidInput, "curve database needs a top-level \"curves\" array");
  }
  std::vector<CurveRecord> out;
  for (const json& rec : doc.at("curves")) {
    try {
      CurveRecord r;
      r.name = rec.at("name").get<std::string>();
      const std::string kind = rec.at("field_kind").get<std::string>();
      if (kind == "prime") {
        r.field_kind = FieldKind::kPrime;
      } else if (kind == "binary") {
        r.field_kind = FieldKind::kBinary;
      } else {
        throw Error(ErrorCode::kInvalidInput, r.name + ": field_kind must be prime or binary");
      }
      r.p = parse_bignat(rec.at("p").get<std::string>());
      r.d = optional_bignat(rec, "d");
      r.d_as_printed = optional_bignat(rec, "d_as_printed");
      r.note = rec.value("note", std::string{});
      if (rec.contains("expected") && !rec.at("expected").is_null()) {
        const json& e = rec.at("expected");
        r.expected = TableValues{e.at("log2_sqrt_E").get<double>(), e.at("log2_M").get<double>(),
                                 e.at("log2_n").get<double>(), e.at("log2_T_DH").get<double>()};
      }
      if (r.d) {
        const BigNat p_minus_1 = r.p - 1;
        if (*r.d < 1 || !mpz_divisible_p(p_minus_1.get_mpz_t(), r.d->get_mpz_t())) {
          throw Error(ErrorCode::kInvalidDivisor, r.name + ": d does not divide p-1");
        }
      }
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidInput, std::string("curve database record: ") + e.what());
    }
  }
  return out;
}

std::vector<CurveRecord> load_curve_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read curve database " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_database(buf.str());
}

std::string_view embedded_curve_database_json() { return detail::embedded_curve_database(); }

std::vector<CurveRecord> embedded_curve_database() { return parse_curve_database(embedded_curve_database_json()); }

BigNat oracle_calls_exact(const BigNat& d) {
  if (d < 1) throw Error(ErrorCode::kDomainError, "oracle_calls_exact needs d >= 1");
  if (d == 1) return 0;
  return static_cast<unsigned long>((bit_length(d) - 1) + popcount(d));
}

BigNat reduction_ops_bound(const BigNat& p, const BigNat& d) {
  const BigNat p_minus_1 = p - 1;
  if (d < 1 || sgn(p_minus_1) <= 0 || !mpz_divisible_p(p_minus_1.get_mpz_t(), d.get_mpz_t())) {
    throw Error(ErrorCode::kInvalidDivisor, to_decimal(d) + " does not divide p-1");
  }
  return 2 * (isqrt(p_minus_1 / d) + isqrt(d));
}

double log2_tdh(const BigNat& p, const BigNat& n) {
  if (n < 1) throw Error(ErrorCode::kDomainError, "T_DH needs at least one oracle call");
  return log2_approx(p) / 2.0 - log2_approx(n);
}

Agreement classify_delta(double delta) {
  constexpr double kSlack = 1e-9;
  const double a = std::fabs(delta);
  if (a <= kMatchTolerance + kSlack) return Agreement::kMatch;
  if (a <= kRoundingTolerance + kSlack) return Agreement::kRounding;
  return Agreement::kMismatch;
}

std::string_view agreement_name(Agreement a) {
  switch (a) {
    case Agreement::kMatch: return "match";
    case Agreement::kRounding: return "rounding";
    case Agreement::kMismatch: return "mismatch";
  }
  return "unknown";
}

Agreement BoundRow::worst() const {
  if (!available || !expected) return Agreement::kMatch;
  return *std::max_element(agreement.begin(), agreement.end());
}

BoundRow compute_row(const CurveRecord& record) {
  BoundRow row;
  row.name = record.name;
  row.field_kind = record.field_kind;
  row.p = record.p;
  row.expected = record.expected;
  row.note = record.note;
  row.computed.log2_sqrt_e = log2_approx(record.p) / 2.0;
  if (!record.d || *record.d < 2) return row;

  row.available = true;
  row.d = *record.d;
  row.n = oracle_calls_exact(row.d);
  row.m = reduction_ops_bound(record.p, row.d);
  row.computed.log2_m = log2_approx(row.m);
  row.computed.log2_n = log2_approx(row.n);
  row.computed.log2_tdh = row.computed.log2_sqrt_e - row.computed.log2_n;

  row.m_not_negligible = row.computed.log2_m > row.computed.log2_sqrt_e - 8.0;
  row.d_outside_range = row.d < icbrt_ceil(record.p) || row.d > isqrt(record.p);
  row.exceeds_nominal_call_bound = row.n > 2 * static_cast<unsigned long>(bit_length(row.d) - 1);

  if (row.expected) {
    const auto c = row.computed.as_array();
    const auto e = row.expected->as_array();
    for (std::size_t i = 0; i < 4; ++i) row.agreement[i] = classify_delta(c[i] - e[i]);
  }
  return row;
}

std::vector<BoundRow> table_rows(const std::vector<CurveRecord>& db) {
  std::vector<BoundRow> rows;
  rows.reserve(db.size());
  for (const auto& r : db) rows.push_back(compute_row(r));
  return rows;
}

int table_status(const std::vector<BoundRow>& rows) {
  Agreement worst = Agreement::kMatch;
  for (const auto& r : rows) worst = std::max(worst, r.worst());
  switch (worst) {
    case Agreement::kMatch: return 0;
    case Agreement::kRounding: return 2;
    case Agreement::kMismatch: return 1;
  }
  return 1;
}

std::optional<BigNat> suggest_divisor(const BigNat& p, const Factorization& p_minus_1, DivisorPolicy policy,
                                      std::size_t cap) {
  if (!p_minus_1.complete) throw Error(ErrorCode::kIncompleteFactorization, "divisor policy needs the full factorization of p-1");
  if (p < 3) return std::nullopt;

  if (policy == DivisorPolicy::kSmallestInRange) {
    const BigNat lo = icbrt_ceil(p);
    const BigNat hi = isqrt(p);
    if (lo <= hi) {
      const DivisorList in_range = divisors_in_range(p_minus_1, lo, hi, cap);
      if (!in_range.values.empty()) return in_range.values.front();
    }
    if (lo <= 2) return std::nullopt;
    const DivisorList below = divisors_in_range(p_minus_1, 2, lo - 1, cap);
    if (below.values.empty()) return std::nullopt;
    return below.values.back();
  }

  const double limit = log2_approx(p) / 2.0 - 8.0;
  const DivisorList all = divisors_in_range(p_minus_1, 2, p - 1, cap);
  std::optional<BigNat> best;
  BigNat best_calls;
  for (const BigNat& d : all.values) {
    if (log2_approx(reduction_ops_bound(p, d)) > limit) continue;
    const BigNat calls = oracle_calls_exact(d);
    if (!best || calls < best_calls) {
      best = d;
      best_calls = calls;
    }
  }
  return best;
}

}  // namespace dhp
