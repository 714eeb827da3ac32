#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "dhp/bounds.hpp"

namespace dhp {
namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string signed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.3f", v);
  return buf;
}

std::string flags_of(const BoundRow& row) {
  if (!row.available) return "not_available";
  std::string out;
  auto add = [&out](const char* f) {
    if (!out.empty()) out += ';';
    out += f;
  };
  if (row.m_not_negligible) add("m_not_negligible");
  if (row.d_outside_range) add("d_outside_range");
  if (row.exceeds_nominal_call_bound) add("exceeds_nominal_call_bound");
  return out;
}

void markdown_table(std::ostringstream& os, const std::vector<BoundRow>& rows, FieldKind kind, bool with_diff) {
  const bool prime = kind == FieldKind::kPrime;
  os << (prime ? "Curves over prime fields\n\n" : "Curves over binary fields\n\n");
  os << (prime ? "| SECP curve" : "| SECT curve") << " | log2 sqrt|E| | log2 M | log2 n | log2 T_DH |";
  if (with_diff) os << " delta sqrt|E| | delta M | delta n | delta T_DH | status |";
  os << "\n|---|---:|---:|---:|---:|";
  if (with_diff) os << "---:|---:|---:|---:|---|";
  os << '\n';
  for (const auto& row : rows) {
    if (row.field_kind != kind) continue;
    os << "| " << row.name << " |";
    if (!row.available) {
      os << " - | - | - | - |";
      if (with_diff) os << " - | - | - | - | not available |";
      os << '\n';
      continue;
    }
    const auto c = row.computed.as_array();
    for (double v : c) os << ' ' << fixed2(v) << " |";
    if (with_diff) {
      if (row.expected) {
        const auto e = row.expected->as_array();
        for (std::size_t i = 0; i < 4; ++i) {
          os << ' ' << signed3(c[i] - e[i]);
          if (row.agreement[i] != Agreement::kMatch) os << " (" << agreement_name(row.agreement[i]) << ")";
          os << " |";
        }
        os << ' ' << agreement_name(row.worst()) << " |";
      } else {
        os << " - | - | - | - | no reference |";
      }
    }
    os << '\n';
  }
  os << '\n';
}

}  // namespace

std::string render_markdown(const std::vector<BoundRow>& rows, bool with_diff) {
  std::ostringstream os;
  markdown_table(os, rows, FieldKind::kPrime, with_diff);
  markdown_table(os, rows, FieldKind::kBinary, with_diff);
  if (with_diff) {
    for (const auto& row : rows) {
      if (!row.note.empty()) os << "note " << row.name << ": " << row.note << '\n';
    }
  }
  return os.str();
}

std::string render_csv(const std::vector<BoundRow>& rows, bool with_diff) {
  std::ostringstream os;
  os << "name,log2_sqrt_p,log2_M,log2_n,log2_TDH,flags";
  if (with_diff) os << ",delta_sqrt_p,delta_M,delta_n,delta_TDH,status";
  os << '\n';
  for (const auto& row : rows) {
    os << row.name << ',';
    if (!row.available) {
      os << "-,-,-,-," << flags_of(row);
      if (with_diff) os << ",-,-,-,-,not_available";
      os << '\n';
      continue;
    }
    const auto c = row.computed.as_array();
    for (double v : c) os << fixed2(v) << ',';
    os << flags_of(row);
    if (with_diff) {
      if (row.expected) {
        const auto e = row.expected->as_array();
        for (std::size_t i = 0; i < 4; ++i) os << ',' << signed3(c[i] - e[i]);
        os << ',' << agreement_name(row.worst());
      } else {
        os << ",-,-,-,-,no_reference";
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string render_json(const std::vector<BoundRow>& rows, int indent) {
  using nlohmann::ordered_json;
  ordered_json out = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r;
    r["name"] = row.name;
    r["field_kind"] = row.field_kind == FieldKind::kPrime ? "prime" : "binary";
    r["available"] = row.available;
    r["p"] = to_decimal(row.p);
    if (row.available) {
      r["d"] = to_decimal(row.d);
      r["n"] = to_decimal(row.n);
      r["M"] = to_decimal(row.m);
      r["log2_sqrt_p"] = row.computed.log2_sqrt_e;
      r["log2_M"] = row.computed.log2_m;
      r["log2_n"] = row.computed.log2_n;
      r["log2_TDH"] = row.computed.log2_tdh;
      r["flags"] = {
          {"m_not_negligible", row.m_not_negligible},
          {"d_outside_range", row.d_outside_range},
          {"exceeds_nominal_call_bound", row.exceeds_nominal_call_bound},
      };
    } else {
      r["d"] = nullptr;
    }
    if (row.expected) {
      r["expected"] = {
          {"log2_sqrt_p", row.expected->log2_sqrt_e},
          {"log2_M", row.expected->log2_m},
          {"log2_n", row.expected->log2_n},
          {"log2_TDH", row.expected->log2_tdh},
      };
      ordered_json agreement = ordered_json::array();
      for (Agreement a : row.agreement) agreement.push_back(agreement_name(a));
      r["agreement"] = agreement;
      r["status"] = agreement_name(row.worst());
    } else {
      r["expected"] = nullptr;
    }
    if (!row.note.empty()) r["note"] = row.note;
    out.push_back(std::move(r));
  }
  return out.dump(indent);
}

}  // namespace dhp
