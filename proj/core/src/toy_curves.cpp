#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dhp/groups.hpp"
#include "embedded_data.hpp"

namespace dhp {
namespace {

using nlohmann::json;

BigNat bignat_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorCode::kInvalidInput, std::string("curve record lacks field '") + key + "'");
  const json& v = obj.at(key);
  if (v.is_string()) return parse_bignat(v.get<std::string>());
  if (v.is_number_unsigned()) return BigNat(std::to_string(v.get<std::uint64_t>()), 10);
  throw Error(ErrorCode::kInvalidInput, std::string("field '") + key + "' must be a decimal string or unsigned integer");
}

CurveParams curve_from_json(const json& obj) {
  CurveParams out;
  out.name = obj.value("name", std::string{});
  out.q = bignat_field(obj, "q");
  out.a = bignat_field(obj, "A");
  out.b = bignat_field(obj, "B");
  out.gx = bignat_field(obj, "Gx");
  out.gy = bignat_field(obj, "Gy");
  out.order = bignat_field(obj, "p");
  return out;
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Exhaustive search for y^2 = x^3 + Ax + B over F_q with exactly `order` points.
std::optional<CurveParams> search_prime_order_curve(std::uint64_t order, std::uint64_t seed) {
  if (order < 5) return std::nullopt;
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(order)) + 2.0);
  const std::uint64_t q_lo = order > span + 5 ? order - span : 5;
  const std::uint64_t q_hi = order + span;

  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = q_lo; q <= q_hi; ++q) {
    if (is_prime(BigNat(static_cast<unsigned long>(q)))) primes.push_back(q);
  }
  if (primes.empty()) return std::nullopt;

  constexpr int kAttempts = 200'000;
  std::vector<std::int8_t> chi;
  std::uint64_t chi_for = 0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const std::uint64_t q = primes[rng() % primes.size()];
    if (chi_for != q) {
      chi.assign(q, -1);
      chi[0] = 0;
      for (std::uint64_t y = 1; y < q; ++y) chi[y * y % q] = 1;
      chi_for = q;
    }
    const std::uint64_t a = rng() % q;
    const std::uint64_t b = rng() % q;
    if ((4 * powmod64(a, 3, q) + 27 * (b * b % q)) % q == 0) continue;
    std::uint64_t points = 1;
    for (std::uint64_t x = 0; x < q; ++x) {
      points += static_cast<std::uint64_t>(1 + chi[(x * x % q * x + a * x + b) % q]);
    }
    if (points != order) continue;
    for (std::uint64_t x = 0; x < q; ++x) {
      const std::uint64_t rhs = (x * x % q * x + a * x + b) % q;
      if (chi[rhs] != 1) continue;
      for (std::uint64_t y = 1; y < q; ++y) {
        if (y * y % q != rhs) continue;
        CurveParams c;
        c.name = "searched-p" + std::to_string(order);
        c.q = BigNat(static_cast<unsigned long>(q));
        c.a = BigNat(static_cast<unsigned long>(a));
        c.b = BigNat(static_cast<unsigned long>(b));
        c.gx = BigNat(static_cast<unsigned long>(x));
        c.gy = BigNat(static_cast<unsigned long>(y));
        c.order = BigNat(static_cast<unsigned long>(order));
        return c;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CurveParams parse_curve_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("curve JSON: ") + e.what());
  }
  return curve_from_json(doc);
}

CurveParams load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_json(buf.str());
}

std::vector<CurveParams> toy_curve_catalog() {
  const json doc = json::parse(detail::embedded_toy_curves());
  std::vector<CurveParams> out;
  for (const auto& c : doc.at("curves")) out.push_back(curve_from_json(c));
  return out;
}

std::optional<CurveParams> find_toy_curve(const BigNat& order, std::uint64_t seed) {
  for (auto& c : toy_curve_catalog()) {
    if (c.order == order) return c;
  }
  if (order > (BigNat(1) << 16) || !is_prime(order)) return std::nullopt;
  return search_prime_order_curve(order.get_ui(), seed);
}

MultSubgroupParams find_mult_subgroup(const BigNat& order) {
  if (!is_prime(order, 64)) throw Error(ErrorCode::kInvalidOrder, to_decimal(order) + " is not prime");
  for (BigNat k = 2;; k += 2) {
    const BigNat q = k * order + 1;
    if (!is_prime(q, 64)) continue;
    for (BigNat h = 2; h < q; ++h) {
      if (mod_pow(h, k, q) != 1) return {q, h};
    }
  }
}

}  // namespace dhp
