#include "selftest.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "dhp/bounds.hpp"
#include "dhp/groups.hpp"
#include "dhp/implicit.hpp"
#include "dhp/oracle.hpp"
#include "dhp/reduction.hpp"

namespace dhp::cli {
namespace {

// A suite returns an empty string on success, otherwise the violated invariant.
using Suite = std::function<std::string()>;

struct Plan {
  std::vector<unsigned long> exhaustive_primes;  // every d, every x on zp
  std::vector<unsigned long> sampled_primes;     // every d, sampled x on mult and ec
  std::size_t samples;
  std::size_t law_samples;
};

std::vector<CyclicGroup> backends_for(const BigNat& p) {
  std::vector<CyclicGroup> out;
  out.push_back(CyclicGroup::zp_additive(p));
  const MultSubgroupParams m = find_mult_subgroup(p);
  out.push_back(CyclicGroup::mult_subgroup(m.q, p, m.h));
  if (auto c = find_toy_curve(p)) out.push_back(CyclicGroup::weierstrass(*c));
  return out;
}

std::vector<BigNat> all_divisors(const BigNat& n) {
  const Factorization f = factorize(n);
  return divisors_in_range(f, 1, n).values;
}

std::string modmath_suite(const Plan& plan, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < plan.law_samples * 10; ++i) {
    const BigNat n = BigNat(static_cast<unsigned long>(rng() % (1u << 20))) + 2;
    const Factorization f = factorize(n);
    if (!f.complete || f.value() != n) return "factorize(" + to_decimal(n) + ") incomplete or wrong product";
    const BigNat big = random_below(BigNat(1) << 200, rng);
    const BigNat r = isqrt(big);
    if (r * r > big || (r + 1) * (r + 1) <= big) return "isqrt bracketing fails for " + to_decimal(big);
    const unsigned long m = 2 + rng() % 65535;
    const unsigned long b = rng() % m;
    const unsigned long e = rng() % 1025;
    unsigned long naive = 1 % m;
    for (unsigned long k = 0; k < e; ++k) naive = naive * b % m;
    if (mod_pow(b, e, m) != naive) return "mod_pow disagrees with repeated multiplication";
  }
  return {};
}

std::string groups_suite(const Plan& plan, std::mt19937_64& rng) {
  for (unsigned long pv : plan.sampled_primes) {
    for (const CyclicGroup& g : backends_for(pv)) {
      const BigNat& p = g.order();
      for (std::size_t i = 0; i < plan.law_samples; ++i) {
        const BigNat k1 = random_below(p, rng);
        const BigNat k2 = random_below(p, rng);
        const BigNat k3 = random_below(p, rng);
        const GroupPoint a = g.power_of_generator(k1);
        const GroupPoint b = g.power_of_generator(k2);
        const GroupPoint c = g.power_of_generator(k3);
        const std::string where = std::string(backend_name(g.backend())) + " p=" + to_decimal(p);
        if (!g.eq(g.add(g.add(a, b), c), g.add(a, g.add(b, c)))) return "associativity on " + where;
        if (!g.eq(g.add(a, b), g.add(b, a))) return "commutativity on " + where;
        if (!g.is_identity(g.add(a, g.negate(a)))) return "inverse law on " + where;
        if (!g.eq(g.add(a, g.identity()), a)) return "identity law on " + where;
        if (!g.eq(g.power_of_generator((k1 + k2) % p), g.add(a, b))) return "scalar distributivity on " + where;
        if (!g.satisfies_curve_equation(a)) return "curve equation on " + where;
        if (g.eq(a, b) != (g.encode(a) == g.encode(b))) return "encode/eq agreement on " + where;
      }
    }
  }
  return {};
}

std::string oracle_suite(const Plan& plan, std::mt19937_64& rng) {
  for (unsigned long pv : plan.sampled_primes) {
    for (const CyclicGroup& g : backends_for(pv)) {
      const ExhaustiveDlogTable table(g);
      DhOracle oracle(g);
      CostLedger ledger;
      LedgerAttachment attach(oracle, ledger);
      const BigNat& p = g.order();
      for (std::size_t i = 0; i < plan.law_samples; ++i) {
        const BigNat a = random_below(p, rng);
        const BigNat b = random_below(p, rng);
        const CostLedger before = ledger;
        const GroupPoint r = oracle.dh(g.power_of_generator(a), g.power_of_generator(b));
        if (table.dlog(r) != a * b % p) return "dh result wrong on " + std::string(backend_name(g.backend()));
        if (ledger.oracle_calls != before.oracle_calls + 1 || ledger.group_ops != before.group_ops ||
            ledger.bsgs_table_entries != before.bsgs_table_entries) {
          return "oracle work leaked into the caller ledger";
        }
      }
    }
  }
  return {};
}

std::string implicit_suite(const Plan& plan, std::mt19937_64& rng) {
  for (unsigned long pv : plan.sampled_primes) {
    for (const CyclicGroup& g : backends_for(pv)) {
      const ExhaustiveDlogTable table(g);
      DhOracle oracle(g);
      CostLedger ledger;
      ImplicitField field(g, oracle, ledger);
      const BigNat& p = g.order();
      for (std::size_t i = 0; i < plan.law_samples / 4 + 1; ++i) {
        const BigNat y = random_below(p, rng);
        const BigNat z = random_below(p, rng);
        const BigNat e = random_below(p - 1, rng) + 1;
        const ImplicitElement iy(g.power_of_generator(y));
        const ImplicitElement iz(g.power_of_generator(z));
        if (table.dlog(field.add(iy, iz).image()) != (y + z) % p) return "implicit add";
        if (table.dlog(field.sub(iy, iz).image()) != ((y - z) % p + p) % p) return "implicit sub";
        if (table.dlog(field.scalar(z, iy).image()) != y * z % p) return "implicit scalar";
        if (table.dlog(field.mul(iy, iz).image()) != y * z % p) return "implicit mul";
        const std::uint64_t before = ledger.oracle_calls;
        if (table.dlog(field.pow(iy, e).image()) != mod_pow(y, e, p)) return "implicit pow";
        if (ledger.oracle_calls - before != pow_cost(e).oracle_calls) return "implicit pow call count";
        if (y != 0 && table.dlog(field.inv(iy).image()) != mod_inverse(y, p)) return "implicit inv";
      }
    }
  }
  return {};
}

std::string run_reductions(const CyclicGroup& g, const std::vector<BigNat>& xs, const Factorization& pm1,
                           std::uint64_t seed) {
  const BigNat& p = g.order();
  DhOracle oracle(g);
  for (const BigNat& d : all_divisors(p - 1)) {
    const BigNat predicted = oracle_calls_exact(d);
    for (const BigNat& x : xs) {
      const ReductionTranscript tr = reduce_dlog(g, oracle, g.power_of_generator(x), d, pm1, seed);
      const std::string where = std::string(backend_name(g.backend())) + " p=" + to_decimal(p) +
                                " d=" + to_decimal(d) + " x=" + to_decimal(x);
      if (tr.x != x) return "wrong dlog on " + where;
      if (BigNat(static_cast<unsigned long>(tr.ledger.oracle_calls)) != predicted) return "oracle calls on " + where;
      const CostReport r = cost_report(tr);
      if (!r.ops_within_extended) return "group-op ceiling on " + where;
      if (tr.j != tr.u1 * tr.params.d1 - tr.v1 || tr.i0 != tr.params.cofactor * tr.t + tr.j ||
          mod_pow(tr.params.zeta0, tr.i0, p) != x) {
        return "transcript algebra on " + where;
      }
    }
  }
  return {};
}

std::string reduction_suite(const Plan& plan, std::mt19937_64& rng, std::uint64_t seed) {
  for (unsigned long pv : plan.exhaustive_primes) {
    const BigNat p = pv;
    std::vector<BigNat> xs;
    for (BigNat x = 1; x < p; ++x) xs.push_back(x);
    if (auto e = run_reductions(CyclicGroup::zp_additive(p), xs, factorize(p - 1), seed); !e.empty()) return e;
  }
  for (unsigned long pv : plan.sampled_primes) {
    const BigNat p = pv;
    std::vector<BigNat> xs;
    for (std::size_t i = 0; i < plan.samples; ++i) xs.push_back(random_below(p - 1, rng) + 1);
    const Factorization pm1 = factorize(p - 1);
    for (const CyclicGroup& g : backends_for(p)) {
      if (auto e = run_reductions(g, xs, pm1, seed); !e.empty()) return e;
    }
  }
  return {};
}

std::string bounds_suite() {
  for (const CurveRecord& rec : embedded_curve_database()) {
    if (!is_prime(rec.p, 64)) return rec.name + ": p fails the primality test";
    if (rec.d && !mpz_divisible_p(BigNat(rec.p - 1).get_mpz_t(), rec.d->get_mpz_t())) {
      return rec.name + ": d does not divide p-1";
    }
    const BoundRow row = compute_row(rec);
    if (row.available && row.computed.log2_tdh + row.computed.log2_n != row.computed.log2_sqrt_e) {
      return rec.name + ": log2 T_DH + log2 n != log2 sqrt p";
    }
  }
  for (unsigned long d = 2; d < (1u << 16); ++d) {
    const BigNat n = oracle_calls_exact(d);
    if (n > 2 * static_cast<unsigned long>(bit_length(BigNat(d)) - 1) + 1) return "n exceeds 2 floor(log2 d) + 1";
  }
  return {};
}

}  // namespace

bool run_selftest(SelftestDepth depth, std::uint64_t seed, std::ostream& out) {
  Plan plan;
  if (depth == SelftestDepth::kQuick) {
    plan = Plan{{29, 101}, {29, 101}, 200, 200};
  } else {
    plan = Plan{{29, 101, 1009}, {29, 101, 1009, 15541}, 200, 1000};
  }
  std::mt19937_64 rng(seed);

  const std::vector<std::pair<std::string, Suite>> suites{
      {"modmath", [&] { return modmath_suite(plan, rng); }},
      {"groups", [&] { return groups_suite(plan, rng); }},
      {"dh-oracle", [&] { return oracle_suite(plan, rng); }},
      {"implicit", [&] { return implicit_suite(plan, rng); }},
      {"reduction", [&] { return reduction_suite(plan, rng, seed); }},
      {"bounds", [] { return bounds_suite(); }},
  };

  bool all_ok = true;
  for (const auto& [name, suite] : suites) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      failure = suite();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty()) {
      out << "[PASS] " << name << " (" << secs << " s)\n";
    } else {
      out << "[FAIL] " << name << ": " << failure << '\n';
      all_ok = false;
    }
  }
  out << (all_ok ? "selftest passed\n" : "selftest FAILED\n");
  return all_ok;
}

}  // namespace dhp::cli
