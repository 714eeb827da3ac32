#include "dhp/modmath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>

namespace dhp {
namespace {

void require_non_negative(const BigNat& n, const char* what) {
  if (sgn(n) < 0) throw Error(ErrorCode::kInvalidInput, std::string(what) + " must be non-negative");
}

std::vector<std::uint32_t> sieve(std::uint32_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

const std::vector<std::uint32_t>& small_primes(std::uint32_t limit, std::vector<std::uint32_t>& scratch) {
  static const std::vector<std::uint32_t> kDefault = sieve(1'000'000);
  if (limit == 1'000'000) return kDefault;
  scratch = sieve(limit);
  return scratch;
}

bool miller_rabin_round(const BigNat& n, const BigNat& n_minus_1, const BigNat& odd_part,
                        std::size_t twos, const BigNat& base) {
  BigNat x = mod_pow(base, odd_part, n);
  if (x == 1 || x == n_minus_1) return true;
  for (std::size_t i = 1; i < twos; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's cycle-finding variant of Pollard rho with batched gcds.
// Returns a non-trivial factor, or 0 when the budget ran out.
BigNat brent_rho(const BigNat& n, std::uint64_t& budget, std::mt19937_64& rng) {
  constexpr std::uint64_t kBatch = 128;
  while (budget > 0) {
    const BigNat c = random_below(n - 1, rng) + 1;
    BigNat y = random_below(n, rng);
    BigNat x;
    BigNat ys;
    BigNat q = 1;
    BigNat g = 1;
    std::uint64_t r = 1;
    auto step = [&](BigNat& v) { v = (v * v + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      budget = budget > r ? budget - r : 0;
      std::uint64_t k = 0;
      while (k < r && g == 1 && budget > 0) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          BigNat diff = x - y;
          mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
          q = q * diff % n;
        }
        budget = budget > 2 * lim ? budget - 2 * lim : 0;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    } while (g == 1 && budget > 0);

    if (g == n || g == 0) {
      // The batch overshot; replay one step at a time from the saved point.
      do {
        step(ys);
        BigNat diff = x - ys;
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        if (budget > 0) --budget;
      } while (g == 1 && budget > 0);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

}  // namespace

BigNat parse_bignat(std::string_view decimal) {
  if (decimal.empty() || !std::all_of(decimal.begin(), decimal.end(),
                                      [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::kInvalidInput, "not a non-negative decimal integer: '" + std::string(decimal) + "'");
  }
  return BigNat(std::string(decimal), 10);
}

std::string to_decimal(const BigNat& n) { return n.get_str(10); }

std::size_t bit_length(const BigNat& n) {
  if (sgn(n) == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::size_t popcount(const BigNat& n) {
  require_non_negative(n, "popcount argument");
  return mpz_popcount(n.get_mpz_t());
}

BigNat mod_pow(const BigNat& base, const BigNat& exponent, const BigNat& modulus) {
  if (modulus < 2) throw Error(ErrorCode::kInvalidModulus, "modulus must be at least 2, got " + to_decimal(modulus));
  require_non_negative(exponent, "exponent");
  BigNat out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

BigNat mod_inverse(const BigNat& a, const BigNat& modulus) {
  if (modulus < 2) throw Error(ErrorCode::kInvalidModulus, "modulus must be at least 2");
  BigNat out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kNonInvertible, to_decimal(a) + " has no inverse modulo " + to_decimal(modulus));
  }
  return out;
}

bool is_prime(const BigNat& n, int rounds) {
  if (rounds < 1) throw Error(ErrorCode::kInvalidInput, "rounds must be positive");
  if (n < 2) return false;
  static constexpr std::array<unsigned, 13> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned b : kBases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  const BigNat n_minus_1 = n - 1;
  const std::size_t twos = mpz_scan1(n_minus_1.get_mpz_t(), 0);
  BigNat odd_part;
  mpz_fdiv_q_2exp(odd_part.get_mpz_t(), n_minus_1.get_mpz_t(), twos);

  for (unsigned b : kBases) {
    if (!miller_rabin_round(n, n_minus_1, odd_part, twos, BigNat(b))) return false;
  }
  // 3317044064679887385961981: the 13-base test is exact below this bound.
  static const BigNat kDeterministicBound("3317044064679887385961981", 10);
  if (n < kDeterministicBound) return true;

  std::mt19937_64 rng(mpz_get_ui(n.get_mpz_t()) ^ 0x5851f42d4c957f2dULL);
  for (int i = 0; i < rounds; ++i) {
    const BigNat base = random_below(n - 3, rng) + 2;
    if (!miller_rabin_round(n, n_minus_1, odd_part, twos, base)) return false;
  }
  return true;
}

BigNat Factorization::value() const {
  BigNat out = cofactor;
  for (const auto& f : factors) {
    BigNat pw;
    mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    out *= pw;
  }
  return out;
}

bool Factorization::divides_value(const BigNat& d) const {
  if (sgn(d) <= 0) return false;
  return mpz_divisible_p(value().get_mpz_t(), d.get_mpz_t()) != 0;
}

Factorization factorize(const BigNat& n, const FactorOptions& options) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "factorize requires n >= 2, got " + to_decimal(n));

  std::map<BigNat, unsigned> found;
  BigNat rest = n;
  std::vector<std::uint32_t> scratch;
  for (std::uint32_t p : small_primes(options.trial_limit, scratch)) {
    if (BigNat(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++found[BigNat(p)];
    }
  }

  Factorization out;
  std::uint64_t budget = options.rho_budget;
  std::mt19937_64 rng(options.seed);
  std::vector<BigNat> pending;
  if (rest > 1) pending.push_back(rest);
  while (!pending.empty()) {
    BigNat m = std::move(pending.back());
    pending.pop_back();
    if (is_prime(m, 64)) {
      ++found[m];
      continue;
    }
    if (BigNat r = isqrt(m); r * r == m) {
      pending.push_back(r);
      pending.push_back(r);
      continue;
    }
    const BigNat g = brent_rho(m, budget, rng);
    if (g == 0) {
      out.cofactor *= m;
      out.complete = false;
      continue;
    }
    pending.push_back(g);
    pending.push_back(m / g);
  }

  for (auto& [prime, exponent] : found) out.factors.push_back({prime, exponent});
  return out;
}

BigNat isqrt(const BigNat& n) {
  require_non_negative(n, "isqrt argument");
  BigNat out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

BigNat icbrt(const BigNat& n) {
  require_non_negative(n, "icbrt argument");
  BigNat out;
  mpz_root(out.get_mpz_t(), n.get_mpz_t(), 3);
  return out;
}

BigNat icbrt_ceil(const BigNat& n) {
  BigNat r = icbrt(n);
  if (r * r * r < n) ++r;
  return r;
}

double log2_approx(const BigNat& n) {
  if (sgn(n) <= 0) throw Error(ErrorCode::kDomainError, "log2 of " + to_decimal(n));
  const std::size_t bits = bit_length(n);
  if (bits <= 64) return std::log2(static_cast<double>(mpz_get_ui(n.get_mpz_t())));
  BigNat top;
  mpz_fdiv_q_2exp(top.get_mpz_t(), n.get_mpz_t(), bits - 64);
  return std::log2(static_cast<double>(mpz_get_ui(top.get_mpz_t()))) + static_cast<double>(bits - 64);
}

DivisorList divisors_in_range(const Factorization& f, const BigNat& lo, const BigNat& hi, std::size_t cap) {
  if (!f.complete) throw Error(ErrorCode::kIncompleteFactorization, "divisor enumeration needs a complete factorization");
  if (lo > hi) throw Error(ErrorCode::kInvalidInput, "empty range: lo > hi");

  DivisorList out;
  std::function<void(std::size_t, const BigNat&)> walk = [&](std::size_t i, const BigNat& partial) {
    if (out.truncated) return;
    if (i == f.factors.size()) {
      if (partial >= lo) {
        if (out.values.size() == cap) {
          out.truncated = true;
          return;
        }
        out.values.push_back(partial);
      }
      return;
    }
    BigNat current = partial;
    for (unsigned e = 0; e <= f.factors[i].exponent; ++e) {
      walk(i + 1, current);
      current *= f.factors[i].prime;
      if (current > hi) break;
    }
  };
  if (hi >= 1) walk(0, BigNat(1));
  std::sort(out.values.begin(), out.values.end());
  return out;
}

BigNat random_below(const BigNat& bound, std::mt19937_64& rng) {
  if (sgn(bound) <= 0) throw Error(ErrorCode::kInvalidInput, "random_below needs a positive bound");
  const std::size_t bits = bit_length(bound);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t excess = words * 64 - bits;
  std::vector<std::uint64_t> limbs(words);
  BigNat out;
  do {
    for (auto& w : limbs) w = rng();
    limbs.back() >>= excess;
    mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  } while (out >= bound);
  return out;
}

}  // namespace dhp
