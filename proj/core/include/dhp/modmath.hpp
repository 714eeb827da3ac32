#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dhp/error.hpp"

namespace dhp {

/// Arbitrary-precision non-negative integer. Every function in this library
/// that accepts a BigNat treats negative values as invalid input.
using BigNat = mpz_class;

/// Parses a non-negative decimal string. Whitespace is rejected.
BigNat parse_bignat(std::string_view decimal);
std::string to_decimal(const BigNat& n);

std::size_t bit_length(const BigNat& n);
std::size_t popcount(const BigNat& n);

/// base^exponent mod modulus, always in [0, modulus-1].
BigNat mod_pow(const BigNat& base, const BigNat& exponent, const BigNat& modulus);
/// Inverse of a modulo m via the extended Euclidean algorithm.
BigNat mod_inverse(const BigNat& a, const BigNat& modulus);

/// Miller-Rabin. Deterministic (first 13 prime bases) below 3.3e24; above
/// that, `rounds` additional pseudo-random bases derived from n.
bool is_prime(const BigNat& n, int rounds = 32);

struct PrimePower {
  BigNat prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = cofactor * prod(prime^exponent). `complete` means every listed prime
/// passed is_prime and the cofactor is 1.
struct Factorization {
  std::vector<PrimePower> factors;
  BigNat cofactor = 1;
  bool complete = true;

  BigNat value() const;
  bool divides_value(const BigNat& d) const;
};

struct FactorOptions {
  std::uint32_t trial_limit = 1'000'000;
  /// Total modular multiplications Pollard-rho may spend before giving up.
  std::uint64_t rho_budget = 100'000'000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

Factorization factorize(const BigNat& n, const FactorOptions& options = {});

BigNat isqrt(const BigNat& n);
/// Floor cube root.
BigNat icbrt(const BigNat& n);
/// Ceiling cube root.
BigNat icbrt_ceil(const BigNat& n);

/// log2(n) from the bit length and the leading 64 bits; error below 1e-9.
double log2_approx(const BigNat& n);

struct DivisorList {
  std::vector<BigNat> values;  // ascending
  bool truncated = false;
};

/// Divisors of f.value() inside [lo, hi], depth-first over exponent vectors.
/// Branches whose partial product exceeds hi are pruned; collection stops at cap.
DivisorList divisors_in_range(const Factorization& f, const BigNat& lo, const BigNat& hi,
                              std::size_t cap = 1'000'000);

/// Uniform in [0, bound). bound must be positive.
BigNat random_below(const BigNat& bound, std::mt19937_64& rng);

}  // namespace dhp
