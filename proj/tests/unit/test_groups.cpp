#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <set>
#include <string>

#include "dhp/error.hpp"
#include "dhp/groups.hpp"

using namespace dhp;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no dhp::Error thrown";
  return ErrorCode::kInternalInconsistency;
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

// Number of points on y^2 = x^3 + ax + b over F_q, infinity included, via Euler's criterion.
std::uint64_t count_points(std::uint64_t q, std::uint64_t a, std::uint64_t b) {
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < q; ++x) {
    const std::uint64_t rhs = (x * x % q * x + a * x + b) % q;
    if (rhs == 0) {
      n += 1;
    } else if (powmod64(rhs, (q - 1) / 2, q) == 1) {
      n += 2;
    }
  }
  return n;
}

std::vector<CyclicGroup> small_groups() {
  std::vector<CyclicGroup> out{CyclicGroup::zp_additive(101), CyclicGroup::mult_subgroup(607, 101, 2)};
  for (const auto& c : toy_curve_catalog()) {
    if (c.order == 101) out.push_back(CyclicGroup::weierstrass(c));
  }
  return out;
}

}  // namespace

TEST(ZpAdditive, Examples) {
  const CyclicGroup g = CyclicGroup::zp_additive(101);
  EXPECT_EQ(g.scalar_mul(5, g.generator()).x(), 5);
  EXPECT_TRUE(g.is_identity(g.scalar_mul(101, g.generator())));
  EXPECT_EQ(g.add(g.power_of_generator(40), g.power_of_generator(70)).x(), 9);
  EXPECT_EQ(code_of([] { CyclicGroup::zp_additive(100); }), ErrorCode::kInvalidOrder);
}

TEST(MultSubgroup, Examples) {
  const CyclicGroup g = CyclicGroup::mult_subgroup(23, 11, 2);
  EXPECT_EQ(g.generator().x(), 4);
  EXPECT_EQ(g.order(), 11);
  EXPECT_EQ(powmod64(4, 11, 23), 1u);
  EXPECT_EQ(g.scalar_mul(11, g.generator()).x(), 1);
  EXPECT_EQ(g.scalar_mul(0, g.generator()).x(), 1);
  EXPECT_EQ(code_of([] { CyclicGroup::mult_subgroup(29, 11, 2); }), ErrorCode::kIncompatibleParameters);
  EXPECT_EQ(code_of([] { CyclicGroup::mult_subgroup(23, 11, 1); }), ErrorCode::kBadGenerator);
  EXPECT_EQ(code_of([] { CyclicGroup::mult_subgroup(23, 11, 22); }), ErrorCode::kBadGenerator);
}

TEST(MultSubgroup, FinderGivesValidParameters) {
  for (unsigned long p : {29ul, 101ul, 1009ul, 15541ul}) {
    const MultSubgroupParams m = find_mult_subgroup(p);
    EXPECT_EQ((m.q - 1) % p, 0);
    const CyclicGroup g = CyclicGroup::mult_subgroup(m.q, p, m.h);
    EXPECT_EQ(mod_pow(g.generator().x(), p, m.q), 1);
    EXPECT_NE(g.generator().x(), 1);
  }
}

TEST(Weierstrass, FixtureCurveByPointCounting) {
  const CurveParams c = load_curve_file(DHP_FIXTURE_DIR "/toy_curve.json");
  EXPECT_LT(c.q, BigNat(1) << 16);
  EXPECT_GT(c.q, BigNat(1) << 15);
  EXPECT_LE(c.order, BigNat(1) << 14);
  const std::uint64_t n = count_points(c.q.get_ui(), c.a.get_ui(), c.b.get_ui());
  EXPECT_EQ(n % c.order.get_ui(), 0u);
  EXPECT_TRUE(is_prime(c.order));

  const CyclicGroup g = CyclicGroup::weierstrass(c);
  EXPECT_FALSE(g.is_identity(g.generator()));
  EXPECT_TRUE(g.is_identity(g.scalar_mul(c.order, g.generator())));
  EXPECT_TRUE(g.is_identity(g.add(g.scalar_mul(c.order - 1, g.generator()), g.generator())));
}

TEST(Weierstrass, CatalogCurvesByPointCounting) {
  for (const auto& c : toy_curve_catalog()) {
    const std::uint64_t n = count_points(c.q.get_ui(), c.a.get_ui(), c.b.get_ui());
    EXPECT_EQ(n % c.order.get_ui(), 0u) << c.name;
    const CyclicGroup g = CyclicGroup::weierstrass(c);
    EXPECT_TRUE(g.is_identity(g.scalar_mul(c.order, g.generator()))) << c.name;
  }
}

TEST(Weierstrass, FoundCurveHasRequestedOrder) {
  const auto c = find_toy_curve(211, 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(count_points(c->q.get_ui(), c->a.get_ui(), c->b.get_ui()) % 211, 0u);
  const CyclicGroup g = CyclicGroup::weierstrass(*c);
  EXPECT_TRUE(g.is_identity(g.scalar_mul(211, g.generator())));
}

TEST(Weierstrass, ConstructionErrors) {
  CurveParams base = toy_curve_catalog().front();

  CurveParams singular = base;
  singular.a = 0;
  singular.b = 0;
  EXPECT_EQ(code_of([&] { CyclicGroup::weierstrass(singular); }), ErrorCode::kSingularCurve);

  CurveParams off = base;
  off.gy = (off.gy + 2) % off.q;  // gy + 1 is -G on this curve
  EXPECT_EQ(code_of([&] { CyclicGroup::weierstrass(off); }), ErrorCode::kOffCurveGenerator);

  CurveParams wrong = base;
  wrong.order = 31;
  EXPECT_EQ(code_of([&] { CyclicGroup::weierstrass(wrong); }), ErrorCode::kWrongOrder);

  CurveParams composite_q = base;
  composite_q.q = 35;
  EXPECT_EQ(code_of([&] { CyclicGroup::weierstrass(composite_q); }), ErrorCode::kInvalidModulus);
}

TEST(GroupLaws, AllBackends) {
  std::mt19937_64 rng(9);
  for (const CyclicGroup& g : small_groups()) {
    for (int i = 0; i < 300; ++i) {
      const BigNat k1 = random_below(g.order(), rng);
      const BigNat k2 = random_below(g.order(), rng);
      const GroupPoint a = g.power_of_generator(k1);
      const GroupPoint b = g.power_of_generator(k2);
      EXPECT_TRUE(g.eq(a, a));
      EXPECT_TRUE(g.eq(g.scalar_mul(1, a), a));
      EXPECT_TRUE(g.is_identity(g.add(a, g.negate(a))));
      EXPECT_TRUE(g.eq(g.dbl(a), g.add(a, a)));
      EXPECT_TRUE(g.eq(g.add(a, b), g.power_of_generator((k1 + k2) % g.order())));
      EXPECT_TRUE(g.eq(g.sub(a, b), g.power_of_generator((k1 - k2 + g.order()) % g.order())));
      EXPECT_TRUE(g.contains(a));
    }
  }
}

TEST(GroupLaws, ScalarMulMatchesRepeatedAddition) {
  for (const CyclicGroup& g : small_groups()) {
    GroupPoint acc = g.identity();
    for (unsigned long k = 0; k <= 2 * g.order().get_ui(); ++k) {
      EXPECT_TRUE(g.eq(g.power_of_generator(k), acc)) << backend_name(g.backend()) << " k=" << k;
      acc = g.add(acc, g.generator());
    }
  }
}

TEST(GroupLaws, EncodingIsCanonical) {
  for (const CyclicGroup& g : small_groups()) {
    std::set<std::string> seen;
    for (unsigned long k = 0; k < g.order().get_ui(); ++k) seen.insert(g.encode(g.power_of_generator(k)));
    EXPECT_EQ(seen.size(), g.order().get_ui());
  }
}

TEST(GroupLaws, MixingGroupsIsRejected) {
  const CyclicGroup a = CyclicGroup::zp_additive(101);
  const CyclicGroup b = CyclicGroup::zp_additive(101);
  EXPECT_EQ(code_of([&] { a.add(a.generator(), b.generator()); }), ErrorCode::kGroupMismatch);
}

TEST(BruteForceDlog, Examples) {
  const CyclicGroup g = CyclicGroup::weierstrass(toy_curve_catalog()[2]);
  EXPECT_EQ(brute_force_dlog(g, g.identity()), 0);
  EXPECT_EQ(brute_force_dlog(g, g.generator()), 1);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const BigNat x = random_below(g.order(), rng);
    EXPECT_EQ(brute_force_dlog(g, g.power_of_generator(x)), x);
  }
  const ExhaustiveDlogTable table(g);
  for (unsigned long x = 0; x < 1009; x += 7) EXPECT_EQ(table.dlog(g.power_of_generator(x)), x);
}

TEST(ScalarMulCost, Convention) {
  EXPECT_EQ(scalar_mul_cost(1), 0u);
  EXPECT_EQ(scalar_mul_cost(2), 1u);
  EXPECT_EQ(scalar_mul_cost(3), 2u);
  EXPECT_EQ(scalar_mul_cost(0b101101), 5u + 3u);
}
