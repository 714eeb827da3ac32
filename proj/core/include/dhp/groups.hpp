#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dhp/modmath.hpp"

namespace dhp {

enum class Backend : std::uint8_t {
  kZpAdditive = 1,
  kMultSubgroup = 2,
  kWeierstrass = 3,
};

std::string_view backend_name(Backend backend);

class CyclicGroup;

/// An element of a CyclicGroup. Only the owning group can interpret it:
/// zp-additive stores a residue mod p, mult-subgroup a residue mod q, and
/// Weierstrass the affine (x, y) or the point at infinity.
class GroupPoint {
 public:
  GroupPoint() = default;

  const BigNat& x() const { return x_; }
  const BigNat& y() const { return y_; }
  bool at_infinity() const { return infinity_; }
  std::uint64_t owner() const { return owner_; }

 private:
  friend class CyclicGroup;
  GroupPoint(std::uint64_t owner, BigNat x, BigNat y, bool infinity)
      : owner_(owner), x_(std::move(x)), y_(std::move(y)), infinity_(infinity) {}

  std::uint64_t owner_ = 0;
  BigNat x_;
  BigNat y_;
  bool infinity_ = false;
};

struct CurveParams {
  std::string name;
  BigNat q;  // field prime
  BigNat a;
  BigNat b;
  BigNat gx;
  BigNat gy;
  BigNat order;  // prime order p of the generator
};

/// Reads {"q","A","B","Gx","Gy","p"} (decimal strings or integers) from a JSON object.
CurveParams parse_curve_json(std::string_view json_text);
CurveParams load_curve_file(const std::string& path);
/// Bundled desk-scale curves (orders 29, 101, 1009 and 15541).
std::vector<CurveParams> toy_curve_catalog();
/// Looks up the catalog, then for orders up to 2^16 searches for a curve of
/// exactly that prime order by exhaustive point counting over q near p.
std::optional<CurveParams> find_toy_curve(const BigNat& order, std::uint64_t seed = 1);

struct MultSubgroupParams {
  BigNat q;
  BigNat h;
};
/// Smallest prime q = k*p + 1 (k even) and the smallest h with h^k != 1 mod q.
MultSubgroupParams find_mult_subgroup(const BigNat& order);

/// Number of additions plus doublings charged for a double-and-add scalar
/// multiplication by k (k reduced mod the group order): bitlen(k)-1 doublings
/// and popcount(k)-1 additions. Backend independent by convention.
std::uint64_t scalar_mul_cost(const BigNat& k);

/// A prime-order cyclic group with a fixed generator. Copies share identity:
/// points of a copy are accepted by the original and vice versa.
class CyclicGroup {
 public:
  static CyclicGroup zp_additive(const BigNat& p);
  static CyclicGroup mult_subgroup(const BigNat& q, const BigNat& p, const BigNat& h);
  static CyclicGroup weierstrass(const CurveParams& params);

  Backend backend() const { return state_->backend; }
  const BigNat& order() const { return state_->order; }
  /// q for the mult-subgroup and Weierstrass backends, p for zp-additive.
  const BigNat& modulus() const { return state_->modulus; }
  const BigNat& curve_a() const { return state_->a; }
  const BigNat& curve_b() const { return state_->b; }
  const GroupPoint& generator() const { return state_->generator; }
  std::uint64_t id() const { return state_->id; }
  std::string describe() const;

  GroupPoint identity() const;
  bool is_identity(const GroupPoint& a) const;
  bool contains(const GroupPoint& a) const;

  GroupPoint add(const GroupPoint& a, const GroupPoint& b) const;
  GroupPoint dbl(const GroupPoint& a) const;
  GroupPoint negate(const GroupPoint& a) const;
  GroupPoint sub(const GroupPoint& a, const GroupPoint& b) const { return add(a, negate(b)); }
  /// k*a by left-to-right double-and-add (modular arithmetic for the
  /// residue backends). k is reduced modulo the order first.
  GroupPoint scalar_mul(const BigNat& k, const GroupPoint& a) const;
  /// k*generator.
  GroupPoint power_of_generator(const BigNat& k) const { return scalar_mul(k, generator()); }
  bool eq(const GroupPoint& a, const GroupPoint& b) const;

  /// Backend tag byte, identity flag byte, then each coordinate big-endian
  /// and zero padded to the byte length of modulus(). Injective on the group.
  std::string encode(const GroupPoint& a) const;

  /// Builds a point from raw coordinates, validating membership.
  GroupPoint make_point(const BigNat& x, const BigNat& y = 0) const;
  /// EC only: checks y^2 = x^3 + Ax + B (true for the identity and for
  /// every point of the residue backends).
  bool satisfies_curve_equation(const GroupPoint& a) const;

 private:
  struct State {
    Backend backend;
    std::uint64_t id;
    BigNat order;
    BigNat modulus;
    BigNat a;
    BigNat b;
    GroupPoint generator;
  };

  explicit CyclicGroup(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  static std::uint64_t next_id();
  void check_owner(const GroupPoint& a) const;
  GroupPoint residue(BigNat value) const;
  GroupPoint ec_add(const GroupPoint& a, const GroupPoint& b) const;

  std::shared_ptr<const State> state_;
};

/// Linear scan over 0*P, 1*P, ... until Q is hit. Independent of every BSGS
/// in this library; refuses groups of order above 2^32.
BigNat brute_force_dlog(const CyclicGroup& group, const GroupPoint& q);

/// The full table k -> k*P built by successive additions, for bulk checks.
class ExhaustiveDlogTable {
 public:
  explicit ExhaustiveDlogTable(const CyclicGroup& group);
  BigNat dlog(const GroupPoint& q) const;

 private:
  CyclicGroup group_;
  std::unordered_map<std::string, std::uint64_t> index_;
};

}  // namespace dhp
