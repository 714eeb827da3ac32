#include "dhp/groups.hpp"

#include <atomic>

namespace dhp {
namespace {

BigNat mod(const BigNat& v, const BigNat& m) {
  BigNat out;
  mpz_fdiv_r(out.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return out;
}

void append_fixed_width(std::string& out, const BigNat& v, std::size_t width) {
  std::string bytes(width, '\0');
  std::size_t count = 0;
  if (sgn(v) != 0) {
    std::vector<unsigned char> buf((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    mpz_export(buf.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(count),
              bytes.begin() + static_cast<std::ptrdiff_t>(width - count));
  }
  out += bytes;
}

const BigNat kDlogGuard = BigNat(1) << 32;

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kZpAdditive: return "zp";
    case Backend::kMultSubgroup: return "mult";
    case Backend::kWeierstrass: return "ec";
  }
  return "unknown";
}

std::uint64_t scalar_mul_cost(const BigNat& k) {
  if (sgn(k) <= 0) return 0;
  return (bit_length(k) - 1) + (popcount(k) - 1);
}

std::uint64_t CyclicGroup::next_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

CyclicGroup CyclicGroup::zp_additive(const BigNat& p) {
  if (!is_prime(p, 64)) throw Error(ErrorCode::kInvalidOrder, "group order " + to_decimal(p) + " is not prime");
  const auto id = next_id();
  return CyclicGroup(std::make_shared<const State>(
      State{Backend::kZpAdditive, id, p, p, 0, 0, GroupPoint(id, BigNat(1), 0, false)}));
}

CyclicGroup CyclicGroup::mult_subgroup(const BigNat& q, const BigNat& p, const BigNat& h) {
  if (!is_prime(p, 64)) throw Error(ErrorCode::kInvalidOrder, "subgroup order " + to_decimal(p) + " is not prime");
  if (!is_prime(q, 64)) throw Error(ErrorCode::kInvalidModulus, "field modulus " + to_decimal(q) + " is not prime");
  const BigNat q_minus_1 = q - 1;
  if (!mpz_divisible_p(q_minus_1.get_mpz_t(), p.get_mpz_t())) {
    throw Error(ErrorCode::kIncompatibleParameters, to_decimal(p) + " does not divide q-1 = " + to_decimal(q_minus_1));
  }
  const BigNat g = mod_pow(mod(h, q), q_minus_1 / p, q);
  if (g == 1 || g == 0) {
    throw Error(ErrorCode::kBadGenerator, "h = " + to_decimal(h) + " maps to a trivial element");
  }
  const auto id = next_id();
  return CyclicGroup(std::make_shared<const State>(
      State{Backend::kMultSubgroup, id, p, q, 0, 0, GroupPoint(id, g, 0, false)}));
}

CyclicGroup CyclicGroup::weierstrass(const CurveParams& params) {
  const BigNat& q = params.q;
  if (q <= 3 || !is_prime(q, 64)) throw Error(ErrorCode::kInvalidModulus, "curve field " + to_decimal(q) + " must be a prime > 3");
  const BigNat a = mod(params.a, q);
  const BigNat b = mod(params.b, q);
  if (mod(4 * a * a * a + 27 * b * b, q) == 0) {
    throw Error(ErrorCode::kSingularCurve, "4A^3 + 27B^2 = 0 mod q");
  }
  if (!is_prime(params.order, 64)) {
    throw Error(ErrorCode::kInvalidOrder, "generator order " + to_decimal(params.order) + " is not prime");
  }
  const auto id = next_id();
  const GroupPoint g(id, mod(params.gx, q), mod(params.gy, q), false);
  CyclicGroup group(std::make_shared<const State>(
      State{Backend::kWeierstrass, id, params.order, q, a, b, g}));
  if (params.gx < 0 || params.gx >= q || params.gy < 0 || params.gy >= q ||
      !group.satisfies_curve_equation(g)) {
    throw Error(ErrorCode::kOffCurveGenerator, "generator is not on the curve");
  }
  // scalar_mul reduces k mod the order, so multiply by (p-1) and add once more.
  const GroupPoint almost = group.scalar_mul(params.order - 1, g);
  if (!group.is_identity(group.add(almost, g))) {
    throw Error(ErrorCode::kWrongOrder, "generator order is not " + to_decimal(params.order));
  }
  return group;
}

std::string CyclicGroup::describe() const {
  switch (backend()) {
    case Backend::kZpAdditive:
      return "Z/" + to_decimal(order()) + " (additive)";
    case Backend::kMultSubgroup:
      return "order-" + to_decimal(order()) + " subgroup of F_" + to_decimal(modulus()) + "^* generated by " +
             to_decimal(generator().x());
    case Backend::kWeierstrass:
      return "y^2 = x^3 + " + to_decimal(curve_a()) + "x + " + to_decimal(curve_b()) + " over F_" +
             to_decimal(modulus()) + ", G = (" + to_decimal(generator().x()) + ", " + to_decimal(generator().y()) +
             ") of order " + to_decimal(order());
  }
  return {};
}

void CyclicGroup::check_owner(const GroupPoint& a) const {
  if (a.owner_ != state_->id) {
    throw Error(ErrorCode::kGroupMismatch, "point does not belong to " + describe());
  }
}

GroupPoint CyclicGroup::residue(BigNat value) const { return GroupPoint(state_->id, std::move(value), 0, false); }

GroupPoint CyclicGroup::identity() const {
  switch (backend()) {
    case Backend::kZpAdditive: return residue(0);
    case Backend::kMultSubgroup: return residue(1);
    case Backend::kWeierstrass: return GroupPoint(state_->id, 0, 0, true);
  }
  return {};
}

bool CyclicGroup::is_identity(const GroupPoint& a) const {
  check_owner(a);
  switch (backend()) {
    case Backend::kZpAdditive: return sgn(a.x_) == 0;
    case Backend::kMultSubgroup: return a.x_ == 1;
    case Backend::kWeierstrass: return a.infinity_;
  }
  return false;
}

bool CyclicGroup::contains(const GroupPoint& a) const { return a.owner_ == state_->id; }

bool CyclicGroup::satisfies_curve_equation(const GroupPoint& a) const {
  if (backend() != Backend::kWeierstrass || a.infinity_) return true;
  const BigNat& q = modulus();
  return mod(a.y_ * a.y_, q) == mod(a.x_ * a.x_ * a.x_ + curve_a() * a.x_ + curve_b(), q);
}

GroupPoint CyclicGroup::ec_add(const GroupPoint& a, const GroupPoint& b) const {
  if (a.infinity_) return b;
  if (b.infinity_) return a;
  const BigNat& q = modulus();
  BigNat lambda;
  if (a.x_ == b.x_) {
    if (mod(a.y_ + b.y_, q) == 0) return identity();
    lambda = mod((3 * a.x_ * a.x_ + curve_a()) * mod_inverse(2 * a.y_, q), q);
  } else {
    lambda = mod((b.y_ - a.y_) * mod_inverse(mod(b.x_ - a.x_, q), q), q);
  }
  BigNat x3 = mod(lambda * lambda - a.x_ - b.x_, q);
  BigNat y3 = mod(lambda * (a.x_ - x3) - a.y_, q);
  return GroupPoint(state_->id, std::move(x3), std::move(y3), false);
}

GroupPoint CyclicGroup::add(const GroupPoint& a, const GroupPoint& b) const {
  check_owner(a);
  check_owner(b);
  switch (backend()) {
    case Backend::kZpAdditive: return residue(mod(a.x_ + b.x_, modulus()));
    case Backend::kMultSubgroup: return residue(mod(a.x_ * b.x_, modulus()));
    case Backend::kWeierstrass: return ec_add(a, b);
  }
  return {};
}

GroupPoint CyclicGroup::dbl(const GroupPoint& a) const { return add(a, a); }

GroupPoint CyclicGroup::negate(const GroupPoint& a) const {
  check_owner(a);
  switch (backend()) {
    case Backend::kZpAdditive: return residue(mod(-a.x_, modulus()));
    case Backend::kMultSubgroup: return residue(mod_inverse(a.x_, modulus()));
    case Backend::kWeierstrass:
      if (a.infinity_) return a;
      return GroupPoint(state_->id, a.x_, mod(-a.y_, modulus()), false);
  }
  return {};
}

GroupPoint CyclicGroup::scalar_mul(const BigNat& k, const GroupPoint& a) const {
  check_owner(a);
  const BigNat e = mod(k, order());
  switch (backend()) {
    case Backend::kZpAdditive: return residue(mod(e * a.x_, modulus()));
    case Backend::kMultSubgroup: return residue(mod_pow(a.x_, e, modulus()));
    case Backend::kWeierstrass: {
      GroupPoint acc = identity();
      for (std::size_t i = bit_length(e); i-- > 0;) {
        acc = ec_add(acc, acc);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = ec_add(acc, a);
      }
      return acc;
    }
  }
  return {};
}

bool CyclicGroup::eq(const GroupPoint& a, const GroupPoint& b) const {
  check_owner(a);
  check_owner(b);
  return a.infinity_ == b.infinity_ && a.x_ == b.x_ && a.y_ == b.y_;
}

std::string CyclicGroup::encode(const GroupPoint& a) const {
  check_owner(a);
  const std::size_t width = (bit_length(modulus()) + 7) / 8;
  std::string out;
  out.reserve(2 + 2 * width);
  out.push_back(static_cast<char>(backend()));
  out.push_back(static_cast<char>(is_identity(a) ? 1 : 0));
  append_fixed_width(out, a.x_, width);
  if (backend() == Backend::kWeierstrass) append_fixed_width(out, a.y_, width);
  return out;
}

GroupPoint CyclicGroup::make_point(const BigNat& x, const BigNat& y) const {
  const BigNat& m = modulus();
  if (x < 0 || x >= m || y < 0 || y >= m) throw Error(ErrorCode::kInvalidInput, "coordinate out of range");
  switch (backend()) {
    case Backend::kZpAdditive:
      return residue(x);
    case Backend::kMultSubgroup:
      if (sgn(x) == 0 || mod_pow(x, order(), m) != 1) {
        throw Error(ErrorCode::kInvalidInput, to_decimal(x) + " is not in the order-" + to_decimal(order()) + " subgroup");
      }
      return residue(x);
    case Backend::kWeierstrass: {
      GroupPoint pt(state_->id, x, y, false);
      if (!satisfies_curve_equation(pt)) throw Error(ErrorCode::kInvalidInput, "point is not on the curve");
      if (!is_identity(add(scalar_mul(order() - 1, pt), pt))) {
        throw Error(ErrorCode::kInvalidInput, "point is not in the prime-order subgroup");
      }
      return pt;
    }
  }
  return {};
}

BigNat brute_force_dlog(const CyclicGroup& group, const GroupPoint& q) {
  if (group.order() > kDlogGuard) {
    throw Error(ErrorCode::kRefusal, "brute-force dlog refused for order above 2^32");
  }
  GroupPoint current = group.identity();
  for (BigNat k = 0; k < group.order(); ++k) {
    if (group.eq(current, q)) return k;
    current = group.add(current, group.generator());
  }
  throw Error(ErrorCode::kInternalInconsistency, "point is not a multiple of the generator");
}

ExhaustiveDlogTable::ExhaustiveDlogTable(const CyclicGroup& group) : group_(group) {
  if (group.order() > (BigNat(1) << 24)) {
    throw Error(ErrorCode::kRefusal, "exhaustive dlog table refused for order above 2^24");
  }
  const std::uint64_t n = group.order().get_ui();
  index_.reserve(n);
  GroupPoint current = group.identity();
  for (std::uint64_t k = 0; k < n; ++k) {
    index_.emplace(group.encode(current), k);
    current = group.add(current, group.generator());
  }
}

BigNat ExhaustiveDlogTable::dlog(const GroupPoint& q) const {
  const auto it = index_.find(group_.encode(q));
  if (it == index_.end()) throw Error(ErrorCode::kInternalInconsistency, "point is not a multiple of the generator");
  return BigNat(static_cast<unsigned long>(it->second));
}

}  // namespace dhp
