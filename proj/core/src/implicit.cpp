#include "dhp/implicit.hpp"

namespace dhp {

PowCost pow_cost(const BigNat& e) {
  if (e < 1) throw Error(ErrorCode::kInvalidExponent, "implicit exponent must be >= 1");
  const std::uint64_t floor_log = bit_length(e) - 1;
  const std::uint64_t calls = floor_log + popcount(e);
  return {calls, calls <= 2 * floor_log};
}

ImplicitField::ImplicitField(const CyclicGroup& group, DhOracle& oracle, CostLedger& ledger)
    : group_(group), oracle_(oracle), ledger_(ledger), attachment_(oracle, ledger) {
  if (oracle.group().id() != group.id()) {
    throw Error(ErrorCode::kGroupMismatch, "oracle serves a different group");
  }
}

ImplicitElement ImplicitField::wrap(const GroupPoint& image) const {
  if (!group_.contains(image)) throw Error(ErrorCode::kGroupMismatch, "image is not in this field's group");
  return ImplicitElement(image);
}

ImplicitElement ImplicitField::embed(const BigNat& c) {
  const BigNat reduced = c % characteristic();
  ledger_.charge_group_ops(scalar_mul_cost(reduced));
  return ImplicitElement(group_.power_of_generator(reduced));
}

bool ImplicitField::eq(const ImplicitElement& a, const ImplicitElement& b) const {
  return group_.eq(a.image(), b.image());
}

ImplicitElement ImplicitField::add(const ImplicitElement& a, const ImplicitElement& b) {
  GroupPoint sum = group_.add(a.image(), b.image());
  ledger_.charge_group_ops(1);
  return ImplicitElement(std::move(sum));
}

ImplicitElement ImplicitField::sub(const ImplicitElement& a, const ImplicitElement& b) {
  return add(a, scalar(characteristic() - 1, b));
}

ImplicitElement ImplicitField::scalar(const BigNat& c, const ImplicitElement& a) {
  if (c < 0 || c >= characteristic()) {
    throw Error(ErrorCode::kInvalidInput, "implicit scalar must lie in [0, p-1]");
  }
  GroupPoint out = group_.scalar_mul(c, a.image());
  ledger_.charge_group_ops(scalar_mul_cost(c));
  return ImplicitElement(std::move(out));
}

ImplicitElement ImplicitField::mul(const ImplicitElement& a, const ImplicitElement& b) {
  return ImplicitElement(oracle_.dh(a.image(), b.image()));
}

ImplicitElement ImplicitField::inv(const ImplicitElement& a) {
  if (group_.is_identity(a.image())) throw Error(ErrorCode::kNonInvertible, "0 has no inverse in F_p");
  if (characteristic() == 2) return a;
  return pow(a, characteristic() - 2);
}

ImplicitElement ImplicitField::pow(const ImplicitElement& a, const BigNat& e) {
  if (e < 1) throw Error(ErrorCode::kInvalidExponent, "implicit exponent must be >= 1");
  ImplicitElement acc = one();
  const std::size_t bits = bit_length(e);
  for (std::size_t i = bits; i-- > 0;) {
    if (i + 1 != bits) acc = mul(acc, acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, a);
  }
  return acc;
}

}  // namespace dhp
