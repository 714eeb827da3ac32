#pragma once

#include <cstdint>

#include "dhp/groups.hpp"
#include "dhp/oracle.hpp"

namespace dhp {

/// y in F_p held only through its image y*P.
class ImplicitElement {
 public:
  explicit ImplicitElement(GroupPoint image) : image_(std::move(image)) {}
  const GroupPoint& image() const { return image_; }

 private:
  GroupPoint image_;
};

/// Oracle calls spent by ImplicitField::pow for exponent e under the fixed
/// convention: floor(log2 e) squarings plus one multiplication per set bit,
/// the leading bit included.
struct PowCost {
  std::uint64_t oracle_calls = 0;
  /// calls <= 2*floor(log2 e); false only when popcount(e) = floor(log2 e) + 1.
  bool within_nominal_bound = true;
};
PowCost pow_cost(const BigNat& e);

/// F_p arithmetic carried out on images in G. Addition and scalar scaling
/// are group operations charged to the ledger; multiplication, inversion and
/// powering go through the DH oracle. The ledger is attached to the oracle
/// for the lifetime of this object.
class ImplicitField {
 public:
  ImplicitField(const CyclicGroup& group, DhOracle& oracle, CostLedger& ledger);
  ImplicitField(const ImplicitField&) = delete;
  ImplicitField& operator=(const ImplicitField&) = delete;

  const CyclicGroup& group() const { return group_; }
  CostLedger& ledger() { return ledger_; }
  const BigNat& characteristic() const { return group_.order(); }

  /// c*P for an explicitly known c, charged as one scalar multiplication.
  ImplicitElement embed(const BigNat& c);
  ImplicitElement one() const { return ImplicitElement(group_.generator()); }
  ImplicitElement zero() const { return ImplicitElement(group_.identity()); }
  ImplicitElement wrap(const GroupPoint& image) const;

  bool eq(const ImplicitElement& a, const ImplicitElement& b) const;
  ImplicitElement add(const ImplicitElement& a, const ImplicitElement& b);
  /// a + (p-1)*b.
  ImplicitElement sub(const ImplicitElement& a, const ImplicitElement& b);
  /// c*y for explicit c < p.
  ImplicitElement scalar(const BigNat& c, const ImplicitElement& a);
  ImplicitElement mul(const ImplicitElement& a, const ImplicitElement& b);
  /// y^(p-2) by pow; refuses the image of 0.
  ImplicitElement inv(const ImplicitElement& a);
  /// y^e for e >= 1, left-to-right square-and-multiply starting from image(1).
  ImplicitElement pow(const ImplicitElement& a, const BigNat& e);

 private:
  const CyclicGroup& group_;
  DhOracle& oracle_;
  CostLedger& ledger_;
  LedgerAttachment attachment_;
};

}  // namespace dhp
