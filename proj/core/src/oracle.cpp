#include "dhp/oracle.hpp"

namespace dhp {

DhOracle::DhOracle(CyclicGroup group, std::uint64_t internal_budget)
    : group_(std::move(group)), budget_(internal_budget) {}

CostLedger* DhOracle::attach_ledger(CostLedger* ledger) {
  CostLedger* previous = ledger_;
  ledger_ = ledger;
  return previous;
}

void DhOracle::spend(std::uint64_t ops) {
  internal_ops_ += ops;
  if (internal_ops_ > budget_) {
    throw Error(ErrorCode::kRefusal, "oracle exhausted its internal budget of " + std::to_string(budget_) + " operations");
  }
}

BigNat DhOracle::solve_dlog(const GroupPoint& a) {
  if (!giant_stride_) {
    if (group_.order() > (BigNat(1) << 32)) {
      throw Error(ErrorCode::kRefusal, "simulated oracle refuses groups of order above 2^32");
    }
    const BigNat m = isqrt(group_.order() - 1) + 1;
    step_ = m.get_ui();
    baby_.reserve(step_);
    GroupPoint current = group_.identity();
    for (std::uint64_t i = 0; i < step_; ++i) {
      baby_.emplace(group_.encode(current), i);
      current = group_.add(current, group_.generator());
    }
    spend(step_);
    giant_stride_ = group_.negate(current);
  }

  // a - k*m*P for k = 0, 1, ... until it lands in the baby table.
  GroupPoint current = a;
  for (std::uint64_t k = 0; k <= step_; ++k) {
    if (const auto it = baby_.find(group_.encode(current)); it != baby_.end()) {
      spend(k);
      BigNat out = BigNat(static_cast<unsigned long>(k)) * static_cast<unsigned long>(step_) +
                   static_cast<unsigned long>(it->second);
      return out % group_.order();
    }
    current = group_.add(current, *giant_stride_);
  }
  throw Error(ErrorCode::kInternalInconsistency, "oracle argument is not in the group generated by P");
}

GroupPoint DhOracle::dh(const GroupPoint& a, const GroupPoint& b) {
  if (!group_.contains(a) || !group_.contains(b)) {
    throw Error(ErrorCode::kGroupMismatch, "dh operands do not belong to the oracle's group");
  }
  const BigNat exponent = solve_dlog(a);
  spend(scalar_mul_cost(exponent));
  GroupPoint out = group_.scalar_mul(exponent, b);
  ++calls_;
  if (ledger_ != nullptr) ++ledger_->oracle_calls;
  return out;
}

}  // namespace dhp
