#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include "dhp/groups.hpp"

namespace dhp {

/// Exact cost counters for one reduction run. Never shared between runs.
struct CostLedger {
  std::uint64_t group_ops = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t bsgs_table_entries = 0;

  void charge_group_ops(std::uint64_t k) { group_ops += k; }

  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

/// Simulated Diffie-Hellman oracle: dh(aP, bP) = abP.
///
/// The oracle recovers a from its first argument with its own baby-step
/// giant-step search (baby table cached per handle) and then multiplies the
/// second argument by a. That work is counted in internal_ops() and never
/// reaches the caller's ledger; the attached ledger only sees oracle_calls.
/// A handle serves one run at a time.
class DhOracle {
 public:
  static constexpr std::uint64_t kUnlimitedBudget = ~std::uint64_t{0};

  explicit DhOracle(CyclicGroup group, std::uint64_t internal_budget = kUnlimitedBudget);

  GroupPoint dh(const GroupPoint& a, const GroupPoint& b);

  /// Non-owning; pass nullptr to detach. Returns the previously attached ledger.
  CostLedger* attach_ledger(CostLedger* ledger);
  CostLedger* ledger() const { return ledger_; }

  const CyclicGroup& group() const { return group_; }
  std::uint64_t calls() const { return calls_; }
  std::uint64_t internal_ops() const { return internal_ops_; }

 private:
  BigNat solve_dlog(const GroupPoint& a);
  void spend(std::uint64_t ops);

  CyclicGroup group_;
  std::uint64_t budget_;
  std::uint64_t internal_ops_ = 0;
  std::uint64_t calls_ = 0;
  CostLedger* ledger_ = nullptr;

  std::uint64_t step_ = 0;
  std::optional<GroupPoint> giant_stride_;  // -(step * P)
  std::unordered_map<std::string, std::uint64_t> baby_;
};

/// Attaches a ledger for the lifetime of the scope and restores the previous one.
class LedgerAttachment {
 public:
  LedgerAttachment(DhOracle& oracle, CostLedger& ledger)
      : oracle_(oracle), previous_(oracle.attach_ledger(&ledger)) {}
  ~LedgerAttachment() { oracle_.attach_ledger(previous_); }
  LedgerAttachment(const LedgerAttachment&) = delete;
  LedgerAttachment& operator=(const LedgerAttachment&) = delete;

 private:
  DhOracle& oracle_;
  CostLedger* previous_;
};

}  // namespace dhp
