#pragma once

#include <cstdint>
#include <string>

#include "dhp/groups.hpp"
#include "dhp/implicit.hpp"
#include "dhp/modmath.hpp"
#include "dhp/oracle.hpp"

namespace dhp {

struct GeneratorSearch {
  BigNat zeta0;
  std::uint64_t candidates = 0;  // samples drawn, the accepted one included
};

/// True iff g^((p-1)/q) != 1 mod p for every prime q | p-1.
bool is_primitive_root(const BigNat& g, const BigNat& p, const Factorization& p_minus_1);

/// Samples uniformly from [2, p-2] until a generator of F_p^* turns up.
/// Deterministic in `seed`. Gives up (improbable-failure) after
/// 512 * ceil(6 ln ln(p-1)) rejected samples.
GeneratorSearch find_generator(const BigNat& p, const Factorization& p_minus_1, std::uint64_t seed);

/// Lower bound phi(p-1)/(p-1) > 1/(6 ln ln(p-1)) on the generator density.
double generator_density_bound(const BigNat& p);

struct ReductionParams {
  BigNat p;
  BigNat d;
  BigNat cofactor;  // (p-1)/d, the order of zeta
  BigNat d1;        // floor(sqrt((p-1)/d)), phase-1 step
  BigNat s2;        // floor(sqrt(d)), phase-2 step
  BigNat zeta0;     // generator of F_p^*
  BigNat zeta;      // zeta0^d
  std::uint64_t seed = 0;
  std::uint64_t generator_candidates = 0;

  /// ceil(cofactor / d1) + 1 and ceil(d / s2) + 1.
  BigNat phase1_giant_steps() const;
  BigNat phase2_giant_steps() const;
};

ReductionParams make_reduction_params(const BigNat& p, const BigNat& d, const Factorization& p_minus_1,
                                      std::uint64_t seed);

struct Phase1Match {
  BigNat j;
  BigNat u1;
  BigNat v1;
};

struct Phase2Match {
  BigNat t;
  BigNat u2;
  BigNat v2;
};

/// Finds j in [1, (p-1)/d] with x^d = zeta^j from the image of x^d:
/// baby steps zeta^v1 * (x^d P), giant steps (zeta^d1)^u1 * P.
Phase1Match phase1_find_j(ImplicitField& field, const ImplicitElement& x_pow_d, const ReductionParams& params);

/// Finds t in [0, d) with x = zeta0^(((p-1)/d) t + j): baby steps
/// (zeta0^((p-1)/d))^v2 * Q, giant steps (zeta0^(((p-1)/d) s2))^u2 * (zeta0^j P).
/// Uses no oracle calls.
Phase2Match phase2_find_t(ImplicitField& field, const GroupPoint& q, const BigNat& j, const ReductionParams& params);

struct ReductionTranscript {
  ReductionParams params;
  BigNat j;
  BigNat u1;
  BigNat v1;
  BigNat t;
  BigNat u2;
  BigNat v2;
  BigNat i0;
  BigNat x;
  CostLedger ledger;
  /// Oracle calls exceeded 2*floor(log2 d); flagged, not an error.
  bool oracle_bound_flag = false;
  std::string backend;
};

/// Recovers x with Q = xP using the DH oracle and a divisor d of p-1.
/// Q must not be the identity. The result is checked (x*P == Q) before return.
ReductionTranscript reduce_dlog(const CyclicGroup& group, DhOracle& oracle, const GroupPoint& q, const BigNat& d,
                                std::uint64_t seed);
/// Same, with the factorization of p-1 supplied by the caller.
ReductionTranscript reduce_dlog(const CyclicGroup& group, DhOracle& oracle, const GroupPoint& q, const BigNat& d,
                                const Factorization& p_minus_1, std::uint64_t seed);

struct CostReport {
  std::uint64_t group_ops = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t bsgs_table_entries = 0;
  BigNat nominal_ops_ceiling;     // 2*ceil(log2 p)*(d1 + s2)
  BigNat table_ops_bound;         // 2*(d1 + s2), the M used in the bound tables
  BigNat extended_ops_ceiling;  // 2*ceil(log2 p)*(G1 + G2 + d1 + s2)
  std::uint64_t predicted_oracle_calls = 0;
  std::uint64_t nominal_call_bound = 0;  // 2*floor(log2 d)
  bool ops_within_nominal = false;
  bool ops_within_extended = false;
  bool calls_match_prediction = false;
  bool calls_within_nominal = false;
  bool calls_within_relaxed = false;  // <= 2*floor(log2 d) + 1
};

CostReport cost_report(const ReductionTranscript& transcript);

/// One JSON object with every transcript field, the ledger and the cost report.
std::string transcript_to_json(const ReductionTranscript& transcript, const CostReport& report, int indent = 2);

}  // namespace dhp
