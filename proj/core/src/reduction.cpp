#include "dhp/reduction.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

#include <json.hpp>

namespace dhp {
namespace {

BigNat ceil_div(const BigNat& a, const BigNat& b) {
  BigNat out;
  mpz_cdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::uint64_t ceil_log2(const BigNat& n) { return n <= 1 ? 0 : bit_length(n - 1); }

std::uint64_t floor_log2(const BigNat& n) { return bit_length(n) - 1; }

Factorization factor_p_minus_1(const BigNat& p) {
  if (p == 2) return Factorization{};
  return factorize(p - 1);
}

}  // namespace

bool is_primitive_root(const BigNat& g, const BigNat& p, const Factorization& p_minus_1) {
  const BigNat order = p - 1;
  if (g % p == 0) return false;
  for (const auto& f : p_minus_1.factors) {
    if (mod_pow(g, order / f.prime, p) == 1) return false;
  }
  return true;
}

double generator_density_bound(const BigNat& p) {
  const double ll = std::log(log2_approx(p - 1) * std::log(2.0));
  return 1.0 / (6.0 * ll);
}

GeneratorSearch find_generator(const BigNat& p, const Factorization& p_minus_1, std::uint64_t seed) {
  if (p < 2) throw Error(ErrorCode::kInvalidInput, "find_generator needs a prime p >= 2");
  if (p == 2) return {BigNat(1), 1};
  if (!p_minus_1.complete) throw Error(ErrorCode::kIncompleteFactorization, "factorization of p-1 is incomplete");
  if (p_minus_1.value() != p - 1) throw Error(ErrorCode::kInvalidInput, "factorization does not describe p-1");
  if (p == 3) return {BigNat(2), 1};

  const double ll = std::log(log2_approx(p - 1) * std::log(2.0));
  const auto per_unit = static_cast<std::uint64_t>(std::ceil(std::max(1.0, 6.0 * ll)));
  const std::uint64_t max_failures = 512 * per_unit;

  std::mt19937_64 rng(seed);
  const BigNat span = p - 3;  // candidates 2 .. p-2
  for (std::uint64_t drawn = 1; drawn <= max_failures + 1; ++drawn) {
    BigNat candidate = random_below(span, rng) + 2;
    if (is_primitive_root(candidate, p, p_minus_1)) return {std::move(candidate), drawn};
  }
  throw Error(ErrorCode::kImprobableFailure,
              "no generator of F_" + to_decimal(p) + "^* after " + std::to_string(max_failures) + " samples");
}

BigNat ReductionParams::phase1_giant_steps() const { return ceil_div(cofactor, d1) + 1; }
BigNat ReductionParams::phase2_giant_steps() const { return ceil_div(d, s2) + 1; }

ReductionParams make_reduction_params(const BigNat& p, const BigNat& d, const Factorization& p_minus_1,
                                      std::uint64_t seed) {
  const BigNat p_minus_one = p - 1;
  if (d < 1 || !mpz_divisible_p(p_minus_one.get_mpz_t(), d.get_mpz_t())) {
    throw Error(ErrorCode::kInvalidDivisor, to_decimal(d) + " does not divide p-1 = " + to_decimal(p_minus_one));
  }
  ReductionParams params;
  params.p = p;
  params.d = d;
  params.cofactor = p_minus_one / d;
  params.d1 = isqrt(params.cofactor);
  params.s2 = isqrt(d);
  const GeneratorSearch gen = find_generator(p, p_minus_1, seed);
  params.zeta0 = gen.zeta0;
  params.generator_candidates = gen.candidates;
  params.zeta = p == 2 ? BigNat(1) : mod_pow(params.zeta0, d, p);
  params.seed = seed;
  return params;
}

Phase1Match phase1_find_j(ImplicitField& field, const ImplicitElement& x_pow_d, const ReductionParams& params) {
  const CyclicGroup& group = field.group();
  std::unordered_map<std::string, BigNat> baby;
  ImplicitElement current = x_pow_d;
  for (BigNat v1 = 0; v1 <= params.d1; ++v1) {
    baby.emplace(group.encode(current.image()), v1);
    if (v1 < params.d1) current = field.scalar(params.zeta, current);
  }
  field.ledger().bsgs_table_entries += baby.size();

  const BigNat stride = params.p == 2 ? BigNat(1) : mod_pow(params.zeta, params.d1, params.p);
  const BigNat giant_steps = params.phase1_giant_steps();
  ImplicitElement giant = field.one();
  for (BigNat u1 = 1; u1 <= giant_steps; ++u1) {
    giant = field.scalar(stride, giant);
    const auto it = baby.find(group.encode(giant.image()));
    if (it == baby.end()) continue;
    BigNat j = u1 * params.d1 - it->second;
    if (j >= 1 && j <= params.cofactor) return {std::move(j), u1, it->second};
  }
  throw Error(ErrorCode::kInternalInconsistency, "phase 1 found no j; x^d is not in <zeta> (broken oracle?)");
}

Phase2Match phase2_find_t(ImplicitField& field, const GroupPoint& q, const BigNat& j, const ReductionParams& params) {
  const CyclicGroup& group = field.group();
  const BigNat& p = params.p;
  const BigNat baby_factor = p == 2 ? BigNat(1) : mod_pow(params.zeta0, params.cofactor, p);
  const BigNat giant_factor = p == 2 ? BigNat(1) : mod_pow(baby_factor, params.s2, p);

  std::unordered_map<std::string, BigNat> baby;
  ImplicitElement current = field.wrap(q);
  for (BigNat v2 = 0; v2 <= params.s2; ++v2) {
    baby.emplace(group.encode(current.image()), v2);
    if (v2 < params.s2) current = field.scalar(baby_factor, current);
  }
  field.ledger().bsgs_table_entries += baby.size();

  ImplicitElement giant = field.embed(p == 2 ? BigNat(1) : mod_pow(params.zeta0, j, p));
  const BigNat giant_steps = params.phase2_giant_steps();
  for (BigNat u2 = 0; u2 <= giant_steps; ++u2) {
    if (u2 > 0) giant = field.scalar(giant_factor, giant);
    const auto it = baby.find(group.encode(giant.image()));
    if (it == baby.end()) continue;
    BigNat t = u2 * params.s2 - it->second;
    if (t >= 0 && t < params.d) return {std::move(t), u2, it->second};
  }
  throw Error(ErrorCode::kInternalInconsistency, "phase 2 found no t");
}

ReductionTranscript reduce_dlog(const CyclicGroup& group, DhOracle& oracle, const GroupPoint& q, const BigNat& d,
                                std::uint64_t seed) {
  return reduce_dlog(group, oracle, q, d, factor_p_minus_1(group.order()), seed);
}

ReductionTranscript reduce_dlog(const CyclicGroup& group, DhOracle& oracle, const GroupPoint& q, const BigNat& d,
                                const Factorization& p_minus_1, std::uint64_t seed) {
  if (group.is_identity(q)) {
    throw Error(ErrorCode::kZeroDlog, "Q is the identity; x = 0 lies outside F_p^*");
  }
  const BigNat& p = group.order();

  ReductionTranscript tr;
  tr.backend = std::string(backend_name(group.backend()));
  tr.params = make_reduction_params(p, d, p_minus_1, seed);
  const ReductionParams& params = tr.params;

  {
    ImplicitField field(group, oracle, tr.ledger);
    const ImplicitElement image_x = field.wrap(q);
    const ImplicitElement x_pow_d = d == 1 ? image_x : field.pow(image_x, d);

    const Phase1Match m1 = phase1_find_j(field, x_pow_d, params);
    tr.j = m1.j;
    tr.u1 = m1.u1;
    tr.v1 = m1.v1;

    const Phase2Match m2 = phase2_find_t(field, q, tr.j, params);
    tr.t = m2.t;
    tr.u2 = m2.u2;
    tr.v2 = m2.v2;
  }

  tr.i0 = params.cofactor * tr.t + tr.j;
  tr.x = p == 2 ? BigNat(1) : mod_pow(params.zeta0, tr.i0, p);

  tr.ledger.charge_group_ops(scalar_mul_cost(tr.x));
  if (!group.eq(group.power_of_generator(tr.x), q)) {
    throw Error(ErrorCode::kInternalInconsistency, "recovered x = " + to_decimal(tr.x) + " does not satisfy xP = Q");
  }
  tr.oracle_bound_flag = d >= 2 && tr.ledger.oracle_calls > 2 * floor_log2(d);
  return tr;
}

CostReport cost_report(const ReductionTranscript& tr) {
  const ReductionParams& params = tr.params;
  CostReport r;
  r.group_ops = tr.ledger.group_ops;
  r.oracle_calls = tr.ledger.oracle_calls;
  r.bsgs_table_entries = tr.ledger.bsgs_table_entries;

  const BigNat log_p = static_cast<unsigned long>(ceil_log2(params.p));
  r.nominal_ops_ceiling = 2 * log_p * (params.d1 + params.s2);
  r.table_ops_bound = 2 * (params.d1 + params.s2);
  r.extended_ops_ceiling =
      2 * log_p * (params.phase1_giant_steps() + params.phase2_giant_steps() + params.d1 + params.s2);

  r.predicted_oracle_calls = params.d == 1 ? 0 : pow_cost(params.d).oracle_calls;
  r.nominal_call_bound = 2 * floor_log2(params.d);
  r.ops_within_nominal = BigNat(static_cast<unsigned long>(r.group_ops)) <= r.nominal_ops_ceiling;
  r.ops_within_extended = BigNat(static_cast<unsigned long>(r.group_ops)) <= r.extended_ops_ceiling;
  r.calls_match_prediction = r.oracle_calls == r.predicted_oracle_calls;
  r.calls_within_nominal = r.oracle_calls <= r.nominal_call_bound;
  r.calls_within_relaxed = r.oracle_calls <= r.nominal_call_bound + 1;
  return r;
}

std::string transcript_to_json(const ReductionTranscript& tr, const CostReport& report, int indent) {
  using nlohmann::ordered_json;
  const ReductionParams& params = tr.params;
  ordered_json doc;
  doc["backend"] = tr.backend;
  doc["params"] = {
      {"p", to_decimal(params.p)},           {"d", to_decimal(params.d)},
      {"cofactor", to_decimal(params.cofactor)}, {"d1", to_decimal(params.d1)},
      {"s2", to_decimal(params.s2)},         {"zeta0", to_decimal(params.zeta0)},
      {"zeta", to_decimal(params.zeta)},     {"seed", params.seed},
      {"generator_candidates", params.generator_candidates},
  };
  doc["j"] = to_decimal(tr.j);
  doc["u1"] = to_decimal(tr.u1);
  doc["v1"] = to_decimal(tr.v1);
  doc["t"] = to_decimal(tr.t);
  doc["u2"] = to_decimal(tr.u2);
  doc["v2"] = to_decimal(tr.v2);
  doc["i0"] = to_decimal(tr.i0);
  doc["x"] = to_decimal(tr.x);
  doc["ledger"] = {
      {"group_ops", tr.ledger.group_ops},
      {"oracle_calls", tr.ledger.oracle_calls},
      {"bsgs_table_entries", tr.ledger.bsgs_table_entries},
  };
  doc["cost"] = {
      {"nominal_ops_ceiling", to_decimal(report.nominal_ops_ceiling)},
      {"table_ops_bound", to_decimal(report.table_ops_bound)},
      {"extended_ops_ceiling", to_decimal(report.extended_ops_ceiling)},
      {"predicted_oracle_calls", report.predicted_oracle_calls},
      {"nominal_call_bound", report.nominal_call_bound},
      {"ops_within_nominal", report.ops_within_nominal},
      {"ops_within_extended", report.ops_within_extended},
      {"calls_match_prediction", report.calls_match_prediction},
      {"calls_within_nominal", report.calls_within_nominal},
      {"calls_within_relaxed", report.calls_within_relaxed},
  };
  doc["oracle_bound_flag"] = tr.oracle_bound_flag;
  return doc.dump(indent);
}

}  // namespace dhp
