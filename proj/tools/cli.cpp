#include "cli.hpp"

#include <cstdlib>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dhp/bounds.hpp"
#include "dhp/groups.hpp"
#include "dhp/oracle.hpp"
#include "dhp/reduction.hpp"
#include "selftest.hpp"

namespace dhp::cli {
namespace {

const std::map<std::string, OutputFormat> kFormats{
    {"markdown", OutputFormat::kMarkdown}, {"md", OutputFormat::kMarkdown},
    {"csv", OutputFormat::kCsv},           {"json", OutputFormat::kJson}};

std::vector<CurveRecord> open_database(const CliConfig& config) {
  if (!config.database_path.empty()) return load_curve_database(config.database_path);
  if (const char* env = std::getenv("DHP_DB"); env != nullptr && *env != '\0') return load_curve_database(env);
  return embedded_curve_database();
}

int cmd_tables(const CliConfig& config, bool diff, std::ostream& out, std::ostream& err) {
  std::vector<CurveRecord> db;
  try {
    db = open_database(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  const std::vector<BoundRow> rows = table_rows(db);
  switch (config.format) {
    case OutputFormat::kMarkdown: out << render_markdown(rows, diff); break;
    case OutputFormat::kCsv: out << render_csv(rows, diff); break;
    case OutputFormat::kJson: out << render_json(rows) << '\n'; break;
  }
  const int status = table_status(rows);
  if (config.verbosity > 0 || status != kExitOk) {
    for (const auto& row : rows) {
      if (row.worst() == Agreement::kMatch) continue;
      err << row.name << ": " << agreement_name(row.worst()) << " against the published row";
      if (!row.note.empty()) err << " (" << row.note << ")";
      err << '\n';
    }
  }
  return status;
}

CyclicGroup build_group(const std::string& backend, const BigNat& p, const std::string& curve_file,
                        std::uint64_t seed) {
  if (backend == "zp") return CyclicGroup::zp_additive(p);
  if (backend == "mult" || backend == "fq") {
    const MultSubgroupParams m = find_mult_subgroup(p);
    return CyclicGroup::mult_subgroup(m.q, p, m.h);
  }
  if (!curve_file.empty()) {
    CurveParams c = load_curve_file(curve_file);
    if (c.order != p) throw Error(ErrorCode::kIncompatibleParameters, "curve file order differs from --p");
    return CyclicGroup::weierstrass(c);
  }
  const auto curve = find_toy_curve(p, seed);
  if (!curve) {
    throw Error(ErrorCode::kRefusal, "no toy curve of order " + to_decimal(p) +
                                         " (bundled orders: 29, 101, 1009, 15541; search limited to 2^16)");
  }
  return CyclicGroup::weierstrass(*curve);
}

void print_transcript(const ReductionTranscript& tr, const CostReport& report, bool recovered, OutputFormat format,
                      std::ostream& out) {
  const auto& pr = tr.params;
  const std::vector<std::pair<std::string, std::string>> fields{
      {"backend", tr.backend},
      {"p", to_decimal(pr.p)},
      {"d", to_decimal(pr.d)},
      {"zeta0", to_decimal(pr.zeta0)},
      {"zeta", to_decimal(pr.zeta)},
      {"d1", to_decimal(pr.d1)},
      {"s2", to_decimal(pr.s2)},
      {"j", to_decimal(tr.j)},
      {"u1", to_decimal(tr.u1)},
      {"v1", to_decimal(tr.v1)},
      {"t", to_decimal(tr.t)},
      {"u2", to_decimal(tr.u2)},
      {"v2", to_decimal(tr.v2)},
      {"i0", to_decimal(tr.i0)},
      {"x", to_decimal(tr.x)},
      {"group_ops", std::to_string(tr.ledger.group_ops)},
      {"oracle_calls", std::to_string(tr.ledger.oracle_calls)},
      {"bsgs_table_entries", std::to_string(tr.ledger.bsgs_table_entries)},
      {"predicted_oracle_calls", std::to_string(report.predicted_oracle_calls)},
      {"extended_ops_ceiling", to_decimal(report.extended_ops_ceiling)},
      {"nominal_ops_ceiling", to_decimal(report.nominal_ops_ceiling)},
      {"table_ops_bound", to_decimal(report.table_ops_bound)},
      {"ops_within_extended", report.ops_within_extended ? "true" : "false"},
      {"calls_match_prediction", report.calls_match_prediction ? "true" : "false"},
      {"oracle_bound_flag", tr.oracle_bound_flag ? "true" : "false"},
      {"recovered", recovered ? "true" : "false"},
  };
  switch (format) {
    case OutputFormat::kJson:
      out << transcript_to_json(tr, report) << '\n';
      break;
    case OutputFormat::kCsv: {
      std::string header;
      std::string values;
      for (const auto& [k, v] : fields) {
        header += (header.empty() ? "" : ",") + k;
        values += (values.empty() ? "" : ",") + v;
      }
      out << header << '\n' << values << '\n';
      break;
    }
    case OutputFormat::kMarkdown:
      out << "| field | value |\n|---|---|\n";
      for (const auto& [k, v] : fields) out << "| " << k << " | " << v << " |\n";
      break;
  }
}

struct ReduceArgs {
  std::string p;
  std::string d;
  std::string x;
  bool random = false;
  std::string backend = "zp";
  std::string curve_file;
};

int cmd_reduce(const CliConfig& config, const ReduceArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const BigNat p = parse_bignat(args.p);
    const BigNat d = parse_bignat(args.d);
    if (p > (BigNat(1) << 32)) throw Error(ErrorCode::kRefusal, "p above the 2^32 simulation guard");
    if (!is_prime(p, 64)) throw Error(ErrorCode::kInvalidOrder, to_decimal(p) + " is not prime");

    BigNat x;
    if (args.random) {
      std::mt19937_64 rng(config.seed ^ 0xa0761d6478bd642fULL);
      x = random_below(p - 1, rng) + 1;
    } else {
      x = parse_bignat(args.x);
      if (x >= p) throw Error(ErrorCode::kInvalidInput, "x must lie in [1, p-1]");
    }

    const CyclicGroup group = build_group(args.backend, p, args.curve_file, config.seed);
    DhOracle oracle(group);
    const GroupPoint q = group.power_of_generator(x);
    const ReductionTranscript tr = reduce_dlog(group, oracle, q, d, config.seed);
    const CostReport report = cost_report(tr);
    const bool recovered = tr.x == x;
    print_transcript(tr, report, recovered, config.format, out);
    if (config.verbosity > 0) err << "group: " << group.describe() << '\n';
    return recovered ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::string describe_factorization(const Factorization& f) {
  std::string s;
  for (const auto& pp : f.factors) {
    if (!s.empty()) s += " * ";
    s += to_decimal(pp.prime);
    if (pp.exponent > 1) s += "^" + std::to_string(pp.exponent);
  }
  if (f.cofactor != 1) {
    if (!s.empty()) s += " * ";
    s += "[" + to_decimal(f.cofactor) + "]";
  }
  return s.empty() ? "1" : s;
}

struct DivisorArgs {
  std::string p;
  std::string policy = "range";
  std::uint64_t budget = FactorOptions{}.rho_budget;
  std::size_t cap = 1'000'000;
  std::size_t show = 20;
};

int cmd_divisors(const CliConfig& config, const DivisorArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const BigNat p = parse_bignat(args.p);
    if (p < 3 || !is_prime(p, 64)) throw Error(ErrorCode::kInvalidOrder, to_decimal(p) + " is not an odd prime");
    FactorOptions options;
    options.rho_budget = args.budget;
    options.seed = config.seed;
    const Factorization f = factorize(p - 1, options);

    out << "p = " << to_decimal(p) << '\n';
    out << "p-1 = " << describe_factorization(f)
        << (f.complete ? "  (complete)" : "  (partial: factoring budget exhausted, bracketed cofactor unfactored)")
        << '\n';

    Factorization known = f;
    known.cofactor = 1;
    known.complete = true;
    const BigNat lo = icbrt_ceil(p);
    const BigNat hi = isqrt(p);
    out << "range [ceil(cbrt p), floor(sqrt p)] = [" << to_decimal(lo) << ", " << to_decimal(hi) << "]\n";
    const DivisorList found = lo <= hi ? divisors_in_range(known, lo, hi, args.cap) : DivisorList{};
    out << "divisors in range" << (f.complete ? "" : " (from known factors only)") << ": ";
    if (found.values.empty()) out << "none";
    for (std::size_t i = 0; i < found.values.size() && i < args.show; ++i) {
      out << (i ? ", " : "") << to_decimal(found.values[i]);
    }
    if (found.values.size() > args.show) out << ", ... (" << found.values.size() << " total)";
    if (found.truncated) out << " [truncated at cap " << args.cap << "]";
    out << '\n';

    const DivisorPolicy policy =
        args.policy == "min-n" ? DivisorPolicy::kMinOracleCalls : DivisorPolicy::kSmallestInRange;
    if (f.complete) {
      const auto d = suggest_divisor(p, f, policy, args.cap);
      out << "suggested d (" << args.policy << " policy): ";
      if (d) {
        out << to_decimal(*d) << "  n = " << to_decimal(oracle_calls_exact(*d)) << "  log2 M = "
            << log2_approx(reduction_ops_bound(p, *d)) << '\n';
      } else {
        out << "none\n";
      }
    } else {
      out << "suggested d (" << args.policy << " policy): unavailable (partial factorization)\n";
    }

    try {
      for (const auto& rec : open_database(config)) {
        if (rec.p != p) continue;
        out << "database " << rec.name << ": ";
        if (!rec.d) {
          out << "no d recorded\n";
          continue;
        }
        const BigNat pm1 = p - 1;
        const bool divides = mpz_divisible_p(pm1.get_mpz_t(), rec.d->get_mpz_t()) != 0;
        out << "d = " << to_decimal(*rec.d) << " divides p-1: " << (divides ? "yes" : "NO") << '\n';
      }
    } catch (const Error& e) {
      err << "warning: database unavailable: " << e.what() << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DLP-to-DHP reduction runner and DH lower-bound tables", "dhptool"};
  app.require_subcommand(1);

  CliConfig config;
  app.add_flag("-v,--verbose", config.verbosity, "Print extra diagnostics to stderr");
  app.add_option("--db", config.database_path, "Curve database JSON (default: $DHP_DB, then the embedded copy)");

  auto* tables = app.add_subcommand("tables", "Reproduce the lower-bound tables");
  bool diff = false;
  tables->add_option("--format", config.format, "markdown, csv or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  tables->add_flag("--diff", diff, "Show computed minus published values");

  auto* reduce = app.add_subcommand("reduce", "Run the reduction on a desk-scale group");
  ReduceArgs rargs;
  reduce->add_option("--p", rargs.p, "Prime group order (<= 2^32)")->required();
  reduce->add_option("--d", rargs.d, "Divisor of p-1")->required();
  auto* x_opt = reduce->add_option("--x", rargs.x, "Discrete logarithm to hide in Q = xP");
  auto* random_opt = reduce->add_flag("--random", rargs.random, "Draw x from --seed");
  x_opt->excludes(random_opt);
  reduce->add_option("--backend", rargs.backend, "zp, mult (alias fq) or ec")
      ->check(CLI::IsMember({"zp", "mult", "fq", "ec"}));
  reduce->add_option("--curve", rargs.curve_file, "EC parameters JSON for --backend ec");
  reduce->add_option("--seed", config.seed, "Seed for x and the generator search");
  reduce->add_option("--format", config.format, "markdown, csv or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  auto* divisors = app.add_subcommand("divisors", "Factor p-1 and suggest a divisor d");
  DivisorArgs dargs;
  divisors->add_option("--p", dargs.p, "Prime p")->required();
  divisors->add_option("--policy", dargs.policy, "range (alias paper) or min-n")
      ->check(CLI::IsMember({"range", "paper", "min-n"}));
  divisors->add_option("--budget", dargs.budget, "Pollard-rho budget in modular multiplications");
  divisors->add_option("--cap", dargs.cap, "Maximum number of divisors to enumerate");
  divisors->add_option("--seed", config.seed, "Seed for Pollard-rho");

  auto* selftest = app.add_subcommand("selftest", "Run the module invariant suites");
  std::string depth = "quick";
  selftest->add_option("--depth", depth, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  selftest->add_option("--seed", config.seed, "Sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kExitUsage;
  }

  if (tables->parsed()) {
    config.subcommand = "tables";
    return cmd_tables(config, diff, out, err);
  }
  if (reduce->parsed()) {
    config.subcommand = "reduce";
    if (rargs.x.empty() && !rargs.random) {
      err << "usage error: reduce needs --x N or --random\n";
      return kExitUsage;
    }
    return cmd_reduce(config, rargs, out, err);
  }
  if (divisors->parsed()) {
    config.subcommand = "divisors";
    return cmd_divisors(config, dargs, out, err);
  }
  config.subcommand = "selftest";
  const bool ok = run_selftest(depth == "full" ? SelftestDepth::kFull : SelftestDepth::kQuick, config.seed, out);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace dhp::cli
