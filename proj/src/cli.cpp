#include "gks/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "gks/bounds.hpp"
#include "gks/engine.hpp"
#include "gks/errors.hpp"
#include "gks/hamming.hpp"
#include "gks/matcher.hpp"
#include "gks/strategies.hpp"

namespace gks::cli {

namespace {

std::string format_exponent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Nine significant digits, with a trailing ".0" when that rounds to an
// integer, so exact powers print as e.g. "121.0".
std::string format_bound(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

const char* bool_name(bool v) { return v ? "true" : "false"; }

int do_code_audit(int r, std::ostream& out) {
  const HammingCode code = HammingCode::build(r);
  const CodeAudit audit = code.audit();
  out << "r=" << code.r() << "\n"
      << "n=" << code.n() << "\n"
      << "k=" << code.k() << "\n"
      << "codeword_count=" << audit.codeword_count << "\n"
      << "min_distance=" << audit.min_distance << "\n"
      << "perfect=" << bool_name(audit.perfect) << "\n";
  return audit.perfect ? 0 : 1;
}

int do_matching_build(int r, int w, const std::string& out_path, std::ostream& out) {
  const HammingCode code = HammingCode::build(r);
  const MatchingOutcome outcome = find_saturating_matching(code, w);
  out << "r=" << r << "\n"
      << "w=" << w << "\n"
      << "n=" << code.n() << "\n"
      << "subsets=" << outcome.wanted << "\n"
      << "matched=" << outcome.matched << "\n"
      << "saturating=" << bool_name(outcome.saturating()) << "\n";
  if (!outcome.saturating()) return 1;
  write_table(*outcome.table, out_path);
  out << "table=" << out_path << "\n";
  return 0;
}

int do_matching_verify(const std::string& table_path, std::ostream& out) {
  const MatchingTable table = parse_table(table_path);
  const HammingCode code = HammingCode::build(table.r());
  const TableCheck check = verify_table(table, code);
  out << "table=" << table_path << "\n"
      << "r=" << table.r() << "\n"
      << "w=" << table.w() << "\n"
      << "n=" << table.n() << "\n"
      << "entries=" << check.entry_count << "\n";
  for (const auto& v : check.violations) out << "violation=" << v << "\n";
  out << "violations=" << check.violations.size() << "\n"
      << "result=" << (check.passed() ? "pass" : "fail") << "\n";
  return check.passed() ? 0 : 1;
}

int do_verify_exhaustive(const std::string& table_path, std::ostream& out) {
  const MatchingTable table = parse_table(table_path);
  const HammingCode code = HammingCode::build(table.r());
  const StrategyPtr strategy = block_strategy(code, table);
  const CertificationReport report = verify_exhaustive(*strategy, table);
  out << "table=" << table_path << "\n"
      << "cases=" << report.cases << "\n"
      << "failures=" << report.failures << "\n"
      << "max_cost=" << report.max_cost << "\n";
  for (const auto& w : report.witnesses) out << "witness=" << w << "\n";
  out << "result=" << (report.passed() ? "pass" : "fail") << "\n";
  return report.passed() ? 0 : 1;
}

int do_play(long long n, long long games, std::uint64_t seed, const std::string& table_path, int pad_m, int power_t,
            std::ostream& out) {
  const MatchingTable table = read_table(table_path);
  const HammingCode code = HammingCode::build(table.r());
  StrategyPtr strategy = block_strategy(code, table);
  const long long base_n = strategy->board_size();

  if (power_t > 0) strategy = power(strategy, power_t);
  if (pad_m > 0) strategy = pad(strategy, pad_m);
  if (power_t == 0 && pad_m == 0 && n != strategy->board_size()) {
    // Pick the smallest power that reaches n, padding down when n is not
    // an exact power.
    long long current = base_n;
    int t = 1;
    while (current < n && t < 16) {
      current *= base_n;
      ++t;
    }
    strategy = power(strategy, t);
    if (strategy->board_size() != n) strategy = pad(strategy, static_cast<int>(n));
  }
  if (n != strategy->board_size())
    throw ParameterError("--n is " + std::to_string(n) + " but the assembled strategy plays " +
                         std::to_string(strategy->board_size()) + " positions");

  const TrialSummary summary = random_trials(*strategy, games, seed);
  out << "n=" << strategy->board_size() << "\n"
      << "guaranteed_k=" << strategy->guaranteed_k() << "\n"
      << "trials=" << summary.trials << "\n"
      << "failures=" << summary.failures << "\n"
      << "max_cost=" << summary.max_cost << "\n"
      << "branch_codeword=" << summary.branch_codeword << "\n"
      << "branch_plain=" << summary.branch_plain << "\n"
      << "seed=" << summary.seed << "\n"
      << "result=" << (summary.failures == 0 ? "pass" : "fail") << "\n";
  return summary.failures == 0 ? 0 : 1;
}

int do_bound(long long n, std::ostream& out) {
  out << "n=" << n << "\n"
      << "bound=" << format_bound(cost_bound(n)) << "\n"
      << "exponent=" << format_exponent(bound_exponent()) << "\n";
  return 0;
}

int do_explore(int r, int w, std::ostream& out) {
  const ExploreReport report = explore(r, w);
  out << "r=" << report.r << "\n"
      << "w=" << report.w << "\n"
      << "code_n=" << report.code_n << "\n"
      << "subsets=" << report.subsets << "\n"
      << "codeword_count=" << report.codeword_count << "\n"
      << "pigeonhole_infeasible=" << bool_name(report.pigeonhole_infeasible) << "\n";
  if (report.search_ran) out << "matching_size=" << report.matching_size << "\n";
  out << "feasible=" << bool_name(report.feasible) << "\n";
  if (report.feasible) {
    out << "block_count=" << report.block_count << "\n"
        << "strategy_k=" << report.strategy_k << "\n"
        << "strategy_n=" << report.strategy_n << "\n"
        << "exponent=" << format_exponent(report.exponent) << "\n";
    switch (report.class_checks) {
      case ExploreReport::ClassChecks::passed:
        out << "class_checks=passed\n"
            << "class_cases=" << report.class_cases << "\n"
            << "class_failures=" << report.class_failures << "\n"
            << "max_cost=" << report.certified_cost << "\n";
        break;
      case ExploreReport::ClassChecks::failed:
        out << "class_checks=failed\n"
            << "class_cases=" << report.class_cases << "\n"
            << "class_failures=" << report.class_failures << "\n";
        break;
      case ExploreReport::ClassChecks::skipped_scale:
        out << "class_checks=skipped\n"
            << "note=matching-feasible, correctness unverified at this scale\n";
        break;
      case ExploreReport::ClassChecks::not_run:
        break;
    }
  }
  return report.class_checks == ExploreReport::ClassChecks::failed ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block strategies, matchings and cost bounds for the GKS bit-placement game"};
  app.name("gks");
  app.require_subcommand(1);

  int exit_code = 0;

  auto* code_cmd = app.add_subcommand("code", "Hamming code services");
  code_cmd->require_subcommand(1);
  auto* audit_cmd = code_cmd->add_subcommand("audit", "Exhaustively audit the canonical code for r");
  int audit_r = 0;
  audit_cmd->add_option("--r", audit_r, "number of parity checks")->required();
  audit_cmd->callback([&] { exit_code = do_code_audit(audit_r, out); });

  auto* matching_cmd = app.add_subcommand("matching", "Subset-to-codeword matching tables");
  matching_cmd->require_subcommand(1);
  auto* build_cmd = matching_cmd->add_subcommand("build", "Search for a saturating matching and write the table");
  int build_r = 0, build_w = 0;
  std::string build_out;
  build_cmd->add_option("--r", build_r, "number of parity checks")->required();
  build_cmd->add_option("--w", build_w, "subset size")->required();
  build_cmd->add_option("--out", build_out, "output table path")->required();
  build_cmd->callback([&] { exit_code = do_matching_build(build_r, build_w, build_out, out); });

  auto* mverify_cmd = matching_cmd->add_subcommand("verify", "Check a table file against all table invariants");
  std::string mverify_table;
  mverify_cmd->add_option("--table", mverify_table, "table path")->required();
  mverify_cmd->callback([&] { exit_code = do_matching_verify(mverify_table, out); });

  auto* verify_cmd = app.add_subcommand("verify", "Strategy verification");
  verify_cmd->require_subcommand(1);
  auto* exhaustive_cmd = verify_cmd->add_subcommand("exhaustive", "Certify the block strategy over every game class");
  std::string exhaustive_table;
  exhaustive_cmd->add_option("--table", exhaustive_table, "table path")->required();
  exhaustive_cmd->callback([&] { exit_code = do_verify_exhaustive(exhaustive_table, out); });

  auto* play_cmd = app.add_subcommand("play", "Seeded adversarial games against the strategy");
  long long play_n = 0, play_games = 0;
  std::uint64_t play_seed = 0;
  std::string play_table;
  int play_pad = 0, play_power = 0;
  play_cmd->add_option("--n", play_n, "board size")->required();
  play_cmd->add_option("--games", play_games, "number of trials")->required();
  play_cmd->add_option("--seed", play_seed, "master seed")->required();
  play_cmd->add_option("--table", play_table, "table path")->required();
  play_cmd->add_option("--pad", play_pad, "pad the strategy down to this board size");
  play_cmd->add_option("--power", play_power, "self-compose the strategy this many times");
  play_cmd->callback([&] { exit_code = do_play(play_n, play_games, play_seed, play_table, play_pad, play_power, out); });

  auto* bound_cmd = app.add_subcommand("bound", "Closed-form cost bound");
  long long bound_n = 0;
  bound_cmd->add_option("--n", bound_n, "board size")->required();
  bound_cmd->callback([&] { exit_code = do_bound(bound_n, out); });

  auto* explore_cmd = app.add_subcommand("explore", "Probe generalized (r, w) strategy parameters");
  int explore_r = 0, explore_w = 0;
  explore_cmd->add_option("--r", explore_r, "number of parity checks")->required();
  explore_cmd->add_option("--w", explore_w, "subset size")->required();
  explore_cmd->callback([&] { exit_code = do_explore(explore_r, explore_w, out); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'gks --help' for usage\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ProtocolViolation& e) {
    err << "protocol violation: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace gks::cli
