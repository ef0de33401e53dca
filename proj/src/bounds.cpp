#include "gks/bounds.hpp"

#include <cmath>

#include "gks/errors.hpp"

namespace gks {

namespace {

constexpr int kBaseCost = 11;
constexpr int kBaseBoard = 165;
constexpr int kClassCheckKLimit = 16;  // largest code dimension we certify exhaustively

}  // namespace

double bound_exponent() { return std::log(static_cast<double>(kBaseCost)) / std::log(static_cast<double>(kBaseBoard)); }

double cost_bound(long long n) {
  if (n < 1) throw ParameterError("cost_bound requires n >= 1");
  return kBaseCost * std::pow(static_cast<double>(n), bound_exponent());
}

ExploreReport explore(int r, int w) {
  if (r < 2 || r > 5) throw ParameterError("explore is guarded to 2 <= r <= 5");
  const int n = (1 << r) - 1;
  if (w < 1 || w >= n) throw ParameterError("explore requires 1 <= w < 2^r - 1");

  const HammingCode code = HammingCode::build(r);
  ExploreReport report;
  report.r = r;
  report.w = w;
  report.code_n = n;
  report.subsets = binomial(n, w);
  report.codeword_count = 1LL << code.k();

  if (report.subsets > report.codeword_count) {
    report.pigeonhole_infeasible = true;
    return report;
  }

  const MatchingOutcome outcome = find_saturating_matching(code, w);
  report.search_ran = true;
  report.matching_size = outcome.matched;
  report.feasible = outcome.saturating();
  if (!report.feasible) return report;

  report.block_count = n - w;
  report.strategy_k = n - w;
  report.strategy_n = static_cast<long long>(n) * report.block_count;
  report.exponent = std::log(static_cast<double>(report.strategy_k)) / std::log(static_cast<double>(report.strategy_n));

  if (code.k() <= kClassCheckKLimit) {
    const StrategyPtr strategy = block_strategy(code, *outcome.table);
    const CertificationReport cert = verify_exhaustive(*strategy, *outcome.table);
    report.class_cases = cert.cases;
    report.class_failures = cert.failures;
    report.certified_cost = cert.max_cost;
    report.class_checks = cert.passed() ? ExploreReport::ClassChecks::passed : ExploreReport::ClassChecks::failed;
  } else {
    report.class_checks = ExploreReport::ClassChecks::skipped_scale;
  }
  return report;
}

}  // namespace gks
