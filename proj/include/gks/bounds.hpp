#pragma once

#include "gks/strategies.hpp"

namespace gks {

// Exponent of the composed-strategy cost curve: log(11) / log(165).
double bound_exponent();

// Closed-form cost ceiling from composing the (11, 165) strategy:
// 11 * n^(log(11)/log(165)).
double cost_bound(long long n);

struct ExploreReport {
  int r = 0;
  int w = 0;
  int code_n = 0;
  long long subsets = 0;
  long long codeword_count = 0;

  bool pigeonhole_infeasible = false;  // subsets > codewords, decided before any search
  bool search_ran = false;
  long long matching_size = 0;
  bool feasible = false;

  // Populated when feasible.
  int block_count = 0;
  int strategy_k = 0;
  long long strategy_n = 0;
  double exponent = 0.0;

  enum class ClassChecks { not_run, passed, failed, skipped_scale };
  ClassChecks class_checks = ClassChecks::not_run;
  long long class_cases = 0;
  long long class_failures = 0;
  int certified_cost = 0;
};

// Probes whether the (r, w) parameters support a block strategy: builds the
// code, applies the pigeonhole pre-check, searches for a saturating
// matching, and — when the code is small enough to afford it — certifies
// the resulting strategy exhaustively. At r = 5 the matching verdict is
// reported with class checks skipped. 2 <= r <= 5, 1 <= w < 2^r - 1.
ExploreReport explore(int r, int w);

}  // namespace gks
