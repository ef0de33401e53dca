#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gks/hamming.hpp"
#include "gks/matcher.hpp"
#include "gks/strategy.hpp"

namespace gks {

// Single-block strategy over the table's code: (n - w, n). Alice answers
// her first w arrivals with ones, then copies the codeword matched to
// those positions; the final bit leaves the block a codeword exactly when
// the signal is 1. Bob reads a codeword block through the table and
// returns its n - w uncovered positions, otherwise the unique flip.
StrategyPtr hamming_block_strategy(const HammingCode& code, const MatchingTable& table);

// (m, m): Alice plays zeros and writes the signal itself as the last bit;
// a lone 1 on the board names the final position.
StrategyPtr indicator_strategy(int m);

// Product strategy: outer.board_size() contiguous blocks of
// inner.board_size() positions each. Each block hosts one inner game;
// completing a block plays one move of the outer game, in completion
// order, with the block's signal as the move. Parameters multiply:
// (k_inner * k_outer, n_inner * n_outer).
StrategyPtr compose(StrategyPtr inner, StrategyPtr outer);

// Direct multi-block strategy for the table's code: n - w blocks of n
// positions, k = n - w. Behaves exactly like
// compose(hamming_block_strategy, indicator_strategy(n - w)).
StrategyPtr block_strategy(const HammingCode& code, const MatchingTable& table);

// t-fold self-composition, left associated: n = base.n^t.
StrategyPtr power(StrategyPtr base, int t);

// Restriction of a strategy to its first n_small positions. Alice feeds
// the strategy the positions above n_small in ascending order before the
// real game starts; Bob regenerates that fixed prefix when decoding and
// keeps only answers within 1..n_small. The cost bound carries over.
StrategyPtr pad(StrategyPtr base, int n_small);

struct CertificationReport {
  long long cases = 0;
  long long failures = 0;
  int max_cost = 0;
  std::vector<std::string> witnesses;  // first few failing classes

  bool passed() const { return failures == 0; }
};

// Exhaustive certification of a block-structured strategy against its
// table. A block's finished content is determined by which w positions
// arrived first, which position arrived last, who wrote the last bit, and
// that bit; the verifier drives the strategy through one representative
// game per class — binomial(n, w) * (n - w) * 2 * 2 in all — and checks
// the decode contract, the soundness contract, and that completed blocks
// never masquerade as codewords. On success the strategy is certified
// with the observed maximum cost.
CertificationReport verify_exhaustive(const SignalingStrategy& strategy, const MatchingTable& table);

}  // namespace gks
