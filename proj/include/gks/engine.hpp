#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gks/bitboard.hpp"
#include "gks/rng.hpp"
#include "gks/strategy.hpp"

namespace gks {

// The order positions are revealed in; the last element is the position
// Eve fills.
struct Permutation {
  std::vector<int> order;

  static Permutation identity(int n);
  static Permutation random(int n, SplitMix64& rng);

  int size() const { return static_cast<int>(order.size()); }
  int final_index() const;
  void validate() const;  // bijection on 1..n
};

enum class Actor { alice, eve };

struct TranscriptRecord {
  int step = 0;
  int index = 0;
  Actor actor = Actor::alice;
  int bit = 0;

  bool operator==(const TranscriptRecord&) const = default;
};

struct Transcript {
  std::vector<TranscriptRecord> records;  // exactly n, eve last
  BitBoard board;

  bool operator==(const Transcript&) const = default;
};

struct GameResult {
  int n = 0;
  int eve_index = 0;
  int eve_bit = 0;
  std::vector<int> bob_set;  // ascending
  int cost = 0;
  bool contained = false;
  bool exceeded_k = false;  // bob_set larger than the strategy's guaranteed_k
};

// Referees one game: positions are revealed to the strategy one at a time,
// Eve writes the final bit, and Bob decodes the finished board alone.
GameResult run_game(const SignalingStrategy& strategy, const Permutation& permutation, int eve_bit,
                    BitBoard* board_out = nullptr, Transcript* transcript_out = nullptr);

// Worst case over Eve's bit: a failing result wins; otherwise the costlier.
GameResult run_adversarial(const SignalingStrategy& strategy, const Permutation& permutation);

struct TrialSummary {
  long long trials = 0;
  long long failures = 0;
  int max_cost = 0;
  long long branch_codeword = 0;  // finished boards decoding to signal 1
  long long branch_plain = 0;
  std::uint64_t seed = 0;

  bool operator==(const TrialSummary&) const = default;
};

// Seeded adversarial games on random permutations. Trial t draws its
// permutation from a substream of (master_seed, t), so the summary does
// not depend on execution order.
TrialSummary random_trials(const SignalingStrategy& strategy, long long trials, std::uint64_t master_seed);

// Line format: "step<TAB>index<TAB>actor<TAB>bit" per record, then
// "board<TAB><bitstring>". Reading validates the transcript invariants.
void write_transcript(const Transcript& transcript, const std::filesystem::path& file);
Transcript read_transcript(const std::filesystem::path& file);

}  // namespace gks
