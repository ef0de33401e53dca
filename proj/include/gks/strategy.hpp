#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gks/bitboard.hpp"

namespace gks {

// Alice's side of one game: a state machine fed board positions one at a
// time, each only after the previous bit is committed. place() answers
// every position except the last; place_final() answers the last position
// so that the finished board decodes to `signal`.
class AlicePlay {
 public:
  virtual ~AlicePlay() = default;

  virtual int place(int pos) = 0;
  virtual int place_final(int pos, int signal) = 0;
};

// A (k, n) strategy extended with a one-bit signal contract:
//   - decode_signal(board) recovers the signal chosen at place_final;
//   - bob_decode(board) returns at most guaranteed_k positions, ascending,
//     and contains the last-filled position no matter which bit was
//     written there.
// Every procedure is a deterministic function of its visible history, so
// finished boards decode without replaying the game. Strategy objects are
// immutable and shareable; per-game state lives in the AlicePlay returned
// by start().
class SignalingStrategy {
 public:
  SignalingStrategy(int n, int guaranteed_k) : n_(n), guaranteed_k_(guaranteed_k) {}
  virtual ~SignalingStrategy() = default;

  int board_size() const { return n_; }
  int guaranteed_k() const { return guaranteed_k_; }

  // Tight bound established by exhaustive verification, when available.
  std::optional<int> certified_k() const { return certified_k_; }
  int effective_k() const { return certified_k_.value_or(guaranteed_k_); }

  // Records a verified bound. Call before sharing across threads.
  void certify(int k) const;

  virtual std::unique_ptr<AlicePlay> start() const = 0;
  virtual int decode_signal(const BitBoard& board) const = 0;
  virtual std::vector<int> bob_decode(const BitBoard& board) const = 0;

 private:
  int n_;
  int guaranteed_k_;
  mutable std::optional<int> certified_k_;
};

using StrategyPtr = std::shared_ptr<const SignalingStrategy>;

}  // namespace gks
