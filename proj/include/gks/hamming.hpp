#pragma once

#include <cstdint>
#include <vector>

#include "gks/bitboard.hpp"

namespace gks {

// Outcome of classifying a received word: either it is a codeword, or there
// is a unique position whose flip turns it into one.
struct DecodeOutcome {
  enum class Kind { Exact, Flip };

  Kind kind = Kind::Exact;
  int position = 0;  // 1-based; meaningful only for Flip

  static DecodeOutcome exact() { return {Kind::Exact, 0}; }
  static DecodeOutcome flip(int pos) { return {Kind::Flip, pos}; }
  bool is_exact() const { return kind == Kind::Exact; }
  bool operator==(const DecodeOutcome&) const = default;
};

struct CodeAudit {
  long long codeword_count = 0;
  int min_distance = 0;
  bool perfect = false;
};

// Binary Hamming code of length n = 2^r - 1 in systematic form. The
// parity-check matrix has the identity in its last n-k columns; the first
// k columns are the r-bit patterns of weight >= 2 in ascending numeric
// order, row 1 being the most significant bit. Fixing the column order
// fixes one canonical code per r, so tables and transcripts derived from
// it reproduce bit for bit.
//
// Instances are immutable after build() and safe to share across threads.
class HammingCode {
 public:
  // 2 <= r <= 16.
  static HammingCode build(int r);

  int r() const { return r_; }
  int n() const { return n_; }
  int k() const { return k_; }

  // Parity-check column for a position, as an r-bit value.
  std::uint32_t column(int pos) const;
  // The r parity-check rows as length-n boards.
  std::vector<BitBoard> parity_rows() const;

  std::uint32_t syndrome(const BitBoard& word) const;
  bool is_codeword(const BitBoard& word) const { return syndrome(word) == 0; }
  DecodeOutcome classify(const BitBoard& word) const;

  // Same services on the n-bit window of a longer board starting at `first`.
  std::uint32_t syndrome_at(const BitBoard& board, int first) const;
  bool is_codeword_at(const BitBoard& board, int first) const { return syndrome_at(board, first) == 0; }
  // Flip positions are reported local to the window (in 1..n).
  DecodeOutcome classify_at(const BitBoard& board, int first) const;

  // Systematic encoding: the first k bits of the result equal the message.
  BitBoard encode(const BitBoard& message) const;

  // All 2^k codewords; entry m encodes the message whose packed mask is m
  // (position 1 is the least significant digit), so entry 0 is the zero
  // word. Guarded to k <= 26.
  std::vector<BitBoard> codewords() const;

  // Exhaustive audit over all 2^n words; guarded to n <= 31.
  CodeAudit audit() const;

  // Packed fast paths, available while n <= 63. Mask bit p-1 is position p.
  std::uint64_t encode_mask(std::uint64_t message) const;
  std::uint32_t syndrome_mask(std::uint64_t word) const;

 private:
  HammingCode() = default;

  int r_ = 0;
  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint32_t> columns_;               // size n
  std::vector<std::int32_t> position_of_syndrome_;   // size 2^r; 0 at index 0
  std::vector<std::uint64_t> unit_codewords_;        // per message bit; empty when n > 63
};

}  // namespace gks
