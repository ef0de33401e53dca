#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gks {

// Fixed-length binary word; doubles as message, codeword, block and game
// board. Positions are 1-based everywhere in this library, matching the
// index sets the game is described with.
class BitBoard {
 public:
  BitBoard() = default;
  explicit BitBoard(int length);

  // Parses a string of '0'/'1'; character j becomes position j.
  static BitBoard from_string(std::string_view bits);
  // Unpacks the low `length` bits of a mask; mask bit p-1 is position p.
  static BitBoard from_mask(std::uint64_t mask, int length);

  int length() const { return length_; }
  int get(int pos) const;
  void set(int pos, int bit);
  void flip(int pos);

  int weight() const;
  bool is_zero() const;
  int distance(const BitBoard& other) const;

  BitBoard& operator^=(const BitBoard& other);
  friend BitBoard operator^(BitBoard a, const BitBoard& b) {
    a ^= b;
    return a;
  }
  bool operator==(const BitBoard&) const = default;

  // The window positions first .. first+len-1 as a board of length len.
  BitBoard slice(int first, int len) const;
  // Overwrites the window starting at `first` with `block`.
  void paste(int first, const BitBoard& block);

  // Packed value of the whole board; requires length <= 64.
  std::uint64_t as_mask() const;

  std::string to_string() const;

 private:
  void check_pos(int pos) const;

  int length_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace gks
