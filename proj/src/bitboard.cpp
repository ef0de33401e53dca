#include "gks/bitboard.hpp"

#include <bit>

#include "gks/errors.hpp"

namespace gks {

namespace {

std::uint64_t tail_mask(int length) {
  const int rem = length % 64;
  return rem == 0 ? ~0ULL : (~0ULL >> (64 - rem));
}

}  // namespace

BitBoard::BitBoard(int length) : length_(length) {
  if (length < 0) throw ParameterError("board length must be nonnegative");
  words_.assign((static_cast<std::size_t>(length) + 63) / 64, 0);
}

BitBoard BitBoard::from_string(std::string_view bits) {
  BitBoard board(static_cast<int>(bits.size()));
  for (int p = 1; p <= board.length_; ++p) {
    const char c = bits[static_cast<std::size_t>(p) - 1];
    if (c != '0' && c != '1') throw ParameterError("bit strings may contain only '0' and '1'");
    if (c == '1') board.words_[(p - 1) / 64] |= 1ULL << ((p - 1) % 64);
  }
  return board;
}

BitBoard BitBoard::from_mask(std::uint64_t mask, int length) {
  if (length < 0 || length > 64) throw ParameterError("mask boards are limited to 64 positions");
  BitBoard board(length);
  if (length > 0) board.words_[0] = mask & tail_mask(length);
  return board;
}

void BitBoard::check_pos(int pos) const {
  if (pos < 1 || pos > length_) throw ParameterError("position " + std::to_string(pos) + " out of range 1.." + std::to_string(length_));
}

int BitBoard::get(int pos) const {
  check_pos(pos);
  return static_cast<int>((words_[(pos - 1) / 64] >> ((pos - 1) % 64)) & 1ULL);
}

void BitBoard::set(int pos, int bit) {
  check_pos(pos);
  if (bit != 0 && bit != 1) throw ParameterError("bit must be 0 or 1");
  const std::uint64_t mask = 1ULL << ((pos - 1) % 64);
  if (bit)
    words_[(pos - 1) / 64] |= mask;
  else
    words_[(pos - 1) / 64] &= ~mask;
}

void BitBoard::flip(int pos) {
  check_pos(pos);
  words_[(pos - 1) / 64] ^= 1ULL << ((pos - 1) % 64);
}

int BitBoard::weight() const {
  int total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool BitBoard::is_zero() const {
  for (std::uint64_t w : words_)
    if (w != 0) return false;
  return true;
}

int BitBoard::distance(const BitBoard& other) const {
  if (length_ != other.length_) throw ParameterError("distance requires equal lengths");
  int total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) total += std::popcount(words_[i] ^ other.words_[i]);
  return total;
}

BitBoard& BitBoard::operator^=(const BitBoard& other) {
  if (length_ != other.length_) throw ParameterError("xor requires equal lengths");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitBoard BitBoard::slice(int first, int len) const {
  if (len < 0) throw ParameterError("slice length must be nonnegative");
  if (first < 1 || first + len - 1 > length_) throw ParameterError("slice window out of range");
  BitBoard out(len);
  const std::size_t src = static_cast<std::size_t>(first) - 1;
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    const std::size_t bitpos = src + i * 64;
    const std::size_t wi = bitpos / 64;
    const std::size_t off = bitpos % 64;
    std::uint64_t v = words_[wi] >> off;
    if (off != 0 && wi + 1 < words_.size()) v |= words_[wi + 1] << (64 - off);
    out.words_[i] = v;
  }
  if (!out.words_.empty()) out.words_.back() &= tail_mask(len);
  return out;
}

void BitBoard::paste(int first, const BitBoard& block) {
  if (first < 1 || first + block.length_ - 1 > length_) throw ParameterError("paste window out of range");
  for (int j = 1; j <= block.length_; ++j) set(first + j - 1, block.get(j));
}

std::uint64_t BitBoard::as_mask() const {
  if (length_ > 64) throw ParameterError("board too long to pack into a mask");
  return words_.empty() ? 0 : words_[0];
}

std::string BitBoard::to_string() const {
  std::string out(static_cast<std::size_t>(length_), '0');
  for (int p = 1; p <= length_; ++p)
    if ((words_[(p - 1) / 64] >> ((p - 1) % 64)) & 1ULL) out[static_cast<std::size_t>(p) - 1] = '1';
  return out;
}

}  // namespace gks
