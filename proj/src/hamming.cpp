#include "gks/hamming.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "gks/errors.hpp"

namespace gks {

HammingCode HammingCode::build(int r) {
  if (r < 2 || r > 16) throw ParameterError("r must be in 2..16, got " + std::to_string(r));
  HammingCode code;
  code.r_ = r;
  code.n_ = (1 << r) - 1;
  code.k_ = code.n_ - r;

  // First the weight >= 2 patterns in ascending order, then the identity.
  code.columns_.reserve(code.n_);
  for (std::uint32_t v = 1; v <= static_cast<std::uint32_t>(code.n_); ++v)
    if (std::popcount(v) >= 2) code.columns_.push_back(v);
  for (int i = 1; i <= r; ++i) code.columns_.push_back(1U << (r - i));

  code.position_of_syndrome_.assign(std::size_t{1} << r, 0);
  for (int p = 1; p <= code.n_; ++p) code.position_of_syndrome_[code.columns_[p - 1]] = p;

  if (code.n_ <= 63) {
    code.unit_codewords_.reserve(code.k_);
    for (int j = 1; j <= code.k_; ++j) {
      std::uint64_t cw = 1ULL << (j - 1);
      const std::uint32_t parity = code.columns_[j - 1];
      for (int i = 1; i <= r; ++i)
        if ((parity >> (r - i)) & 1U) cw |= 1ULL << (code.k_ + i - 1);
      code.unit_codewords_.push_back(cw);
    }
  }
  return code;
}

std::uint32_t HammingCode::column(int pos) const {
  if (pos < 1 || pos > n_) throw ParameterError("column position out of range");
  return columns_[pos - 1];
}

std::vector<BitBoard> HammingCode::parity_rows() const {
  std::vector<BitBoard> rows;
  rows.reserve(r_);
  for (int i = 1; i <= r_; ++i) {
    BitBoard row(n_);
    for (int p = 1; p <= n_; ++p)
      if ((columns_[p - 1] >> (r_ - i)) & 1U) row.set(p, 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint32_t HammingCode::syndrome_at(const BitBoard& board, int first) const {
  if (first < 1 || first + n_ - 1 > board.length()) throw ParameterError("syndrome window out of range");
  std::uint32_t s = 0;
  for (int j = 1; j <= n_; ++j)
    if (board.get(first + j - 1)) s ^= columns_[j - 1];
  return s;
}

std::uint32_t HammingCode::syndrome(const BitBoard& word) const {
  if (word.length() != n_) throw ParameterError("word length must equal n");
  return syndrome_at(word, 1);
}

DecodeOutcome HammingCode::classify_at(const BitBoard& board, int first) const {
  const std::uint32_t s = syndrome_at(board, first);
  if (s == 0) return DecodeOutcome::exact();
  return DecodeOutcome::flip(position_of_syndrome_[s]);
}

DecodeOutcome HammingCode::classify(const BitBoard& word) const {
  if (word.length() != n_) throw ParameterError("word length must equal n");
  return classify_at(word, 1);
}

BitBoard HammingCode::encode(const BitBoard& message) const {
  if (message.length() != k_) throw ParameterError("message length must equal k");
  BitBoard word(n_);
  std::uint32_t parity = 0;
  for (int j = 1; j <= k_; ++j) {
    if (message.get(j)) {
      word.set(j, 1);
      parity ^= columns_[j - 1];
    }
  }
  for (int i = 1; i <= r_; ++i)
    if ((parity >> (r_ - i)) & 1U) word.set(k_ + i, 1);
  return word;
}

std::uint64_t HammingCode::encode_mask(std::uint64_t message) const {
  if (n_ > 63) throw ResourceError("mask encoding requires n <= 63");
  if (k_ < 64 && (message >> k_) != 0) throw ParameterError("message mask has bits past position k");
  std::uint64_t cw = 0;
  std::uint64_t m = message;
  while (m != 0) {
    const int j = std::countr_zero(m);
    cw ^= unit_codewords_[j];
    m &= m - 1;
  }
  return cw;
}

std::uint32_t HammingCode::syndrome_mask(std::uint64_t word) const {
  if (n_ > 63) throw ResourceError("mask syndromes require n <= 63");
  std::uint32_t s = 0;
  std::uint64_t m = word;
  while (m != 0) {
    const int p = std::countr_zero(m);
    s ^= columns_[p];
    m &= m - 1;
  }
  return s;
}

std::vector<BitBoard> HammingCode::codewords() const {
  if (k_ > 26) throw ResourceError("codeword enumeration is guarded to k <= 26");
  const std::uint64_t total = 1ULL << k_;
  std::vector<BitBoard> out;
  out.reserve(total);
  for (std::uint64_t m = 0; m < total; ++m) out.push_back(BitBoard::from_mask(encode_mask(m), n_));
  return out;
}

CodeAudit HammingCode::audit() const {
  if (n_ > 31) throw ResourceError("exhaustive audit is guarded to n <= 31");
  CodeAudit report;
  report.codeword_count = 1LL << k_;

  const std::uint64_t space = 1ULL << n_;
  std::vector<std::uint64_t> covered(static_cast<std::size_t>((space + 63) / 64), 0);
  bool doubly_covered = false;
  std::uint64_t marks = 0;
  auto mark = [&](std::uint64_t word) {
    std::uint64_t& slot = covered[static_cast<std::size_t>(word / 64)];
    const std::uint64_t bit = 1ULL << (word % 64);
    if (slot & bit) {
      doubly_covered = true;
    } else {
      slot |= bit;
      ++marks;
    }
  };

  // Gray-code walk over the messages: one basis flip per codeword.
  int min_weight = n_ + 1;
  std::uint64_t cw = 0;
  mark(cw);
  for (int p = 0; p < n_; ++p) mark(cw ^ (1ULL << p));
  for (std::uint64_t i = 1; i < (1ULL << k_); ++i) {
    cw ^= unit_codewords_[std::countr_zero(i)];
    min_weight = std::min(min_weight, std::popcount(cw));
    mark(cw);
    for (int p = 0; p < n_; ++p) mark(cw ^ (1ULL << p));
  }

  report.min_distance = min_weight;
  report.perfect = !doubly_covered && marks == space;
  return report;
}

}  // namespace gks
