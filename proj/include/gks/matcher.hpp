#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gks/bitboard.hpp"
#include "gks/hamming.hpp"

namespace gks {

// All w-element subsets of {1..n}, lexicographically ordered.
std::vector<std::vector<int>> all_subsets(int n, int w);
std::uint64_t subset_mask(const std::vector<int>& subset);
long long binomial(int n, int w);

// Left side: w-subsets in lexicographic order. Right side: codewords in
// message order. An edge joins a subset to every codeword that has a 1 at
// each subset position.
struct BipartiteGraph {
  int code_r = 0;
  int code_n = 0;
  int w = 0;
  std::vector<std::vector<int>> subsets;
  std::vector<std::uint64_t> codewords;
  std::vector<std::vector<std::int32_t>> adjacency;  // per subset, ascending codeword indices
};

// Guarded to k <= 16; beyond that the edge lists get too large to hold.
BipartiteGraph build_graph(const HammingCode& code, int w);

// Injective assignment of every w-subset to a covering codeword.
// Construction performs no validation; verify_table() is the judge.
class MatchingTable {
 public:
  struct Entry {
    std::vector<int> subset;
    BitBoard codeword;

    bool operator==(const Entry&) const = default;
  };

  MatchingTable(int r, int w, std::vector<Entry> entries);

  int r() const { return r_; }
  int w() const { return w_; }
  int n() const { return n_; }
  long long size() const { return static_cast<long long>(entries_.size()); }
  const std::vector<Entry>& entries() const { return entries_; }

  const Entry* find_by_subset(std::uint64_t subset_mask) const;
  const Entry* find_by_codeword(std::uint64_t codeword_mask) const;

  bool operator==(const MatchingTable& other) const {
    return r_ == other.r_ && w_ == other.w_ && entries_ == other.entries_;
  }

 private:
  int r_, w_, n_;
  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, std::int32_t> by_subset_;
  std::unordered_map<std::uint64_t, std::int32_t> by_codeword_;  // first occurrence wins
};

struct MatchingOutcome {
  long long wanted = 0;   // number of subsets
  long long matched = 0;  // achieved matching size
  std::optional<MatchingTable> table;  // present iff matched == wanted

  bool saturating() const { return table.has_value(); }
};

// Hopcroft-Karp. Augmenting passes scan vertices in index order, so the
// outcome is deterministic for a given graph.
MatchingOutcome maximum_matching(const BipartiteGraph& graph);

// Materializes the graph when the code allows it, otherwise searches with
// implicit neighborhoods (the codewords covering a subset form an affine
// subspace of the message space, enumerable without listing the code).
// `force_implicit` exists for tests.
MatchingOutcome find_saturating_matching(const HammingCode& code, int w, bool force_implicit = false);

struct TableCheck {
  long long entry_count = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

// Checks totality over all w-subsets, injectivity, covering ones at every
// subset position, pairwise distance >= 3 over all entry pairs, and that
// every assigned word is a codeword. Violations are reported, not thrown.
TableCheck verify_table(const MatchingTable& table, const HammingCode& code);

// Canonical text format, stable byte for byte:
//   # gks-matching r=<r> w=<w> n=<n> count=<count>
// then one line per entry in lexicographic subset order: comma-separated
// 1-based indices, a tab, and an n-character '0'/'1' string whose j-th
// character is board position j.
void write_table(const MatchingTable& table, const std::filesystem::path& file);

// Strict read: structural checks plus the table invariants (totality,
// injectivity, covering ones, pairwise distance); any violation is a
// FormatError naming the offending line.
MatchingTable read_table(const std::filesystem::path& file);

// Structural checks only; semantic auditing is left to verify_table.
MatchingTable parse_table(const std::filesystem::path& file);

}  // namespace gks
