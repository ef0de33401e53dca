#include "gks/matcher.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "gks/errors.hpp"

namespace gks {

namespace {

constexpr int kMaterializedKLimit = 16;        // largest k whose graph we list explicitly
constexpr long long kImplicitSubsetLimit = 4'000'000;

std::string subset_to_string(const std::vector<int>& subset) {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(subset[i]);
  }
  out += '}';
  return out;
}

// Lexicographic combinations of {1..n} taken w at a time.
template <typename Fn>
void for_each_subset(int n, int w, Fn&& fn) {
  if (w < 0 || w > n) return;
  std::vector<int> idx(w);
  for (int i = 0; i < w; ++i) idx[i] = i + 1;
  while (true) {
    fn(const_cast<const std::vector<int>&>(idx));
    int i = w - 1;
    while (i >= 0 && idx[i] == n - (w - 1 - i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

long long binomial(int n, int w) {
  if (w < 0 || w > n) return 0;
  w = std::min(w, n - w);
  unsigned long long result = 1;
  for (int i = 1; i <= w; ++i) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(result) * static_cast<unsigned long long>(n - w + i);
    result = static_cast<unsigned long long>(wide / static_cast<unsigned long long>(i));
  }
  return static_cast<long long>(result);
}

std::vector<std::vector<int>> all_subsets(int n, int w) {
  if (n < 0 || w < 0 || w > n) throw ParameterError("subset size out of range");
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(binomial(n, w)));
  for_each_subset(n, w, [&](const std::vector<int>& s) { out.push_back(s); });
  return out;
}

std::uint64_t subset_mask(const std::vector<int>& subset) {
  std::uint64_t mask = 0;
  for (int p : subset) {
    if (p < 1 || p > 64) throw ParameterError("subset positions must lie in 1..64");
    mask |= 1ULL << (p - 1);
  }
  return mask;
}

BipartiteGraph build_graph(const HammingCode& code, int w) {
  if (w < 1 || w > code.n()) throw ParameterError("w must lie in 1..n");
  if (code.k() > kMaterializedKLimit)
    throw ResourceError("graph materialization is guarded to k <= " + std::to_string(kMaterializedKLimit));

  BipartiteGraph graph;
  graph.code_r = code.r();
  graph.code_n = code.n();
  graph.w = w;
  graph.subsets = all_subsets(code.n(), w);
  graph.codewords.reserve(std::size_t{1} << code.k());
  for (std::uint64_t m = 0; m < (1ULL << code.k()); ++m) graph.codewords.push_back(code.encode_mask(m));

  graph.adjacency.resize(graph.subsets.size());
  for (std::size_t u = 0; u < graph.subsets.size(); ++u) {
    const std::uint64_t sm = subset_mask(graph.subsets[u]);
    for (std::size_t v = 0; v < graph.codewords.size(); ++v)
      if ((graph.codewords[v] & sm) == sm) graph.adjacency[u].push_back(static_cast<std::int32_t>(v));
  }
  return graph;
}

namespace {

MatchingTable table_from_masks(int r, int w, int n, const std::vector<std::vector<int>>& subsets,
                               const std::vector<std::uint64_t>& matched_codewords) {
  std::vector<MatchingTable::Entry> entries;
  entries.reserve(subsets.size());
  for (std::size_t u = 0; u < subsets.size(); ++u)
    entries.push_back({subsets[u], BitBoard::from_mask(matched_codewords[u], n)});
  return MatchingTable(r, w, std::move(entries));
}

}  // namespace

MatchingOutcome maximum_matching(const BipartiteGraph& graph) {
  const int left = static_cast<int>(graph.subsets.size());
  const int right = static_cast<int>(graph.codewords.size());
  constexpr int kInf = std::numeric_limits<int>::max();

  std::vector<int> match_l(left, -1), match_r(right, -1), dist(left, 0);

  auto bfs = [&]() {
    std::queue<int> queue;
    bool reachable_free = false;
    for (int u = 0; u < left; ++u) {
      if (match_l[u] == -1) {
        dist[u] = 0;
        queue.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (std::int32_t v : graph.adjacency[u]) {
        const int u2 = match_r[v];
        if (u2 == -1) {
          reachable_free = true;
        } else if (dist[u2] == kInf) {
          dist[u2] = dist[u] + 1;
          queue.push(u2);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (std::int32_t v : graph.adjacency[u]) {
      const int u2 = match_r[v];
      if (u2 == -1 || (dist[u2] == dist[u] + 1 && dfs(u2))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  long long matched = 0;
  while (bfs()) {
    for (int u = 0; u < left; ++u)
      if (match_l[u] == -1 && dfs(u)) ++matched;
  }

  MatchingOutcome outcome;
  outcome.wanted = left;
  outcome.matched = matched;
  if (matched == left) {
    std::vector<std::uint64_t> assigned(static_cast<std::size_t>(left));
    for (int u = 0; u < left; ++u) assigned[u] = graph.codewords[match_l[u]];
    outcome.table = table_from_masks(graph.code_r, graph.w, graph.code_n, graph.subsets, assigned);
  }
  return outcome;
}

namespace {

// Solver for "which messages encode to a word with ones on this subset".
// The constraints are linear over the message bits, so the solution set is
// an affine subspace: one particular message plus a null-space basis.
class CoverSolver {
 public:
  explicit CoverSolver(const HammingCode& code) : code_(code) {
    row_functionals_.assign(code.r(), 0);
    for (int j = 1; j <= code.k(); ++j) {
      const std::uint32_t col = code.column(j);
      for (int i = 1; i <= code.r(); ++i)
        if ((col >> (code.r() - i)) & 1U) row_functionals_[i - 1] |= 1ULL << (j - 1);
    }
  }

  struct Coset {
    bool empty = true;
    std::uint64_t particular = 0;                 // message mask
    std::uint64_t particular_codeword = 0;        // its codeword mask
    std::vector<std::uint64_t> basis;             // null-space messages
    std::vector<std::uint64_t> basis_codewords;   // their codeword masks

    long long size() const { return empty ? 0 : (1LL << basis.size()); }
  };

  Coset solve(std::uint64_t subset) const {
    const int k = code_.k();
    std::vector<std::uint64_t> pivot_mask(k, 0);
    std::vector<int> pivot_rhs(k, 0);
    std::vector<bool> has_pivot(k, false);

    std::uint64_t positions = subset;
    while (positions != 0) {
      const int p = std::countr_zero(positions) + 1;  // 1-based board position
      positions &= positions - 1;
      std::uint64_t m = p <= k ? (1ULL << (p - 1)) : row_functionals_[p - k - 1];
      int b = 1;
      for (int j = 0; j < k; ++j) {
        if (((m >> j) & 1ULL) && has_pivot[j]) {
          m ^= pivot_mask[j];
          b ^= pivot_rhs[j];
        }
      }
      if (m == 0) {
        if (b != 0) return Coset{};  // inconsistent: no covering codeword
        continue;
      }
      const int j = std::countr_zero(m);
      pivot_mask[j] = m;
      pivot_rhs[j] = b;
      has_pivot[j] = true;
    }

    // Reduce to RREF so every pivot row touches only free columns.
    for (int p = k - 1; p >= 0; --p) {
      if (!has_pivot[p]) continue;
      for (int q = 0; q < p; ++q) {
        if (has_pivot[q] && ((pivot_mask[q] >> p) & 1ULL)) {
          pivot_mask[q] ^= pivot_mask[p];
          pivot_rhs[q] ^= pivot_rhs[p];
        }
      }
    }

    Coset coset;
    coset.empty = false;
    for (int j = 0; j < k; ++j)
      if (has_pivot[j] && pivot_rhs[j]) coset.particular |= 1ULL << j;
    for (int f = 0; f < k; ++f) {
      if (has_pivot[f]) continue;
      std::uint64_t v = 1ULL << f;
      for (int j = 0; j < k; ++j)
        if (has_pivot[j] && ((pivot_mask[j] >> f) & 1ULL)) v |= 1ULL << j;
      coset.basis.push_back(v);
    }
    coset.particular_codeword = code_.encode_mask(coset.particular);
    coset.basis_codewords.reserve(coset.basis.size());
    for (std::uint64_t v : coset.basis) coset.basis_codewords.push_back(code_.encode_mask(v));
    return coset;
  }

 private:
  const HammingCode& code_;
  std::vector<std::uint64_t> row_functionals_;
};

// Gray-code visit of every codeword in a coset; stops early when fn
// returns true.
template <typename Fn>
bool scan_coset(const CoverSolver::Coset& coset, Fn&& fn) {
  if (coset.empty) return false;
  std::uint64_t cw = coset.particular_codeword;
  if (fn(cw)) return true;
  const std::uint64_t total = 1ULL << coset.basis.size();
  for (std::uint64_t t = 1; t < total; ++t) {
    cw ^= coset.basis_codewords[std::countr_zero(t)];
    if (fn(cw)) return true;
  }
  return false;
}

class ImplicitMatcher {
 public:
  ImplicitMatcher(const HammingCode& code, int w) : code_(code), w_(w), solver_(code) {
    for_each_subset(code.n(), w, [&](const std::vector<int>& s) { subset_masks_.push_back(subset_mask(s)); });
    assigned_.assign(subset_masks_.size(), 0);
    has_assignment_.assign(subset_masks_.size(), false);
  }

  MatchingOutcome run() {
    long long matched = 0;
    for (std::size_t u = 0; u < subset_masks_.size(); ++u) {
      std::unordered_set<std::uint64_t> visited;
      if (augment(static_cast<int>(u), visited)) ++matched;
    }
    MatchingOutcome outcome;
    outcome.wanted = static_cast<long long>(subset_masks_.size());
    outcome.matched = matched;
    if (matched == outcome.wanted) {
      std::vector<MatchingTable::Entry> entries;
      entries.reserve(subset_masks_.size());
      std::size_t u = 0;
      for_each_subset(code_.n(), w_, [&](const std::vector<int>& s) {
        entries.push_back({s, BitBoard::from_mask(assigned_[u], code_.n())});
        ++u;
      });
      outcome.table = MatchingTable(code_.r(), w_, std::move(entries));
    }
    return outcome;
  }

 private:
  bool augment(int u, std::unordered_set<std::uint64_t>& visited) {
    const auto coset = solver_.solve(subset_masks_[u]);
    // Greedy pass: grab the first unowned codeword.
    const bool claimed = scan_coset(coset, [&](std::uint64_t cw) {
      if (owner_.find(cw) != owner_.end()) return false;
      take(u, cw);
      return true;
    });
    if (claimed) return true;
    // Augmenting pass: try to displace an owner.
    return scan_coset(coset, [&](std::uint64_t cw) {
      if (!visited.insert(cw).second) return false;
      const int displaced = owner_.at(cw);
      if (!augment(displaced, visited)) return false;
      take(u, cw);
      return true;
    });
  }

  void take(int u, std::uint64_t cw) {
    owner_[cw] = u;
    assigned_[u] = cw;
    has_assignment_[u] = true;
  }

  const HammingCode& code_;
  int w_;
  CoverSolver solver_;
  std::vector<std::uint64_t> subset_masks_;
  std::vector<std::uint64_t> assigned_;
  std::vector<bool> has_assignment_;
  std::unordered_map<std::uint64_t, int> owner_;
};

}  // namespace

MatchingOutcome find_saturating_matching(const HammingCode& code, int w, bool force_implicit) {
  if (w < 1 || w > code.n()) throw ParameterError("w must lie in 1..n");
  if (!force_implicit && code.k() <= kMaterializedKLimit) return maximum_matching(build_graph(code, w));
  if (code.n() > 63) throw ResourceError("matching search is limited to codes with n <= 63");
  if (binomial(code.n(), w) > kImplicitSubsetLimit)
    throw ResourceError("subset count exceeds the search guard of " + std::to_string(kImplicitSubsetLimit));
  return ImplicitMatcher(code, w).run();
}

MatchingTable::MatchingTable(int r, int w, std::vector<Entry> entries)
    : r_(r), w_(w), n_((1 << r) - 1), entries_(std::move(entries)) {
  if (r < 2 || r > 16) throw ParameterError("table r must lie in 2..16");
  if (w < 1 || w > n_) throw ParameterError("table w must lie in 1..n");
  by_subset_.reserve(entries_.size());
  by_codeword_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (n_ <= 63) {
      by_subset_.emplace(subset_mask(entries_[i].subset), static_cast<std::int32_t>(i));
      if (entries_[i].codeword.length() == n_)
        by_codeword_.emplace(entries_[i].codeword.as_mask(), static_cast<std::int32_t>(i));
    }
  }
}

const MatchingTable::Entry* MatchingTable::find_by_subset(std::uint64_t subset_mask) const {
  const auto it = by_subset_.find(subset_mask);
  return it == by_subset_.end() ? nullptr : &entries_[static_cast<std::size_t>(it->second)];
}

const MatchingTable::Entry* MatchingTable::find_by_codeword(std::uint64_t codeword_mask) const {
  const auto it = by_codeword_.find(codeword_mask);
  return it == by_codeword_.end() ? nullptr : &entries_[static_cast<std::size_t>(it->second)];
}

TableCheck verify_table(const MatchingTable& table, const HammingCode& code) {
  if (code.r() != table.r()) throw ParameterError("table and code disagree on r");
  TableCheck check;
  check.entry_count = table.size();
  auto violation = [&](std::string text) { check.violations.push_back(std::move(text)); };

  const int n = table.n();
  const auto& entries = table.entries();

  // Shape of each entry.
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string label = "entry " + std::to_string(i + 1) + " " + subset_to_string(e.subset);
    if (static_cast<int>(e.subset.size()) != table.w()) violation(label + ": subset size is not w");
    bool ordered = true;
    for (std::size_t j = 0; j < e.subset.size(); ++j) {
      if (e.subset[j] < 1 || e.subset[j] > n) ordered = false;
      if (j > 0 && e.subset[j] <= e.subset[j - 1]) ordered = false;
    }
    if (!ordered) violation(label + ": subset is not strictly ascending within 1..n");
    if (e.codeword.length() != n) {
      violation(label + ": assigned word length is not n");
      continue;
    }
    if (code.syndrome(e.codeword) != 0) violation(label + ": assigned word is not a codeword");
    for (int p : e.subset)
      if (p >= 1 && p <= n && e.codeword.get(p) != 1) violation(label + ": no 1 at position " + std::to_string(p));
  }

  // Totality: every w-subset must appear exactly once.
  std::unordered_map<std::uint64_t, int> seen_subsets;
  seen_subsets.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::uint64_t sm = subset_mask(entries[i].subset);
    const auto [it, inserted] = seen_subsets.emplace(sm, static_cast<int>(i));
    if (!inserted)
      violation("entries " + std::to_string(it->second + 1) + " and " + std::to_string(i + 1) +
                ": duplicate subset " + subset_to_string(entries[i].subset));
  }
  for_each_subset(n, table.w(), [&](const std::vector<int>& s) {
    if (seen_subsets.find(subset_mask(s)) == seen_subsets.end()) violation("missing subset " + subset_to_string(s));
  });

  // Injectivity.
  std::unordered_map<std::uint64_t, int> seen_codewords;
  seen_codewords.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].codeword.length() != n || n > 63) continue;
    const auto [it, inserted] = seen_codewords.emplace(entries[i].codeword.as_mask(), static_cast<int>(i));
    if (!inserted)
      violation("entries " + std::to_string(it->second + 1) + " and " + std::to_string(i + 1) +
                ": same codeword assigned twice");
  }

  // Pairwise separation: assigned words of distinct subsets differ in >= 3 bits.
  if (n <= 63) {
    std::vector<std::uint64_t> masks(entries.size());
    std::vector<bool> usable(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      usable[i] = entries[i].codeword.length() == n;
      masks[i] = usable[i] ? entries[i].codeword.as_mask() : 0;
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!usable[i]) continue;
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        if (!usable[j]) continue;
        const int d = std::popcount(masks[i] ^ masks[j]);
        if (d > 0 && d < 3)
          violation("entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    ": assigned words differ in only " + std::to_string(d) + " bits");
      }
    }
  } else {
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        if (entries[i].codeword.length() != n || entries[j].codeword.length() != n) continue;
        const int d = entries[i].codeword.distance(entries[j].codeword);
        if (d > 0 && d < 3)
          violation("entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    ": assigned words differ in only " + std::to_string(d) + " bits");
      }
  }

  return check;
}

namespace {

std::string format_header(int r, int w, int n, long long count) {
  std::ostringstream out;
  out << "# gks-matching r=" << r << " w=" << w << " n=" << n << " count=" << count;
  return out.str();
}

struct ParsedHeader {
  int r = 0, w = 0, n = 0;
  long long count = 0;
};

ParsedHeader parse_header(const std::string& line) {
  ParsedHeader h;
  std::istringstream in(line);
  std::string hash, name, rf, wf, nf, cf;
  if (!(in >> hash >> name >> rf >> wf >> nf >> cf) || hash != "#" || name != "gks-matching" ||
      rf.rfind("r=", 0) != 0 || wf.rfind("w=", 0) != 0 || nf.rfind("n=", 0) != 0 || cf.rfind("count=", 0) != 0)
    throw FormatError("expected header '# gks-matching r=<r> w=<w> n=<n> count=<count>'", 1);
  try {
    h.r = std::stoi(rf.substr(2));
    h.w = std::stoi(wf.substr(2));
    h.n = std::stoi(nf.substr(2));
    h.count = std::stoll(cf.substr(6));
  } catch (const std::exception&) {
    throw FormatError("header fields must be integers", 1);
  }
  std::string extra;
  if (in >> extra) throw FormatError("unexpected trailing content in header", 1);
  if (h.r < 2 || h.r > 16 || h.n != (1 << h.r) - 1) throw FormatError("header n does not match 2^r - 1", 1);
  if (h.w < 1 || h.w > h.n) throw FormatError("header w out of range", 1);
  if (h.count < 0) throw FormatError("header count must be nonnegative", 1);
  return h;
}

MatchingTable load_table(const std::filesystem::path& file, bool strict) {
  std::ifstream in(file);
  if (!in) throw ParameterError("cannot open table file: " + file.string());

  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file: missing header", 1);
  const ParsedHeader header = parse_header(line);

  std::vector<MatchingTable::Entry> entries;
  entries.reserve(static_cast<std::size_t>(header.count));
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw FormatError("blank line inside table", lineno);
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError("expected '<indices><TAB><bits>'", lineno);

    std::vector<int> subset;
    const std::string left = line.substr(0, tab);
    std::size_t start = 0;
    while (start <= left.size()) {
      const std::size_t comma = left.find(',', start);
      const std::string tok = left.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError("bad index '" + tok + "'", lineno);
      subset.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(subset.size()) != header.w) throw FormatError("subset does not have w indices", lineno);
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (subset[i] < 1 || subset[i] > header.n) throw FormatError("index out of range 1..n", lineno);
      if (i > 0 && subset[i] <= subset[i - 1]) throw FormatError("indices must be strictly ascending", lineno);
    }

    const std::string bits = line.substr(tab + 1);
    if (static_cast<int>(bits.size()) != header.n) throw FormatError("bit string must have n characters", lineno);
    if (bits.find_first_not_of("01") != std::string::npos) throw FormatError("bit string may contain only 0 and 1", lineno);

    entries.push_back({std::move(subset), BitBoard::from_string(bits)});
  }
  if (static_cast<long long>(entries.size()) != header.count)
    throw FormatError("header announces count=" + std::to_string(header.count) + " but file has " +
                          std::to_string(entries.size()) + " entries",
                      lineno + 1);

  if (strict) {
    if (header.count != binomial(header.n, header.w))
      throw FormatError("count does not cover all subsets of size w", 1);
    std::unordered_map<std::string, int> codeword_lines;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const int entry_line = static_cast<int>(i) + 2;
      if (i > 0 && !std::lexicographical_compare(entries[i - 1].subset.begin(), entries[i - 1].subset.end(),
                                                 entries[i].subset.begin(), entries[i].subset.end()))
        throw FormatError("entries out of lexicographic subset order", entry_line);
      const auto [it, inserted] = codeword_lines.emplace(entries[i].codeword.to_string(), entry_line);
      if (!inserted) throw FormatError("codeword already assigned on line " + std::to_string(it->second), entry_line);
      for (int p : entries[i].subset)
        if (entries[i].codeword.get(p) != 1)
          throw FormatError("assigned word has no 1 at position " + std::to_string(p), entry_line);
    }
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        const int d = entries[i].codeword.distance(entries[j].codeword);
        if (d < 3)
          throw FormatError("assigned word differs in only " + std::to_string(d) +
                                " bits from the one on line " + std::to_string(i + 2),
                            static_cast<int>(j) + 2);
      }
  }

  return MatchingTable(header.r, header.w, std::move(entries));
}

}  // namespace

void write_table(const MatchingTable& table, const std::filesystem::path& file) {
  std::vector<std::size_t> order(table.entries().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.entries()[a].subset < table.entries()[b].subset;
  });

  std::ofstream out(file, std::ios::binary);
  if (!out) throw ParameterError("cannot open table file for writing: " + file.string());
  out << format_header(table.r(), table.w(), table.n(), table.size()) << '\n';
  for (std::size_t i : order) {
    const auto& e = table.entries()[i];
    for (std::size_t j = 0; j < e.subset.size(); ++j) {
      if (j) out << ',';
      out << e.subset[j];
    }
    out << '\t' << e.codeword.to_string() << '\n';
  }
  if (!out) throw ParameterError("failed writing table file: " + file.string());
}

MatchingTable read_table(const std::filesystem::path& file) { return load_table(file, true); }

MatchingTable parse_table(const std::filesystem::path& file) { return load_table(file, false); }

}  // namespace gks
