#include "gks/strategies.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "gks/errors.hpp"

namespace gks {

void SignalingStrategy::certify(int k) const {
  if (k < 0 || k > guaranteed_k_) throw ParameterError("certified k must lie in 0..guaranteed_k");
  certified_k_ = k;
}

namespace {

constexpr long long kMaxBoardBits = 1LL << 24;

std::uint64_t window_mask(const BitBoard& board, int first, int n) {
  std::uint64_t mask = 0;
  for (int j = 0; j < n; ++j) mask |= static_cast<std::uint64_t>(board.get(first + j)) << j;
  return mask;
}

// Arrival bookkeeping for one block.
struct BlockState {
  int arrivals = 0;
  std::uint64_t first_mask = 0;  // local positions of the first w arrivals
  std::uint64_t codeword = 0;    // table assignment, fixed at the w-th arrival
  bool assigned = false;
};

// Per-arrival behavior shared by the one-block and multi-block strategies:
// ones for the first w arrivals, matched-codeword bits afterwards, and a
// final bit that leaves the block a codeword exactly when the signal is 1.
class BlockLogic {
 public:
  BlockLogic(const HammingCode& code, const MatchingTable& table)
      : code_(std::make_shared<HammingCode>(code)), table_(std::make_shared<MatchingTable>(table)) {
    if (table.r() != code.r()) throw ParameterError("table and code disagree on r");
    if (code.n() > 63) throw ResourceError("block strategies require n <= 63");
    if (table.w() >= code.n()) throw ParameterError("block strategies require w < n");
  }

  int n() const { return code_->n(); }
  int w() const { return table_->w(); }
  const HammingCode& code() const { return *code_; }
  const MatchingTable& table() const { return *table_; }

  int place(BlockState& st, int local) const {
    if (++st.arrivals >= n()) throw ProtocolViolation("non-final placement would complete the block");
    if (st.arrivals <= w()) {
      st.first_mask |= 1ULL << (local - 1);
      if (st.arrivals == w()) assign(st);
      return 1;
    }
    return static_cast<int>((st.codeword >> (local - 1)) & 1ULL);
  }

  int place_last(BlockState& st, int local, int signal) const {
    if (++st.arrivals != n()) throw ProtocolViolation("final placement before the block is full");
    if (!st.assigned) throw ProtocolViolation("block completed before a codeword was assigned");
    const int bit = static_cast<int>((st.codeword >> (local - 1)) & 1ULL);
    return signal ? bit : bit ^ 1;
  }

  // Bob's answer for the block at `first`, appended as global positions.
  void decode_block(const BitBoard& board, int first, std::vector<int>& out) const {
    const DecodeOutcome outcome = code_->classify_at(board, first);
    if (!outcome.is_exact()) {
      out.push_back(first - 1 + outcome.position);
      return;
    }
    const auto* entry = table_->find_by_codeword(window_mask(board, first, n()));
    if (!entry) throw ProtocolViolation("codeword block is not in the table's image");
    const std::uint64_t sm = subset_mask(entry->subset);
    for (int p = 1; p <= n(); ++p)
      if (((sm >> (p - 1)) & 1ULL) == 0) out.push_back(first - 1 + p);
  }

 private:
  void assign(BlockState& st) const {
    const auto* entry = table_->find_by_subset(st.first_mask);
    if (!entry) throw ProtocolViolation("no table entry for the first-arrival subset");
    st.codeword = entry->codeword.as_mask();
    st.assigned = true;
  }

  std::shared_ptr<const HammingCode> code_;
  std::shared_ptr<const MatchingTable> table_;
};

// ---------------------------------------------------------------------------

class HammingBlockStrategy final : public SignalingStrategy {
 public:
  HammingBlockStrategy(const HammingCode& code, const MatchingTable& table)
      : SignalingStrategy(code.n(), code.n() - table.w()), logic_(code, table) {}

  class Play final : public AlicePlay {
   public:
    explicit Play(const HammingBlockStrategy& s) : s_(s) {}
    int place(int pos) override { return s_.logic_.place(state_, pos); }
    int place_final(int pos, int signal) override { return s_.logic_.place_last(state_, pos, signal); }

   private:
    const HammingBlockStrategy& s_;
    BlockState state_;
  };

  std::unique_ptr<AlicePlay> start() const override { return std::make_unique<Play>(*this); }

  int decode_signal(const BitBoard& board) const override {
    check(board);
    return logic_.code().is_codeword(board) ? 1 : 0;
  }

  std::vector<int> bob_decode(const BitBoard& board) const override {
    check(board);
    std::vector<int> out;
    logic_.decode_block(board, 1, out);
    return out;
  }

 private:
  void check(const BitBoard& board) const {
    if (board.length() != board_size()) throw ParameterError("board length mismatch");
  }

  BlockLogic logic_;
};

// ---------------------------------------------------------------------------

class IndicatorStrategy final : public SignalingStrategy {
 public:
  explicit IndicatorStrategy(int m) : SignalingStrategy(m, m) {
    if (m < 1) throw ParameterError("indicator strategy requires m >= 1");
  }

  class Play final : public AlicePlay {
   public:
    int place(int) override { return 0; }
    int place_final(int, int signal) override { return signal; }
  };

  std::unique_ptr<AlicePlay> start() const override { return std::make_unique<Play>(); }

  int decode_signal(const BitBoard& board) const override {
    check(board);
    return board.is_zero() ? 0 : 1;
  }

  std::vector<int> bob_decode(const BitBoard& board) const override {
    check(board);
    const int ones = board.weight();
    if (ones > 1) throw ProtocolViolation("indicator board carries more than one 1");
    std::vector<int> out;
    if (ones == 0) {
      out.resize(static_cast<std::size_t>(board_size()));
      for (int p = 1; p <= board_size(); ++p) out[static_cast<std::size_t>(p) - 1] = p;
    } else {
      for (int p = 1; p <= board_size(); ++p)
        if (board.get(p)) {
          out.push_back(p);
          break;
        }
    }
    return out;
  }

 private:
  void check(const BitBoard& board) const {
    if (board.length() != board_size()) throw ParameterError("board length mismatch");
  }
};

// ---------------------------------------------------------------------------

class ComposedStrategy final : public SignalingStrategy {
 public:
  ComposedStrategy(StrategyPtr inner, StrategyPtr outer)
      : SignalingStrategy(checked_total(inner, outer), inner->effective_k() * outer->effective_k()),
        inner_(std::move(inner)),
        outer_(std::move(outer)) {}

  class Play final : public AlicePlay {
   public:
    explicit Play(const ComposedStrategy& s) : s_(s), outer_play_(s.outer_->start()) {
      inner_plays_.resize(static_cast<std::size_t>(s.outer_->board_size()));
      filled_.assign(static_cast<std::size_t>(s.outer_->board_size()), 0);
    }

    int place(int pos) override {
      const auto [block, local] = s_.locate(pos);
      AlicePlay& inner = inner_play(block);
      if (++filled_[static_cast<std::size_t>(block) - 1] < s_.inner_->board_size()) return inner.place(local);
      // Completing a block mid-game is this strategy's move in the outer game.
      const int signal = outer_play_->place(block);
      return inner.place_final(local, signal);
    }

    int place_final(int pos, int signal) override {
      const auto [block, local] = s_.locate(pos);
      if (++filled_[static_cast<std::size_t>(block) - 1] != s_.inner_->board_size())
        throw ProtocolViolation("final placement before the board is full");
      const int inner_signal = outer_play_->place_final(block, signal);
      return inner_play(block).place_final(local, inner_signal);
    }

   private:
    AlicePlay& inner_play(int block) {
      auto& slot = inner_plays_[static_cast<std::size_t>(block) - 1];
      if (!slot) slot = s_.inner_->start();
      return *slot;
    }

    const ComposedStrategy& s_;
    std::unique_ptr<AlicePlay> outer_play_;
    std::vector<std::unique_ptr<AlicePlay>> inner_plays_;
    std::vector<int> filled_;
  };

  std::unique_ptr<AlicePlay> start() const override { return std::make_unique<Play>(*this); }

  int decode_signal(const BitBoard& board) const override { return outer_->decode_signal(signals(board)); }

  std::vector<int> bob_decode(const BitBoard& board) const override {
    const BitBoard sv = signals(board);
    std::vector<int> out;
    for (int block : outer_->bob_decode(sv)) {
      const int offset = (block - 1) * inner_->board_size();
      for (int p : inner_->bob_decode(board.slice(offset + 1, inner_->board_size()))) out.push_back(offset + p);
    }
    return out;
  }

 private:
  static int checked_total(const StrategyPtr& inner, const StrategyPtr& outer) {
    if (!inner || !outer) throw ParameterError("compose requires two strategies");
    const long long total = static_cast<long long>(inner->board_size()) * outer->board_size();
    if (total > kMaxBoardBits) throw ResourceError("composed board exceeds " + std::to_string(kMaxBoardBits) + " positions");
    return static_cast<int>(total);
  }

  std::pair<int, int> locate(int pos) const {
    if (pos < 1 || pos > board_size()) throw ParameterError("position out of range");
    const int block = (pos - 1) / inner_->board_size() + 1;
    const int local = (pos - 1) % inner_->board_size() + 1;
    return {block, local};
  }

  BitBoard signals(const BitBoard& board) const {
    if (board.length() != board_size()) throw ParameterError("board length mismatch");
    BitBoard sv(outer_->board_size());
    for (int block = 1; block <= outer_->board_size(); ++block) {
      const int offset = (block - 1) * inner_->board_size();
      sv.set(block, inner_->decode_signal(board.slice(offset + 1, inner_->board_size())));
    }
    return sv;
  }

  StrategyPtr inner_;
  StrategyPtr outer_;
};

// ---------------------------------------------------------------------------

class MultiBlockStrategy final : public SignalingStrategy {
 public:
  MultiBlockStrategy(const HammingCode& code, const MatchingTable& table)
      : SignalingStrategy(code.n() * (code.n() - table.w()), code.n() - table.w()), logic_(code, table) {}

  class Play final : public AlicePlay {
   public:
    explicit Play(const MultiBlockStrategy& s) : s_(s) {
      states_.resize(static_cast<std::size_t>(s.blocks()));
    }

    int place(int pos) override {
      const auto [block, local] = s_.locate(pos);
      BlockState& st = states_[static_cast<std::size_t>(block) - 1];
      // A block Alice completes herself must not read as a codeword.
      if (st.arrivals + 1 == s_.logic_.n()) return s_.logic_.place_last(st, local, 0);
      return s_.logic_.place(st, local);
    }

    int place_final(int pos, int signal) override {
      const auto [block, local] = s_.locate(pos);
      return s_.logic_.place_last(states_[static_cast<std::size_t>(block) - 1], local, signal);
    }

   private:
    const MultiBlockStrategy& s_;
    std::vector<BlockState> states_;
  };

  std::unique_ptr<AlicePlay> start() const override { return std::make_unique<Play>(*this); }

  int decode_signal(const BitBoard& board) const override {
    check(board);
    for (int block = 1; block <= blocks(); ++block)
      if (logic_.code().is_codeword_at(board, (block - 1) * logic_.n() + 1)) return 1;
    return 0;
  }

  std::vector<int> bob_decode(const BitBoard& board) const override {
    check(board);
    std::vector<int> codeword_blocks;
    std::vector<int> flips;
    for (int block = 1; block <= blocks(); ++block) {
      const int first = (block - 1) * logic_.n() + 1;
      const DecodeOutcome outcome = logic_.code().classify_at(board, first);
      if (outcome.is_exact())
        codeword_blocks.push_back(block);
      else
        flips.push_back(first - 1 + outcome.position);
    }
    if (codeword_blocks.size() >= 2) throw ProtocolViolation("more than one codeword block on the board");
    if (codeword_blocks.size() == 1) {
      std::vector<int> out;
      logic_.decode_block(board, (codeword_blocks[0] - 1) * logic_.n() + 1, out);
      return out;
    }
    return flips;
  }

  int blocks() const { return logic_.n() - logic_.w(); }

 private:
  void check(const BitBoard& board) const {
    if (board.length() != board_size()) throw ParameterError("board length mismatch");
  }

  std::pair<int, int> locate(int pos) const {
    if (pos < 1 || pos > board_size()) throw ParameterError("position out of range");
    return {(pos - 1) / logic_.n() + 1, (pos - 1) % logic_.n() + 1};
  }

  BlockLogic logic_;
};

// ---------------------------------------------------------------------------

class PaddedStrategy final : public SignalingStrategy {
 public:
  PaddedStrategy(StrategyPtr base, int n_small)
      : SignalingStrategy(n_small, checked_base(base, n_small)->guaranteed_k()),
        base_(std::move(base)),
        prefix_(base_->board_size() - n_small) {
    auto play = base_->start();
    for (int v = n_small + 1; v <= base_->board_size(); ++v) prefix_.set(v - n_small, play->place(v));
    if (const auto ck = base_->certified_k()) certify(*ck);
  }

  class Play final : public AlicePlay {
   public:
    explicit Play(const PaddedStrategy& s) : s_(s), base_play_(s.base_->start()) {
      for (int v = s.board_size() + 1; v <= s.base_->board_size(); ++v) base_play_->place(v);
    }
    int place(int pos) override {
      s_.check_pos(pos);
      return base_play_->place(pos);
    }
    int place_final(int pos, int signal) override {
      s_.check_pos(pos);
      return base_play_->place_final(pos, signal);
    }

   private:
    const PaddedStrategy& s_;
    std::unique_ptr<AlicePlay> base_play_;
  };

  std::unique_ptr<AlicePlay> start() const override { return std::make_unique<Play>(*this); }

  int decode_signal(const BitBoard& board) const override { return base_->decode_signal(assemble(board)); }

  std::vector<int> bob_decode(const BitBoard& board) const override {
    std::vector<int> out = base_->bob_decode(assemble(board));
    std::erase_if(out, [&](int p) { return p > board_size(); });
    return out;
  }

 private:
  static const StrategyPtr& checked_base(const StrategyPtr& base, int n_small) {
    if (!base) throw ParameterError("pad requires a strategy");
    if (n_small < 1 || n_small > base->board_size()) throw ParameterError("n_small must lie in 1..base board size");
    return base;
  }

  void check_pos(int pos) const {
    if (pos < 1 || pos > board_size()) throw ProtocolViolation("position outside the padded board");
  }

  BitBoard assemble(const BitBoard& board) const {
    if (board.length() != board_size()) throw ParameterError("board length mismatch");
    BitBoard full(base_->board_size());
    full.paste(1, board);
    full.paste(board_size() + 1, prefix_);
    return full;
  }

  StrategyPtr base_;
  BitBoard prefix_;
};

}  // namespace

StrategyPtr hamming_block_strategy(const HammingCode& code, const MatchingTable& table) {
  return std::make_shared<HammingBlockStrategy>(code, table);
}

StrategyPtr indicator_strategy(int m) { return std::make_shared<IndicatorStrategy>(m); }

StrategyPtr compose(StrategyPtr inner, StrategyPtr outer) {
  return std::make_shared<ComposedStrategy>(std::move(inner), std::move(outer));
}

StrategyPtr block_strategy(const HammingCode& code, const MatchingTable& table) {
  return std::make_shared<MultiBlockStrategy>(code, table);
}

StrategyPtr power(StrategyPtr base, int t) {
  if (!base) throw ParameterError("power requires a strategy");
  if (t < 1) throw ParameterError("power requires t >= 1");
  long long total = 1;
  for (int i = 0; i < t; ++i) {
    total *= base->board_size();
    if (total > kMaxBoardBits) throw ResourceError("board of size base.n^t exceeds " + std::to_string(kMaxBoardBits));
  }
  StrategyPtr result = base;
  for (int i = 2; i <= t; ++i) result = compose(result, base);
  return result;
}

StrategyPtr pad(StrategyPtr base, int n_small) {
  return std::make_shared<PaddedStrategy>(std::move(base), n_small);
}

CertificationReport verify_exhaustive(const SignalingStrategy& strategy, const MatchingTable& table) {
  const HammingCode code = HammingCode::build(table.r());
  const int n = code.n();
  const int w = table.w();
  const int blocks = n - w;
  if (blocks < 1) throw ParameterError("table w leaves no blocks");
  if (static_cast<long long>(n) * blocks != strategy.board_size())
    throw ParameterError("strategy board size does not match the table's block layout");

  constexpr std::size_t kMaxWitnesses = 10;
  CertificationReport report;

  const auto subsets = all_subsets(n, w);
  for (const auto& subset : subsets) {
    const std::uint64_t sm = subset_mask(subset);
    const auto* entry = table.find_by_subset(sm);
    for (int last = 1; last <= n; ++last) {
      if ((sm >> (last - 1)) & 1ULL) continue;
      for (const bool alice_owner : {true, false}) {
        for (int bit = 0; bit <= 1; ++bit) {
          ++report.cases;
          std::string fault;
          BitBoard board(strategy.board_size());

          try {
            // Representative game: the class block occupies block 1, the
            // remaining blocks fill in ascending order, `last` comes last.
            auto play = strategy.start();
            for (int p : subset) board.set(p, play->place(p));
            for (int p = 1; p <= n; ++p)
              if (p != last && (((sm >> (p - 1)) & 1ULL) == 0)) board.set(p, play->place(p));
            for (int p = n + 1; p <= strategy.board_size(); ++p) board.set(p, play->place(p));
            if (alice_owner)
              board.set(last, play->place_final(last, bit));
            else
              board.set(last, bit);

            if (!entry) {
              fault = "no table entry for the subset";
            } else {
              const bool is_cw = code.is_codeword_at(board, 1);
              const bool expect_cw = alice_owner ? bit == 1 : bit == entry->codeword.get(last);
              if (is_cw != expect_cw)
                fault = is_cw ? "block reads as a codeword unexpectedly" : "block fails to read as a codeword";
              if (fault.empty() && alice_owner && strategy.decode_signal(board) != bit)
                fault = "signal round trip failed";
              if (fault.empty() && expect_cw && window_mask(board, 1, n) != entry->codeword.as_mask())
                fault = "codeword block does not equal the matched codeword";
              if (fault.empty() && !is_cw) {
                const DecodeOutcome outcome = code.classify_at(board, 1);
                if (outcome != DecodeOutcome::flip(last)) fault = "flip decode does not name the last position";
              }
              if (fault.empty()) {
                for (int b = 2; b <= blocks && fault.empty(); ++b)
                  if (code.is_codeword_at(board, (b - 1) * n + 1)) fault = "a completed filler block reads as a codeword";
              }
              if (fault.empty()) {
                const std::vector<int> bob = strategy.bob_decode(board);
                if (std::find(bob.begin(), bob.end(), last) == bob.end())
                  fault = "bob's set misses the last position";
                else if (static_cast<int>(bob.size()) > strategy.guaranteed_k())
                  fault = "bob's set exceeds guaranteed_k";
                else
                  report.max_cost = std::max(report.max_cost, static_cast<int>(bob.size()));
              }
            }
          } catch (const std::exception& e) {
            fault = std::string("exception: ") + e.what();
          }

          if (!fault.empty()) {
            ++report.failures;
            if (report.witnesses.size() < kMaxWitnesses) {
              std::string subset_text = "{";
              for (std::size_t i = 0; i < subset.size(); ++i) {
                if (i) subset_text += ',';
                subset_text += std::to_string(subset[i]);
              }
              subset_text += '}';
              report.witnesses.push_back("subset " + subset_text + " last=" + std::to_string(last) +
                                         (alice_owner ? " owner=alice signal=" : " owner=eve bit=") +
                                         std::to_string(bit) + ": " + fault);
            }
          }
        }
      }
    }
  }

  if (report.failures == 0) strategy.certify(report.max_cost);
  return report;
}

}  // namespace gks
