#include "gks/engine.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <string>

#include "gks/errors.hpp"

namespace gks {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.order.resize(static_cast<std::size_t>(n));
  std::iota(p.order.begin(), p.order.end(), 1);
  return p;
}

Permutation Permutation::random(int n, SplitMix64& rng) {
  Permutation p = identity(n);
  for (int i = n - 1; i > 0; --i)
    std::swap(p.order[static_cast<std::size_t>(i)], p.order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return p;
}

int Permutation::final_index() const {
  if (order.empty()) throw ParameterError("empty permutation");
  return order.back();
}

void Permutation::validate() const {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int p : order) {
    if (p < 1 || p > n) throw ParameterError("permutation entry out of range 1..n");
    if (seen[static_cast<std::size_t>(p)]) throw ParameterError("permutation repeats index " + std::to_string(p));
    seen[static_cast<std::size_t>(p)] = true;
  }
}

namespace {

// Referee body; permutation validation happens in the public entry points
// so repeated games on one permutation pay for it once.
GameResult run_game_impl(const SignalingStrategy& strategy, const Permutation& permutation, int eve_bit,
                         BitBoard* board_out, Transcript* transcript_out) {
  const int n = permutation.size();
  if (n != strategy.board_size())
    throw ProtocolViolation("permutation is over " + std::to_string(n) + " positions but the strategy plays " +
                            std::to_string(strategy.board_size()));
  if (eve_bit != 0 && eve_bit != 1) throw ParameterError("eve_bit must be 0 or 1");

  BitBoard board(n);
  if (transcript_out) {
    transcript_out->records.clear();
    transcript_out->records.reserve(static_cast<std::size_t>(n));
  }

  auto play = strategy.start();
  for (int t = 1; t <= n - 1; ++t) {
    const int pos = permutation.order[static_cast<std::size_t>(t) - 1];
    const int bit = play->place(pos);
    if (bit != 0 && bit != 1) throw ProtocolViolation("strategy emitted a non-bit");
    board.set(pos, bit);
    if (transcript_out) transcript_out->records.push_back({t, pos, Actor::alice, bit});
  }

  const int eve_index = permutation.final_index();
  board.set(eve_index, eve_bit);
  if (transcript_out) {
    transcript_out->records.push_back({n, eve_index, Actor::eve, eve_bit});
    transcript_out->board = board;
  }

  GameResult result;
  result.n = n;
  result.eve_index = eve_index;
  result.eve_bit = eve_bit;
  result.bob_set = strategy.bob_decode(board);
  std::sort(result.bob_set.begin(), result.bob_set.end());
  result.cost = static_cast<int>(result.bob_set.size());
  result.contained = std::binary_search(result.bob_set.begin(), result.bob_set.end(), eve_index);
  result.exceeded_k = result.cost > strategy.guaranteed_k();
  if (board_out) *board_out = std::move(board);
  return result;
}

}  // namespace

GameResult run_game(const SignalingStrategy& strategy, const Permutation& permutation, int eve_bit,
                    BitBoard* board_out, Transcript* transcript_out) {
  permutation.validate();
  return run_game_impl(strategy, permutation, eve_bit, board_out, transcript_out);
}

GameResult run_adversarial(const SignalingStrategy& strategy, const Permutation& permutation) {
  permutation.validate();
  GameResult zero = run_game_impl(strategy, permutation, 0, nullptr, nullptr);
  if (!zero.contained) return zero;
  GameResult one = run_game_impl(strategy, permutation, 1, nullptr, nullptr);
  if (!one.contained) return one;
  return one.cost > zero.cost ? one : zero;
}

TrialSummary random_trials(const SignalingStrategy& strategy, long long trials, std::uint64_t master_seed) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  TrialSummary summary;
  summary.trials = trials;
  summary.seed = master_seed;

  BitBoard board;
  for (long long t = 1; t <= trials; ++t) {
    SplitMix64 rng(substream_seed(master_seed, static_cast<std::uint64_t>(t)));
    const Permutation perm = Permutation::random(strategy.board_size(), rng);
    bool failed = false;
    for (int eve_bit = 0; eve_bit <= 1; ++eve_bit) {
      const GameResult result = run_game_impl(strategy, perm, eve_bit, &board, nullptr);
      if (strategy.decode_signal(board) == 1)
        ++summary.branch_codeword;
      else
        ++summary.branch_plain;
      failed = failed || !result.contained;
      summary.max_cost = std::max(summary.max_cost, result.cost);
    }
    if (failed) ++summary.failures;
  }
  return summary;
}

namespace {

std::string actor_name(Actor actor) { return actor == Actor::alice ? "alice" : "eve"; }

}  // namespace

void write_transcript(const Transcript& transcript, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ParameterError("cannot open transcript file for writing: " + file.string());
  for (const auto& rec : transcript.records)
    out << rec.step << '\t' << rec.index << '\t' << actor_name(rec.actor) << '\t' << rec.bit << '\n';
  out << "board\t" << transcript.board.to_string() << '\n';
  if (!out) throw ParameterError("failed writing transcript file: " + file.string());
}

Transcript read_transcript(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParameterError("cannot open transcript file: " + file.string());

  Transcript transcript;
  bool have_board = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw FormatError("blank line inside transcript", lineno);
    }
    if (have_board) throw FormatError("content after the board line", lineno);

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }

    if (fields[0] == "board") {
      if (fields.size() != 2) throw FormatError("board line must be 'board<TAB><bits>'", lineno);
      if (fields[1].find_first_not_of("01") != std::string::npos)
        throw FormatError("board may contain only 0 and 1", lineno);
      transcript.board = BitBoard::from_string(fields[1]);
      have_board = true;
      continue;
    }

    if (fields.size() != 4) throw FormatError("expected 'step<TAB>index<TAB>actor<TAB>bit'", lineno);
    TranscriptRecord rec;
    try {
      rec.step = std::stoi(fields[0]);
      rec.index = std::stoi(fields[1]);
    } catch (const std::exception&) {
      throw FormatError("step and index must be integers", lineno);
    }
    if (fields[2] == "alice")
      rec.actor = Actor::alice;
    else if (fields[2] == "eve")
      rec.actor = Actor::eve;
    else
      throw FormatError("actor must be 'alice' or 'eve'", lineno);
    if (fields[3] == "0")
      rec.bit = 0;
    else if (fields[3] == "1")
      rec.bit = 1;
    else
      throw FormatError("bit must be 0 or 1", lineno);
    transcript.records.push_back(rec);
  }

  if (!have_board) throw FormatError("missing board line", lineno + 1);
  const int n = transcript.board.length();
  if (static_cast<int>(transcript.records.size()) != n)
    throw FormatError("transcript must have exactly n records", lineno + 1);

  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int t = 1; t <= n; ++t) {
    const auto& rec = transcript.records[static_cast<std::size_t>(t) - 1];
    const int rec_line = t;
    if (rec.step != t) throw FormatError("steps must run 1..n in order", rec_line);
    if (rec.index < 1 || rec.index > n) throw FormatError("index out of range 1..n", rec_line);
    if (seen[static_cast<std::size_t>(rec.index)]) throw FormatError("index filled twice", rec_line);
    seen[static_cast<std::size_t>(rec.index)] = true;
    const Actor expected = t == n ? Actor::eve : Actor::alice;
    if (rec.actor != expected)
      throw FormatError(t == n ? "final record must belong to eve" : "only the final record may belong to eve",
                        rec_line);
    if (transcript.board.get(rec.index) != rec.bit)
      throw FormatError("board disagrees with the recorded bit at index " + std::to_string(rec.index), rec_line);
  }
  return transcript;
}

}  // namespace gks
