#include "wordle/game.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wordle/errors.hpp"

namespace wordle {

Mode parse_mode(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "easy") return Mode::easy;
  if (lower == "hard") return Mode::hard;
  if (lower == "hard-hints" || lower == "hard_hints") return Mode::hard_hints;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected easy, hard or hard-hints)");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::easy: return "easy";
    case Mode::hard: return "hard";
    case Mode::hard_hints: return "hard-hints";
  }
  return "?";
}

void HardConstraints::absorb(std::string_view guess, Pattern feedback) {
  min_counts.fill(0);
  auto code = feedback.code();
  for (std::size_t i = 0; i < guess.size(); ++i, code /= 3) {
    const auto mark = static_cast<Mark>(code % 3);
    if (mark == Mark::gray) continue;
    ++min_counts[static_cast<std::size_t>(guess[i] - 'a')];
    if (mark == Mark::green) pins[i] = guess[i];
  }
}

bool HardConstraints::admits(std::string_view guess, const LetterCounts& counts) const {
  for (std::size_t i = 0; i < guess.size(); ++i) {
    if (pins[i] != '\0' && guess[i] != pins[i]) return false;
  }
  for (std::size_t c = 0; c < 26; ++c) {
    if (counts[c] < min_counts[c]) return false;
  }
  return true;
}

std::vector<std::string> HardConstraints::violations(std::string_view guess) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < guess.size(); ++i) {
    if (pins[i] != '\0' && guess[i] != pins[i]) {
      out.push_back("position " + std::to_string(i + 1) + " must be '" + std::string(1, pins[i]) + "'");
    }
  }
  const auto counts = count_letters(guess);
  for (std::size_t c = 0; c < 26; ++c) {
    if (counts[c] < min_counts[c]) {
      out.push_back("must contain '" + std::string(1, static_cast<char>('a' + c)) + "'" +
                    (min_counts[c] > 1 ? " " + std::to_string(min_counts[c]) + " times" : std::string{}));
    }
  }
  return out;
}

GameState GameState::initial(const Puzzle& puzzle) {
  GameState s;
  s.eligible_.resize(puzzle.mysteries().size());
  for (std::size_t m = 0; m < s.eligible_.size(); ++m) s.eligible_[m] = static_cast<MysteryId>(m);
  return s;
}

std::string GameState::key(Mode mode) const {
  std::string k;
  k.reserve(eligible_.size() * 2 + 64);
  k.push_back(solved_ ? 'S' : 'U');
  for (MysteryId m : eligible_) {
    k.push_back(static_cast<char>(m & 0xFF));
    k.push_back(static_cast<char>(m >> 8));
  }
  if (mode == Mode::hard) {
    // Consistency depends on the set of turns, not their order or repeats.
    std::vector<std::uint64_t> turns;
    for (const auto& t : history_) turns.push_back(std::uint64_t{t.guess} << 16 | t.feedback.code());
    std::sort(turns.begin(), turns.end());
    turns.erase(std::unique(turns.begin(), turns.end()), turns.end());
    k.push_back('C');
    for (auto t : turns) k.append(reinterpret_cast<const char*>(&t), 6);
  } else if (mode == Mode::hard_hints) {
    k.push_back('H');
    k.append(constraints_.pins.begin(), constraints_.pins.end());
    for (auto c : constraints_.min_counts) k.push_back(static_cast<char>(c));
  }
  return k;
}

GameState advance_unchecked(const Puzzle& puzzle, const GameState& state, GuessId guess, Pattern observed,
                            std::vector<MysteryId> eligible) {
  GameState next;
  next.eligible_ = std::move(eligible);
  next.constraints_ = state.constraints_;
  next.constraints_.absorb(puzzle.guesses()[guess], observed);
  next.history_ = state.history_;
  next.history_.push_back({guess, observed});
  next.solved_ = observed == puzzle.solved_pattern();
  return next;
}

GameState filter_mysteries(const Puzzle& puzzle, const GameState& state, GuessId guess, Pattern observed) {
  if (guess >= puzzle.guesses().size()) throw DataError("guess id out of range");
  if (observed.code() >= puzzle.pattern_count()) throw DataError("pattern code out of range");
  std::vector<MysteryId> kept;
  const auto& matrix = puzzle.matrix();
  for (MysteryId m : state.eligible()) {
    if (matrix.at(guess, m) == observed) kept.push_back(m);
  }
  if (kept.empty()) {
    throw InconsistentFeedback("no remaining word is consistent with " + puzzle.guesses()[guess] + " " +
                               to_string(observed, puzzle.word_length()) + "; re-check the entered colors");
  }
  return advance_unchecked(puzzle, state, guess, observed, std::move(kept));
}

namespace {

bool consistent_with_history(const Puzzle& puzzle, const GameState& state, GuessId guess) {
  const auto& word = puzzle.guesses()[guess];
  for (const auto& t : state.history()) {
    if (compute_feedback(puzzle.guesses()[t.guess], word) != t.feedback) return false;
  }
  return true;
}

}  // namespace

bool is_allowable(const Puzzle& puzzle, const GameState& state, Mode mode, GuessId guess) {
  if (guess >= puzzle.guesses().size()) return false;
  switch (mode) {
    case Mode::easy: return true;
    case Mode::hard: return consistent_with_history(puzzle, state, guess);
    case Mode::hard_hints: return state.constraints().admits(puzzle.guesses()[guess], puzzle.letter_counts(guess));
  }
  return false;
}

std::vector<std::string> violations(const Puzzle& puzzle, const GameState& state, Mode mode, GuessId guess) {
  if (guess >= puzzle.guesses().size()) return {"unknown guess id " + std::to_string(guess)};
  const auto& word = puzzle.guesses()[guess];
  if (mode == Mode::hard_hints) return state.constraints().violations(word);
  std::vector<std::string> out;
  if (mode == Mode::easy) return out;
  for (const auto& t : state.history()) {
    const Pattern would = compute_feedback(puzzle.guesses()[t.guess], word);
    if (would != t.feedback) {
      out.push_back("if the mystery were '" + word + "', " + puzzle.guesses()[t.guess] + " would have shown " +
                    to_string(would, puzzle.word_length()) + ", not " + to_string(t.feedback, puzzle.word_length()));
    }
  }
  return out;
}

std::vector<GuessId> allowable_guesses(const Puzzle& puzzle, const GameState& state, const GameConfig& config) {
  std::vector<GuessId> out;
  const auto n = static_cast<GuessId>(puzzle.guesses().size());
  if (config.mode == Mode::easy) {
    out.resize(n);
    for (GuessId g = 0; g < n; ++g) out[g] = g;
    return out;
  }
  for (GuessId g = 0; g < n; ++g) {
    if (is_allowable(puzzle, state, config.mode, g)) out.push_back(g);
  }
  return out;
}

Episode play_episode(const Puzzle& puzzle, MysteryId mystery, const GuessPolicy& policy, const GameConfig& config) {
  if (mystery >= puzzle.mysteries().size()) throw DataError("mystery id out of range");
  Episode episode;
  episode.mystery = mystery;
  GameState state = GameState::initial(puzzle);
  const std::size_t cap = puzzle.mysteries().size() + 2;
  while (!state.solved()) {
    if (episode.turns.size() >= cap) {
      throw DivergenceError("episode for '" + puzzle.mysteries()[mystery] + "' exceeded " +
                            std::to_string(cap) + " guesses");
    }
    const GuessId guess = policy(state);
    if (!is_allowable(puzzle, state, config.mode, guess)) {
      throw ProtocolError("policy proposed disallowed guess '" +
                          (guess < puzzle.guesses().size() ? puzzle.guesses()[guess] : std::to_string(guess)) +
                          "' in " + std::string(to_string(config.mode)) + " mode");
    }
    const Pattern observed = puzzle.matrix().at(guess, mystery);
    state = filter_mysteries(puzzle, state, guess, observed);
    episode.turns.push_back({guess, observed});
  }
  episode.guess_count = static_cast<int>(episode.turns.size());
  episode.solved_within_limit = episode.guess_count <= config.max_guesses;
  return episode;
}

std::string format_episode(const Puzzle& puzzle, const Episode& episode) {
  std::ostringstream out;
  out << puzzle.mysteries()[episode.mystery] << '\n';
  for (const auto& t : episode.turns) {
    out << puzzle.guesses()[t.guess] << ' ' << to_string(t.feedback, puzzle.word_length()) << '\n';
  }
  return out.str();
}

GameState replay(const Puzzle& puzzle, std::span<const Turn> history) {
  GameState state = GameState::initial(puzzle);
  for (const auto& t : history) state = filter_mysteries(puzzle, state, t.guess, t.feedback);
  return state;
}

}  // namespace wordle
