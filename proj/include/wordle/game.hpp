#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordle/lexicon.hpp"

namespace wordle {

// hard: every guess must be consistent with all feedback seen so far, i.e.
// it could itself be the mystery.
// hard_hints: the looser official rule; greens stay in place and hinted
// letters are reused, but grays and yellow positions may be repeated.
enum class Mode { easy, hard, hard_hints };

// Accepts "easy", "hard" and "hard-hints".
Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode);
inline bool is_hard(Mode mode) { return mode != Mode::easy; }

struct GameConfig {
  Mode mode = Mode::easy;
  // Reporting threshold only; episodes always play to the solution.
  int max_guesses = 6;
};

// Hard-mode constraint record: green letters pinned by position and, from the
// most recent feedback only, the minimum count of every hinted letter.
struct HardConstraints {
  std::array<char, kMaxWordLength> pins{};
  LetterCounts min_counts{};

  void absorb(std::string_view guess, Pattern feedback);
  bool admits(std::string_view guess, const LetterCounts& counts) const;
  // Human-readable list of rules the guess breaks; empty when admitted.
  std::vector<std::string> violations(std::string_view guess) const;

  friend bool operator==(const HardConstraints&, const HardConstraints&) = default;
};

struct Turn {
  GuessId guess = 0;
  Pattern feedback;

  friend bool operator==(const Turn&, const Turn&) = default;
};

// Eligible mysteries (sorted ids), hard-mode constraints and the history that
// produced them. Under a uniform prior this is the whole belief state.
class GameState {
 public:
  static GameState initial(const Puzzle& puzzle);

  std::span<const MysteryId> eligible() const { return eligible_; }
  std::size_t eligible_count() const { return eligible_.size(); }
  const HardConstraints& constraints() const { return constraints_; }
  const std::vector<Turn>& history() const { return history_; }
  bool solved() const { return solved_; }

  // Memoization key: the eligible set, plus whatever fixes the allowable
  // guesses in the given mode (the set of turns, or the constraint record).
  std::string key(Mode mode) const;

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  friend GameState filter_mysteries(const Puzzle&, const GameState&, GuessId, Pattern);
  friend GameState advance_unchecked(const Puzzle&, const GameState&, GuessId, Pattern,
                                     std::vector<MysteryId>);

  std::vector<MysteryId> eligible_;
  HardConstraints constraints_;
  std::vector<Turn> history_;
  bool solved_ = false;
};

// Keeps the eligible mysteries whose feedback against `guess` equals
// `observed`. Throws InconsistentFeedback when none remain.
GameState filter_mysteries(const Puzzle& puzzle, const GameState& state, GuessId guess, Pattern observed);

// Successor with a precomputed eligible set (already filtered by the caller).
GameState advance_unchecked(const Puzzle& puzzle, const GameState& state, GuessId guess,
                            Pattern observed, std::vector<MysteryId> eligible);

bool is_allowable(const Puzzle& puzzle, const GameState& state, Mode mode, GuessId guess);
// Why `guess` is not allowable; empty when it is.
std::vector<std::string> violations(const Puzzle& puzzle, const GameState& state, Mode mode, GuessId guess);
std::vector<GuessId> allowable_guesses(const Puzzle& puzzle, const GameState& state, const GameConfig& config);

using GuessPolicy = std::function<GuessId(const GameState&)>;

struct Episode {
  MysteryId mystery = 0;
  std::vector<Turn> turns;
  int guess_count = 0;
  bool solved_within_limit = false;
};

// Plays `policy` against `mystery` until the all-green pattern. Throws
// ProtocolError for a disallowed guess and DivergenceError if the game runs
// past |mysteries| + 2 guesses.
Episode play_episode(const Puzzle& puzzle, MysteryId mystery, const GuessPolicy& policy, const GameConfig& config);

// Line-based log: the mystery word, then one "guess PATTERN" line per turn.
std::string format_episode(const Puzzle& puzzle, const Episode& episode);

// Rebuilds a state by folding filter_mysteries over a transcript.
GameState replay(const Puzzle& puzzle, std::span<const Turn> history);

}  // namespace wordle
