#pragma once

// Instances of the adaptive framework: Wordle itself, and a number-search
// demo whose optimum is easy to work out by hand.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wordle/adaptive.hpp"
#include "wordle/game.hpp"
#include "wordle/heuristics.hpp"
#include "wordle/lexicon.hpp"
#include "wordle/rational.hpp"

namespace wordle {

// Hypotheses are the mystery ids; the state is the game state (its eligible
// set is the support of the uniform belief); controls are guess ids and the
// outcome of a guess is its color pattern. Every guess costs 1.
class WordleModel {
 public:
  using State = GameState;
  using Control = GuessId;
  using Outcome = Pattern;
  using Cost = int;

  WordleModel(const Puzzle& puzzle, Mode mode, TieBreak tie = TieBreak::lowest_id);

  const Puzzle& puzzle() const { return *puzzle_; }
  Mode mode() const { return mode_; }

  std::size_t hypothesis_count() const { return puzzle_->mysteries().size(); }
  // Allowable guesses in tie-break order. With one word left, only that word.
  std::vector<GuessId> controls(const GameState& x) const;
  Pattern outcome(const GameState&, std::size_t i, GuessId u) const {
    return puzzle_->matrix().at(u, static_cast<MysteryId>(i));
  }
  GameState next(const GameState& x, GuessId u, Pattern z) const;
  int stage_cost(const GameState&, std::size_t, GuessId) const { return 1; }
  bool terminal(const GameState& x) const { return x.solved(); }
  int terminal_cost(const GameState&) const { return 0; }
  std::string key(const GameState& x) const { return x.key(mode_); }
  std::string describe(GuessId u) const { return puzzle_->guesses()[u]; }
  std::string describe(Pattern z) const { return to_string(z, puzzle_->word_length()); }

 private:
  const Puzzle* puzzle_;
  Mode mode_;
  TieBreak tie_;
};

// Entropy cost-to-go: log2 of the eligible count. One-step lookahead with it
// picks the maximum-information guess.
double entropy_cost_to_go(const GameState& x);

enum class Comparison : std::uint8_t { less, equal, greater };

// A secret number in 1..n; probing k reveals whether the secret is less than,
// equal to or greater than k. Each probe costs 1 and the game ends on equal.
class NumberSearchModel {
 public:
  struct State {
    int lo = 1;
    int hi = 1;
    bool found = false;
    friend bool operator==(const State&, const State&) = default;
  };
  using Control = int;
  using Outcome = Comparison;
  using Cost = int;

  explicit NumberSearchModel(int n);

  int n() const { return n_; }
  State initial() const { return {1, n_, false}; }

  // Hypothesis i is the secret i + 1.
  std::size_t hypothesis_count() const { return static_cast<std::size_t>(n_); }
  // Probes inside the live interval, in increasing order.
  std::vector<int> controls(const State& x) const;
  Comparison outcome(const State&, std::size_t i, int probe) const;
  State next(const State& x, int probe, Comparison z) const;
  int stage_cost(const State&, std::size_t, int) const { return 1; }
  bool terminal(const State& x) const { return x.found; }
  int terminal_cost(const State&) const { return 0; }
  std::string key(const State& x) const;
  std::string describe(int probe) const { return "probe " + std::to_string(probe); }
  std::string describe(Comparison z) const;

 private:
  int n_;
};

static_assert(adaptive::HypothesisModel<WordleModel>);
static_assert(adaptive::HypothesisModel<NumberSearchModel>);

// Declarative instance definition, e.g.
//   {"type": "number-search", "n": 7}
//   {"type": "wordle", "mode": "hard", "seed": 3, "mysteries": 20, "guesses": 120}
//   {"type": "wordle", "mysteries": ["bound", "mound"], "guesses": ["bound", "mound", "abbey"]}
// Wordle instances draw from the shipped lists of the given "length" (default 5).
struct InstanceConfig {
  std::string type;
  std::size_t hypotheses = 0;
  int n = 0;
  Mode mode = Mode::easy;
  int length = 5;
  std::uint64_t seed = 0;
  std::size_t mystery_count = 0;
  std::size_t guess_count = 0;
  std::vector<std::string> mystery_words;
  std::vector<std::string> guess_words;
};

// Throws DataError for malformed JSON or unknown types.
InstanceConfig parse_instance_config(std::string_view json);

struct DpReport {
  std::string type;
  std::size_t hypotheses = 0;
  Rational cost;
  std::string first;
  std::string tree;
  std::size_t nodes = 0;
};

// Exact DP over the configured instance from its initial state under a
// uniform prior. The Wordle case needs `parent` for list lookups when the
// config names words or sampling; pass nullptr to load the shipped lists.
DpReport solve_instance(const InstanceConfig& config, const Puzzle* parent = nullptr,
                        adaptive::DpOptions options = {});

}  // namespace wordle
