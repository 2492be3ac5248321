#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "wordle/game.hpp"
#include "wordle/heuristics.hpp"
#include "wordle/memo.hpp"

namespace wordle {

// Eligible set split by the feedback of one guess, cells in pattern order.
struct FeedbackCell {
  Pattern pattern;
  std::vector<MysteryId> members;
};
std::vector<FeedbackCell> split_by_feedback(const Puzzle& puzzle, GuessId guess, std::span<const MysteryId> eligible);

// The base heuristic as a state-feedback policy, with its decisions and the
// cost of its subtrees memoized per state.
class BasePolicy {
 public:
  BasePolicy(const Puzzle& puzzle, Mode mode, Heuristic heuristic, TieBreak tie = TieBreak::lowest_id);

  const Puzzle& puzzle() const { return *puzzle_; }
  Mode mode() const { return mode_; }
  Heuristic heuristic() const { return heuristic_; }
  TieBreak tie_break() const { return tie_; }

  GuessId choose(const GameState& state) const;

  // Sum over the eligible mysteries of the guesses this policy plays from
  // `state` until each is found, counting the guess made at `state`.
  std::uint64_t total_guesses(const GameState& state) const;

  // Guesses this policy plays from `state` until `mystery` is found, by direct
  // step-by-step simulation. Throws DivergenceError past |eligible| + 2 steps.
  std::uint32_t guesses_to_find(const GameState& state, MysteryId mystery) const;

  std::size_t cached_states() const { return decisions_.size(); }

 private:
  const Puzzle* puzzle_;
  Mode mode_;
  Heuristic heuristic_;
  TieBreak tie_;
  mutable MemoTable<GuessId> decisions_;
  mutable MemoTable<std::uint64_t> totals_;
};

struct RolloutConfig {
  Heuristic base = Heuristic::mig;
  std::size_t shortlist_size = 10;
  // Tie order of the base policy. Its pick always leads the shortlist.
  TieBreak tie_break = TieBreak::lowest_id;
  // Tie order for the remaining shortlist slots.
  TieBreak shortlist_tie_break = TieBreak::prefer_eligible;
};

// One shortlist candidate: its single-stage score and its Q-factors.
struct CandidateEvaluation {
  HeuristicScore score;
  // Sum of Q(m, u) over the eligible mysteries; the mean is q_sum / |eligible|.
  std::uint64_t q_sum = 0;
  double q_mean = 0.0;
  std::uint32_t cells = 0;
  std::uint32_t largest_cell = 0;
};

struct RolloutDecision {
  GuessId guess = 0;
  std::uint32_t eligible_count = 0;
  // Candidates in shortlist order; empty when the answer is forced.
  std::vector<CandidateEvaluation> shortlist;
};

// Per-mystery Q-factors for a set of candidates.
struct QFactorTable {
  std::vector<MysteryId> mysteries;
  struct Row {
    GuessId candidate = 0;
    std::vector<std::uint32_t> q;  // aligned with `mysteries`
    double mean = 0.0;
  };
  std::vector<Row> rows;
};

// One-step lookahead over the base heuristic's shortlist, scoring each
// candidate by the average number of further guesses the base policy needs.
class Rollout {
 public:
  Rollout(const Puzzle& puzzle, Mode mode, RolloutConfig config,
          std::shared_ptr<const BasePolicy> base = nullptr);

  const Puzzle& puzzle() const { return *puzzle_; }
  Mode mode() const { return mode_; }
  const RolloutConfig& config() const { return config_; }
  const BasePolicy& base() const { return *base_; }

  // Guesses played after `candidate` until `mystery` is found (0 when the
  // candidate is the mystery).
  std::uint32_t q_factor(const GameState& state, GuessId candidate, MysteryId mystery) const;

  QFactorTable q_factor_table(const GameState& state, std::span<const GuessId> candidates) const;

  // Q-factor evaluation of arbitrary candidates, in the given order.
  std::vector<CandidateEvaluation> evaluate(const GameState& state, std::span<const HeuristicScore> candidates) const;

  RolloutDecision select(const GameState& state) const;

  // select(state).guess, memoized per state.
  GuessId choose(const GameState& state) const;

 private:
  const Puzzle* puzzle_;
  Mode mode_;
  RolloutConfig config_;
  std::shared_ptr<const BasePolicy> base_;
  mutable MemoTable<GuessId> decisions_;
};

RolloutDecision select_rollout_guess(const Puzzle& puzzle, const GameState& state, Mode mode,
                                     const RolloutConfig& config);

// Policy tag: "mig", "mrd", "gep", or the same prefixed with "rollout-".
struct PolicySpec {
  Heuristic heuristic = Heuristic::mig;
  bool rollout = false;
  std::size_t shortlist_size = 10;
  TieBreak tie_break = TieBreak::lowest_id;
  TieBreak shortlist_tie_break = TieBreak::prefer_eligible;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

PolicySpec parse_policy(std::string_view tag);
std::string to_string(const PolicySpec& spec);

// Shares memoized policies across episodes, rows and sessions.
class PolicyLibrary {
 public:
  explicit PolicyLibrary(const Puzzle& puzzle) : puzzle_(&puzzle) {}

  const Puzzle& puzzle() const { return *puzzle_; }
  std::shared_ptr<const BasePolicy> base(Mode mode, Heuristic heuristic, TieBreak tie = TieBreak::lowest_id);
  std::shared_ptr<const Rollout> rollout(Mode mode, const RolloutConfig& config);

  // Guess-selection function that plays `opener` first (when given) and then
  // follows `spec`. Throws ConfigError if the opener is not a guess word.
  GuessPolicy policy(const PolicySpec& spec, Mode mode, std::optional<std::string_view> opener);

 private:
  const Puzzle* puzzle_;
  std::mutex mutex_;
  std::map<std::tuple<Mode, Heuristic, TieBreak>, std::shared_ptr<const BasePolicy>> bases_;
  std::map<std::tuple<Mode, Heuristic, std::size_t, TieBreak, TieBreak>, std::shared_ptr<const Rollout>> rollouts_;
};

}  // namespace wordle
