#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wordle/game.hpp"
#include "wordle/lexicon.hpp"

namespace wordle {

// mig: maximum information gain, mrd: most rapid decrease,
// gep: greatest expected probability.
enum class Heuristic { mig, mrd, gep };

Heuristic parse_heuristic(std::string_view text);
std::string_view to_string(Heuristic heuristic);

// How guesses whose scores are tied are ordered. lowest_id takes the first
// guess in list order, as a plain argmax over the guess list would.
// prefer_eligible first takes a guess that could win on the spot.
enum class TieBreak { lowest_id, prefer_eligible };

TieBreak parse_tie_break(std::string_view text);
std::string_view to_string(TieBreak tie);

// Cells of the feedback partition of an eligible set under one guess, sorted
// by pattern code.
struct PartitionProfile {
  std::vector<std::pair<Pattern, std::uint32_t>> cells;
  std::uint32_t total = 0;
  bool has_solved_cell = false;
};

PartitionProfile partition(const Puzzle& puzzle, GuessId guess, std::span<const MysteryId> eligible);

// Bits. Under a uniform prior this is the entropy of the feedback distribution.
double information_gain(const PartitionProfile& profile);
// Sum of squared cell sizes over the total: expected size of the next list.
double expected_residual_size(const PartitionProfile& profile);
// Cell count over total. The flag does not change the value; it only records
// whether the guess can win immediately.
double expected_pick_probability(const PartitionProfile& profile, bool guess_in_eligible);

// Partition statistics gathered in a single pass, enough for every heuristic.
struct PartitionStats {
  std::uint32_t cells = 0;
  std::uint64_t sum_squares = 0;
  double sum_xlogx = 0.0;  // sum of c*log2(c) over cell sizes c
  bool has_solved_cell = false;
};

double heuristic_value(Heuristic heuristic, const PartitionStats& stats, std::uint32_t total);

struct HeuristicScore {
  GuessId guess = 0;
  // Bits for mig, expected residual count for mrd, probability for gep.
  double value = 0.0;
  Heuristic heuristic = Heuristic::mig;
  // The guess is itself an eligible mystery, so it may win on the spot.
  bool eligible = false;
};

// Orientation-free merit: larger is better for every heuristic.
double merit(const HeuristicScore& score);

// Scores closer than this are treated as tied.
inline constexpr double kScoreTolerance = 1e-9;

// Reusable scratch buffers for scoring many guesses against one eligible set.
class PartitionScorer {
 public:
  explicit PartitionScorer(const Puzzle& puzzle);

  PartitionStats stats(GuessId guess, std::span<const MysteryId> eligible);

  // Scores every guess in `guesses` against the eligible set.
  std::vector<HeuristicScore> score(std::span<const GuessId> guesses, std::span<const MysteryId> eligible,
                                    Heuristic heuristic);

 private:
  const Puzzle* puzzle_;
  std::vector<std::uint32_t> counts_;
};

std::vector<HeuristicScore> score_guesses(const Puzzle& puzzle, const GameState& state,
                                          const GameConfig& config, Heuristic heuristic);

// Index of the preferred score: best merit, and among scores within
// kScoreTolerance of it the first by `tie`.
std::size_t preferred_index(std::span<const HeuristicScore> scores, TieBreak tie = TieBreak::lowest_id);

// The best `count` scores. Position 0 holds the preferred score under `lead`
// (the guess base_policy_step would play); the rest follow by merit, ties
// ordered by `order`.
std::vector<HeuristicScore> top_scores(std::vector<HeuristicScore> scores, std::size_t count, TieBreak lead,
                                       TieBreak order);
inline std::vector<HeuristicScore> top_scores(std::vector<HeuristicScore> scores, std::size_t count,
                                              TieBreak tie = TieBreak::lowest_id) {
  return top_scores(std::move(scores), count, tie, tie);
}

std::vector<HeuristicScore> rank_guesses(const Puzzle& puzzle, const GameState& state, const GameConfig& config,
                                         Heuristic heuristic, std::size_t count,
                                         TieBreak tie = TieBreak::lowest_id);

// One step of the base heuristic. With a single eligible word, plays it.
GuessId base_policy_step(const Puzzle& puzzle, const GameState& state, const GameConfig& config,
                         Heuristic heuristic, TieBreak tie = TieBreak::lowest_id);

}  // namespace wordle
