#include "wordle/heuristics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "wordle/errors.hpp"

namespace wordle {

namespace {

// c * log2(c) for every possible cell size.
const std::vector<double>& xlogx_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(std::size_t{1} << 16, 0.0);
    for (std::size_t c = 2; c < t.size(); ++c) t[c] = static_cast<double>(c) * std::log2(static_cast<double>(c));
    return t;
  }();
  return table;
}

// Order among tied scores.
bool tie_before(const HeuristicScore& a, const HeuristicScore& b, TieBreak tie) {
  if (tie == TieBreak::prefer_eligible && a.eligible != b.eligible) return a.eligible;
  return a.guess < b.guess;
}

}  // namespace

Heuristic parse_heuristic(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "mig") return Heuristic::mig;
  if (lower == "mrd") return Heuristic::mrd;
  if (lower == "gep") return Heuristic::gep;
  throw ConfigError("unknown heuristic '" + std::string(text) + "' (expected mig, mrd or gep)");
}

TieBreak parse_tie_break(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "lowest-id" || lower == "lowest_id") return TieBreak::lowest_id;
  if (lower == "prefer-eligible" || lower == "prefer_eligible") return TieBreak::prefer_eligible;
  throw ConfigError("unknown tie-break '" + std::string(text) + "' (expected lowest-id or prefer-eligible)");
}

std::string_view to_string(TieBreak tie) {
  return tie == TieBreak::lowest_id ? "lowest-id" : "prefer-eligible";
}

std::string_view to_string(Heuristic heuristic) {
  switch (heuristic) {
    case Heuristic::mig: return "mig";
    case Heuristic::mrd: return "mrd";
    case Heuristic::gep: return "gep";
  }
  return "?";
}

PartitionProfile partition(const Puzzle& puzzle, GuessId guess, std::span<const MysteryId> eligible) {
  std::vector<std::uint32_t> counts(puzzle.pattern_count(), 0);
  for (MysteryId m : eligible) ++counts[puzzle.matrix().at(guess, m).code()];
  PartitionProfile profile;
  profile.total = static_cast<std::uint32_t>(eligible.size());
  for (std::size_t code = 0; code < counts.size(); ++code) {
    if (counts[code] == 0) continue;
    profile.cells.emplace_back(Pattern{static_cast<Pattern::Code>(code)}, counts[code]);
  }
  profile.has_solved_cell = counts[puzzle.solved_pattern().code()] > 0;
  return profile;
}

double information_gain(const PartitionProfile& profile) {
  const double n = profile.total;
  double bits = 0.0;
  for (const auto& [pattern, size] : profile.cells) {
    const double p = size / n;
    bits -= p * std::log2(p);
  }
  return bits;
}

double expected_residual_size(const PartitionProfile& profile) {
  double sum = 0.0;
  for (const auto& [pattern, size] : profile.cells) sum += static_cast<double>(size) * size;
  return sum / profile.total;
}

double expected_pick_probability(const PartitionProfile& profile, bool /*guess_in_eligible*/) {
  return static_cast<double>(profile.cells.size()) / profile.total;
}

double heuristic_value(Heuristic heuristic, const PartitionStats& stats, std::uint32_t total) {
  const double n = total;
  switch (heuristic) {
    case Heuristic::mig: return std::log2(n) - stats.sum_xlogx / n;
    case Heuristic::mrd: return static_cast<double>(stats.sum_squares) / n;
    case Heuristic::gep: return stats.cells / n;
  }
  return 0.0;
}

double merit(const HeuristicScore& score) {
  return score.heuristic == Heuristic::mrd ? -score.value : score.value;
}

PartitionScorer::PartitionScorer(const Puzzle& puzzle)
    : puzzle_(&puzzle), counts_(puzzle.pattern_count(), 0) {}

PartitionStats PartitionScorer::stats(GuessId guess, std::span<const MysteryId> eligible) {
  const auto& table = xlogx_table();
  PartitionStats s;
  auto* counts = counts_.data();
  const auto solved = puzzle_->solved_pattern().code();
  puzzle_->matrix().visit_row(guess, [&](auto row) {
    for (MysteryId m : eligible) ++counts[row[m]];
    // Second pass reads each cell once and clears it for the next guess.
    for (MysteryId m : eligible) {
      auto& c = counts[row[m]];
      if (c == 0) continue;
      s.has_solved_cell |= row[m] == solved;
      ++s.cells;
      s.sum_squares += std::uint64_t{c} * c;
      s.sum_xlogx += table[c];
      c = 0;
    }
  });
  return s;
}

std::vector<HeuristicScore> PartitionScorer::score(std::span<const GuessId> guesses,
                                                   std::span<const MysteryId> eligible, Heuristic heuristic) {
  std::vector<HeuristicScore> out;
  out.reserve(guesses.size());
  const auto total = static_cast<std::uint32_t>(eligible.size());
  for (GuessId g : guesses) {
    const auto s = stats(g, eligible);
    out.push_back({g, heuristic_value(heuristic, s, total), heuristic, s.has_solved_cell});
  }
  return out;
}

std::vector<HeuristicScore> score_guesses(const Puzzle& puzzle, const GameState& state, const GameConfig& config,
                                          Heuristic heuristic) {
  const auto guesses = allowable_guesses(puzzle, state, config);
  PartitionScorer scorer(puzzle);
  return scorer.score(guesses, state.eligible(), heuristic);
}

std::size_t preferred_index(std::span<const HeuristicScore> scores, TieBreak tie) {
  if (scores.empty()) throw Error("no allowable guesses to score");
  double best = merit(scores[0]);
  for (const auto& s : scores) best = std::max(best, merit(s));
  std::size_t pick = scores.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (merit(scores[i]) < best - kScoreTolerance) continue;
    if (pick == scores.size()) {
      pick = i;
      continue;
    }
    if (tie_before(scores[i], scores[pick], tie)) pick = i;
  }
  return pick;
}

std::vector<HeuristicScore> top_scores(std::vector<HeuristicScore> scores, std::size_t count, TieBreak lead,
                                       TieBreak tie) {
  if (scores.empty()) return scores;
  const HeuristicScore preferred = scores[preferred_index(scores, lead)];
  count = std::min(count, scores.size());
  auto before = [tie](const HeuristicScore& a, const HeuristicScore& b) {
    const double ma = merit(a);
    const double mb = merit(b);
    if (ma != mb) return ma > mb;
    return tie_before(a, b, tie);
  };
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(count), scores.end(), before);
  scores.resize(count);
  auto it = std::find_if(scores.begin(), scores.end(),
                         [&](const HeuristicScore& s) { return s.guess == preferred.guess; });
  if (it == scores.end()) {
    scores.pop_back();
    scores.insert(scores.begin(), preferred);
  } else {
    std::rotate(scores.begin(), it, it + 1);
  }
  return scores;
}

std::vector<HeuristicScore> rank_guesses(const Puzzle& puzzle, const GameState& state, const GameConfig& config,
                                         Heuristic heuristic, std::size_t count, TieBreak tie) {
  return top_scores(score_guesses(puzzle, state, config, heuristic), count, tie);
}

GuessId base_policy_step(const Puzzle& puzzle, const GameState& state, const GameConfig& config,
                         Heuristic heuristic, TieBreak tie) {
  if (state.eligible_count() == 0) throw Error("base policy called with no eligible words");
  if (state.eligible_count() == 1) return puzzle.guess_of(state.eligible()[0]);
  if (state.eligible_count() == 2) {
    // Any guess that separates the two reaches the best value of all three
    // heuristics, and both eligible words do.
    const GuessId a = puzzle.guess_of(state.eligible()[0]);
    const GuessId b = puzzle.guess_of(state.eligible()[1]);
    if (tie == TieBreak::prefer_eligible) return std::min(a, b);
    const MysteryId ma = state.eligible()[0];
    const MysteryId mb = state.eligible()[1];
    const auto& matrix = puzzle.matrix();
    const GuessId limit = std::min(a, b);
    for (GuessId g = 0; g < limit; ++g) {
      if (matrix.at(g, ma) != matrix.at(g, mb) && is_allowable(puzzle, state, config.mode, g)) return g;
    }
    return limit;
  }
  const auto scores = score_guesses(puzzle, state, config, heuristic);
  if (scores.empty()) throw Error("invariant violated: no allowable guesses while words remain");
  return scores[preferred_index(scores, tie)].guess;
}

}  // namespace wordle
