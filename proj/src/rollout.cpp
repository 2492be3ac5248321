#include "wordle/rollout.hpp"

#include <algorithm>
#include <cctype>

#include "wordle/errors.hpp"

namespace wordle {

std::vector<FeedbackCell> split_by_feedback(const Puzzle& puzzle, GuessId guess,
                                            std::span<const MysteryId> eligible) {
  std::vector<std::uint32_t> slot(puzzle.pattern_count(), UINT32_MAX);
  std::vector<FeedbackCell> cells;
  for (MysteryId m : eligible) {
    const Pattern p = puzzle.matrix().at(guess, m);
    auto& s = slot[p.code()];
    if (s == UINT32_MAX) {
      s = static_cast<std::uint32_t>(cells.size());
      cells.push_back({p, {}});
    }
    cells[s].members.push_back(m);
  }
  std::sort(cells.begin(), cells.end(),
            [](const FeedbackCell& a, const FeedbackCell& b) { return a.pattern < b.pattern; });
  return cells;
}

BasePolicy::BasePolicy(const Puzzle& puzzle, Mode mode, Heuristic heuristic, TieBreak tie)
    : puzzle_(&puzzle), mode_(mode), heuristic_(heuristic), tie_(tie) {}

GuessId BasePolicy::choose(const GameState& state) const {
  if (state.eligible_count() == 0) throw Error("base policy called with no eligible words");
  if (state.eligible_count() == 1) return puzzle_->guess_of(state.eligible()[0]);
  const auto key = state.key(mode_);
  if (auto hit = decisions_.find(key)) return *hit;
  const GuessId guess = base_policy_step(*puzzle_, state, GameConfig{mode_}, heuristic_, tie_);
  decisions_.insert(key, guess);
  return guess;
}

std::uint64_t BasePolicy::total_guesses(const GameState& state) const {
  const std::size_t n = state.eligible_count();
  if (n <= 1) return n;
  const auto key = state.key(mode_);
  if (auto hit = totals_.find(key)) return *hit;
  const GuessId guess = choose(state);
  std::uint64_t total = n;
  for (auto& cell : split_by_feedback(*puzzle_, guess, state.eligible())) {
    if (cell.pattern == puzzle_->solved_pattern()) continue;
    if (cell.members.size() == n) {
      throw DivergenceError("base heuristic " + std::string(to_string(heuristic_)) + " made no progress with '" +
                            puzzle_->guesses()[guess] + "' on " + std::to_string(n) + " words");
    }
    total += total_guesses(advance_unchecked(*puzzle_, state, guess, cell.pattern, std::move(cell.members)));
  }
  totals_.insert(key, total);
  return total;
}

std::uint32_t BasePolicy::guesses_to_find(const GameState& state, MysteryId mystery) const {
  const std::size_t cap = state.eligible_count() + 2;
  GameState current = state;
  for (std::uint32_t played = 1; played <= cap; ++played) {
    const GuessId guess = choose(current);
    const Pattern observed = puzzle_->matrix().at(guess, mystery);
    if (observed == puzzle_->solved_pattern()) return played;
    current = filter_mysteries(*puzzle_, current, guess, observed);
  }
  throw DivergenceError("base heuristic " + std::string(to_string(heuristic_)) + " did not find '" +
                        puzzle_->mysteries()[mystery] + "' within " + std::to_string(cap) + " guesses");
}

Rollout::Rollout(const Puzzle& puzzle, Mode mode, RolloutConfig config, std::shared_ptr<const BasePolicy> base)
    : puzzle_(&puzzle), mode_(mode), config_(config), base_(std::move(base)) {
  if (config_.shortlist_size == 0) throw ConfigError("shortlist size must be at least 1");
  if (!base_) base_ = std::make_shared<BasePolicy>(puzzle, mode, config.base, config.tie_break);
  if (base_->heuristic() != config_.base || base_->mode() != mode_ || base_->tie_break() != config_.tie_break) {
    throw ConfigError("base policy does not match the rollout configuration");
  }
}

std::uint32_t Rollout::q_factor(const GameState& state, GuessId candidate, MysteryId mystery) const {
  const Pattern observed = puzzle_->matrix().at(candidate, mystery);
  if (observed == puzzle_->solved_pattern()) return 0;
  return base_->guesses_to_find(filter_mysteries(*puzzle_, state, candidate, observed), mystery);
}

QFactorTable Rollout::q_factor_table(const GameState& state, std::span<const GuessId> candidates) const {
  QFactorTable table;
  table.mysteries.assign(state.eligible().begin(), state.eligible().end());
  for (GuessId u : candidates) {
    QFactorTable::Row row;
    row.candidate = u;
    std::uint64_t sum = 0;
    for (MysteryId m : table.mysteries) {
      row.q.push_back(q_factor(state, u, m));
      sum += row.q.back();
    }
    row.mean = static_cast<double>(sum) / static_cast<double>(table.mysteries.size());
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<CandidateEvaluation> Rollout::evaluate(const GameState& state,
                                                   std::span<const HeuristicScore> candidates) const {
  std::vector<CandidateEvaluation> out;
  out.reserve(candidates.size());
  const auto n = state.eligible_count();
  for (const auto& score : candidates) {
    CandidateEvaluation eval;
    eval.score = score;
    // Sum over cells replaces the per-mystery loop: every mystery of a cell
    // sees the same successor state.
    for (auto& cell : split_by_feedback(*puzzle_, score.guess, state.eligible())) {
      ++eval.cells;
      eval.largest_cell = std::max<std::uint32_t>(eval.largest_cell, static_cast<std::uint32_t>(cell.members.size()));
      if (cell.pattern == puzzle_->solved_pattern()) continue;
      eval.q_sum += base_->total_guesses(
          advance_unchecked(*puzzle_, state, score.guess, cell.pattern, std::move(cell.members)));
    }
    eval.q_mean = static_cast<double>(eval.q_sum) / static_cast<double>(n);
    out.push_back(eval);
  }
  return out;
}

RolloutDecision Rollout::select(const GameState& state) const {
  RolloutDecision decision;
  decision.eligible_count = static_cast<std::uint32_t>(state.eligible_count());
  if (state.eligible_count() == 0) throw Error("rollout called with no eligible words");
  if (state.eligible_count() == 1) {
    decision.guess = puzzle_->guess_of(state.eligible()[0]);
    return decision;
  }
  const auto allowed = allowable_guesses(*puzzle_, state, GameConfig{mode_});
  PartitionScorer scorer(*puzzle_);
  auto shortlist = top_scores(scorer.score(allowed, state.eligible(), config_.base), config_.shortlist_size, config_.tie_break,
                              config_.shortlist_tie_break);
  decision.shortlist = evaluate(state, shortlist);
  // Exact integer comparison; ties keep the earlier shortlist entry.
  std::size_t best = 0;
  for (std::size_t i = 1; i < decision.shortlist.size(); ++i) {
    if (decision.shortlist[i].q_sum < decision.shortlist[best].q_sum) best = i;
  }
  decision.guess = decision.shortlist[best].score.guess;
  return decision;
}

GuessId Rollout::choose(const GameState& state) const {
  if (state.eligible_count() == 1) return puzzle_->guess_of(state.eligible()[0]);
  const auto key = state.key(mode_);
  if (auto hit = decisions_.find(key)) return *hit;
  const GuessId guess = select(state).guess;
  decisions_.insert(key, guess);
  return guess;
}

RolloutDecision select_rollout_guess(const Puzzle& puzzle, const GameState& state, Mode mode,
                                     const RolloutConfig& config) {
  return Rollout(puzzle, mode, config).select(state);
}

PolicySpec parse_policy(std::string_view tag) {
  std::string lower(tag);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  PolicySpec spec;
  constexpr std::string_view kPrefix = "rollout-";
  std::string_view rest = lower;
  if (rest.starts_with(kPrefix)) {
    spec.rollout = true;
    rest.remove_prefix(kPrefix.size());
  }
  try {
    spec.heuristic = parse_heuristic(rest);
  } catch (const ConfigError&) {
    throw ConfigError("unknown policy '" + std::string(tag) + "' (expected mig, mrd, gep or rollout-<heuristic>)");
  }
  return spec;
}

std::string to_string(const PolicySpec& spec) {
  return (spec.rollout ? "rollout-" : "") + std::string(to_string(spec.heuristic));
}

std::shared_ptr<const BasePolicy> PolicyLibrary::base(Mode mode, Heuristic heuristic, TieBreak tie) {
  std::lock_guard lock(mutex_);
  auto& slot = bases_[{mode, heuristic, tie}];
  if (!slot) slot = std::make_shared<BasePolicy>(*puzzle_, mode, heuristic, tie);
  return slot;
}

std::shared_ptr<const Rollout> PolicyLibrary::rollout(Mode mode, const RolloutConfig& config) {
  auto shared_base = base(mode, config.base, config.tie_break);
  std::lock_guard lock(mutex_);
  auto& slot = rollouts_[{mode, config.base, config.shortlist_size, config.tie_break, config.shortlist_tie_break}];
  if (!slot) slot = std::make_shared<Rollout>(*puzzle_, mode, config, std::move(shared_base));
  return slot;
}

GuessPolicy PolicyLibrary::policy(const PolicySpec& spec, Mode mode, std::optional<std::string_view> opener) {
  std::optional<GuessId> first;
  if (opener) {
    auto id = puzzle_->guesses().find(*opener);
    if (!id) throw ConfigError("opener '" + std::string(*opener) + "' is not in the guess list");
    first = *id;
  }
  if (spec.rollout) {
    auto r = rollout(mode, RolloutConfig{spec.heuristic, spec.shortlist_size, spec.tie_break, spec.shortlist_tie_break});
    return [r, first](const GameState& state) {
      if (first && state.history().empty()) return *first;
      return r->choose(state);
    };
  }
  auto b = base(mode, spec.heuristic, spec.tie_break);
  return [b, first](const GameState& state) {
    if (first && state.history().empty()) return *first;
    return b->choose(state);
  };
}

}  // namespace wordle
