#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordle/game.hpp"
#include "wordle/lexicon.hpp"
#include "wordle/rational.hpp"
#include "wordle/rollout.hpp"

namespace wordle {

// A reduced instance, as id lists into a parent puzzle.
struct SubInstance {
  std::uint64_t seed = 0;
  Mode mode = Mode::easy;
  std::vector<GuessId> guesses;      // sorted; contains every mystery's guess id
  std::vector<MysteryId> mysteries;  // sorted
};

// Reproducible across platforms: draws come straight from mt19937_64 without
// library distributions. The guess subset is the mysteries plus random extras
// up to `guess_count` in total.
SubInstance sample_sub_instance(const Puzzle& parent, std::uint64_t seed, std::size_t mystery_count,
                                std::size_t guess_count, Mode mode);

std::string serialize(const SubInstance& instance);
// Throws DataError on malformed input.
SubInstance parse_sub_instance(std::string_view json);

// Puzzle over the instance's words. Throws DataError if an id is out of range
// or a mystery is not among the guesses.
Puzzle materialize(const Puzzle& parent, const SubInstance& instance);

struct OracleOptions {
  std::size_t max_mysteries = 30;
  std::size_t max_guesses = 200;
  // Distinct states solved (memoized) or recursive calls (not memoized).
  std::size_t node_budget = 5'000'000;
  bool memoize = true;
};

struct OracleResult {
  // Expected guesses under a uniform prior, total / |mysteries|.
  Rational expected;
  std::uint64_t total = 0;
  // Lowest-id guess attaining the optimum.
  GuessId opener = 0;
  std::size_t nodes = 0;
};

// Exact minimum expected number of guesses over all strategies, solved by
// memoized recursion on the eligible set (plus the allowable set in hard
// mode). Throws InstanceTooLarge past the caps or the node budget.
OracleResult optimal_expected_guesses(const Puzzle& puzzle, Mode mode, const OracleOptions& options = {});
OracleResult optimal_expected_guesses(const Puzzle& puzzle, const GameState& from, Mode mode,
                                      const OracleOptions& options = {});

// Exact expected guesses of a policy, playing every mystery once.
Rational policy_expected_guesses(const Puzzle& puzzle, Mode mode, const GuessPolicy& policy);

struct OrderingRow {
  PolicySpec base;
  Rational base_cost;
  Rational rollout_cost;
  bool optimal_le_rollout = false;
  bool rollout_le_base = false;
};

struct OrderingReport {
  Mode mode = Mode::easy;
  std::size_t mysteries = 0;
  std::size_t guesses = 0;
  Rational optimal;
  GuessId opener = 0;
  std::vector<OrderingRow> rows;
  // One line per violated inequality, naming the pair.
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Costs of the optimum and, for each base spec, of the base policy and of the
// rollout on it, checking optimal <= rollout <= base.
OrderingReport verify_ordering(const Puzzle& puzzle, Mode mode, std::span<const PolicySpec> bases,
                               const OracleOptions& options = {});

std::string format_report(const Puzzle& puzzle, const OrderingReport& report);

}  // namespace wordle
