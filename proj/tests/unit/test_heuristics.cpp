#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "wordle/errors.hpp"
#include "wordle/heuristics.hpp"

using namespace wordle;
using wordle::testing::standard_puzzle;
using wordle::testing::tiny_puzzle;

namespace {

PartitionProfile profile_of(std::initializer_list<std::uint32_t> sizes) {
  PartitionProfile p;
  Pattern::Code code = 0;
  for (auto s : sizes) {
    p.cells.emplace_back(Pattern{code++}, s);
    p.total += s;
  }
  return p;
}

// A random mid-game state: one or two random guesses against a random mystery.
GameState random_state(const Puzzle& p, std::mt19937_64& rng) {
  auto s = GameState::initial(p);
  const auto mystery = static_cast<MysteryId>(rng() % p.mysteries().size());
  const int turns = 1 + static_cast<int>(rng() % 2);
  for (int t = 0; t < turns; ++t) {
    const auto g = static_cast<GuessId>(rng() % p.guesses().size());
    if (p.matrix().at(g, mystery) == p.solved_pattern()) break;
    s = filter_mysteries(p, s, g, p.matrix().at(g, mystery));
  }
  return s;
}

}  // namespace

TEST_CASE("tags") {
  CHECK(parse_tie_break("Lowest-Id") == TieBreak::lowest_id);
  CHECK(parse_tie_break("prefer-eligible") == TieBreak::prefer_eligible);
  CHECK_THROWS_AS(parse_tie_break("random"), ConfigError);
  CHECK(parse_heuristic("MIG") == Heuristic::mig);
  CHECK(parse_heuristic("mrd") == Heuristic::mrd);
  CHECK(parse_heuristic("Gep") == Heuristic::gep);
  CHECK_THROWS_AS(parse_heuristic("abc"), ConfigError);
}

TEST_CASE("partition") {
  SUBCASE("single eligible word") {
    const auto& p = standard_puzzle();
    const std::vector<MysteryId> one = {p.require_mystery("crate")};
    const auto prof = partition(p, p.require_guess("salet"), one);
    REQUIRE(prof.cells.size() == 1);
    CHECK(prof.cells[0].second == 1);
  }
  SUBCASE("crate splits crate/trace") {
    const auto p = tiny_puzzle({"crate", "trace"});
    const std::vector<MysteryId> both = {0, 1};
    const auto prof = partition(p, 0, both);
    REQUIRE(prof.cells.size() == 2);
    CHECK(prof.cells[0].first == parse_pattern("YGGYG", 5));
    CHECK(prof.cells[1].first == parse_pattern("GGGGG", 5));
    CHECK(prof.cells[0].second == 1);
    CHECK(prof.cells[1].second == 1);
    CHECK(prof.has_solved_cell);
  }
  SUBCASE("salet against the full list") {
    const auto& p = standard_puzzle();
    const auto s = GameState::initial(p);
    const auto prof = partition(p, p.require_guess("salet"), s.eligible());
    std::uint32_t sum = 0;
    for (auto& c : prof.cells) sum += c.second;
    CHECK(sum == 2315);
    CHECK(prof.has_solved_cell == p.mysteries().find("salet").has_value());
  }
}

TEST_CASE("heuristic values on hand-computed profiles") {
  CHECK(information_gain(profile_of({1, 1, 1, 1})) == doctest::Approx(2.0));
  CHECK(information_gain(profile_of({1, 1})) == doctest::Approx(1.0));
  CHECK(information_gain(profile_of({2, 1, 1})) == doctest::Approx(1.5));

  CHECK(expected_residual_size(profile_of({1, 1, 1, 1, 1})) == doctest::Approx(1.0));
  CHECK(expected_residual_size(profile_of({7})) == doctest::Approx(7.0));
  CHECK(expected_residual_size(profile_of({2, 1, 1})) == doctest::Approx(1.5));

  CHECK(expected_pick_probability(profile_of({1, 1, 1}), true) == doctest::Approx(1.0));
  CHECK(expected_pick_probability(profile_of({9}), false) == doctest::Approx(1.0 / 9));
  CHECK(expected_pick_probability(profile_of({2, 1, 1}), false) == doctest::Approx(0.75));
}

TEST_CASE("single-pass statistics agree with the profile formulas and respect the bounds") {
  const auto& p = standard_puzzle();
  std::mt19937_64 rng(77);
  PartitionScorer scorer(p);
  for (int trial = 0; trial < 40; ++trial) {
    const auto state = random_state(p, rng);
    const auto n = static_cast<std::uint32_t>(state.eligible_count());
    for (int k = 0; k < 25; ++k) {
      const auto g = static_cast<GuessId>(rng() % p.guesses().size());
      const auto prof = partition(p, g, state.eligible());
      const auto stats = scorer.stats(g, state.eligible());
      REQUIRE(stats.cells == prof.cells.size());
      REQUIRE(stats.has_solved_cell == prof.has_solved_cell);
      const double mig = heuristic_value(Heuristic::mig, stats, n);
      const double mrd = heuristic_value(Heuristic::mrd, stats, n);
      const double gep = heuristic_value(Heuristic::gep, stats, n);
      REQUIRE(mig == doctest::Approx(information_gain(prof)).epsilon(1e-12));
      REQUIRE(mrd == doctest::Approx(expected_residual_size(prof)).epsilon(1e-12));
      REQUIRE(gep == expected_pick_probability(prof, prof.has_solved_cell));

      const bool all_single = prof.cells.size() == n;
      const bool one_cell = prof.cells.size() == 1;
      REQUIRE(mig >= -1e-12);
      REQUIRE(mig <= std::log2(n) + 1e-12);
      REQUIRE((std::abs(mig - std::log2(n)) < 1e-9) == all_single);
      REQUIRE(mrd >= 1.0 - 1e-12);
      REQUIRE(mrd <= n + 1e-12);
      REQUIRE((mrd == 1.0) == all_single);
      REQUIRE((mrd == n) == one_cell);
      REQUIRE(gep > 0.0);
      REQUIRE(gep <= 1.0);
      // The solved cell, when present, holds exactly the guess itself.
      if (prof.has_solved_cell) {
        for (auto& [pat, size] : prof.cells) {
          if (pat == p.solved_pattern()) REQUIRE(size == 1);
        }
      }
    }
  }
}

TEST_CASE("base policy step") {
  const auto& p = standard_puzzle();
  SUBCASE("forced endgame") {
    const auto s = wordle::testing::play_out(p, {"salet", "courd", "mound"}, "mound");
    CHECK(base_policy_step(p, s, {}, Heuristic::mig) == p.require_guess("mound"));
  }
  SUBCASE("two words: lowest separating id, or an eligible word") {
    // After salet/courd against mound, few words remain; narrow to two.
    const auto tiny = tiny_puzzle({"aahed", "bound", "mound", "zzzzz"}, {"bound", "mound"});
    const auto s = GameState::initial(tiny);
    CHECK(base_policy_step(tiny, s, {}, Heuristic::mig, TieBreak::prefer_eligible) == 1);
    CHECK(base_policy_step(tiny, s, {}, Heuristic::mig, TieBreak::lowest_id) == 1);
    const auto probe = tiny_puzzle({"abbey", "bound", "mound"}, {"bound", "mound"});
    CHECK(base_policy_step(probe, GameState::initial(probe), {}, Heuristic::gep, TieBreak::lowest_id) == 0);
    CHECK(base_policy_step(probe, GameState::initial(probe), {}, Heuristic::gep, TieBreak::prefer_eligible) == 1);
  }
  SUBCASE("single-stage MIG opener over the full list") {
    const auto s = GameState::initial(p);
    // Pinned regression value from the exhaustive scan of all 12,972 guesses.
    CHECK(p.guesses()[base_policy_step(p, s, {}, Heuristic::mig)] == "soare");
    const auto top = rank_guesses(p, s, {}, Heuristic::mig, 3);
    CHECK(top[0].value == doctest::Approx(5.885960).epsilon(1e-6));
  }
  SUBCASE("a guess that splits into singletons wins on its own") {
    const auto tiny = tiny_puzzle({"crate", "trace", "react", "cater", "caret"});
    const auto s = GameState::initial(tiny);
    const auto scores = score_guesses(tiny, s, {}, Heuristic::mig);
    const auto pick = base_policy_step(tiny, s, {}, Heuristic::mig);
    for (const auto& sc : scores) {
      if (sc.guess == pick) continue;
      CHECK(sc.value <= scores[pick].value + 1e-12);
    }
  }
}

TEST_CASE("two-word shortcut matches the full scan") {
  const auto& p = standard_puzzle();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_state(p, rng);
    if (s.eligible_count() < 2) continue;
    // Narrow to two candidates by following a consistent path.
    while (s.eligible_count() > 2) {
      const auto m = s.eligible()[rng() % s.eligible_count()];
      const auto g = p.guess_of(s.eligible()[rng() % s.eligible_count()]);
      if (p.matrix().at(g, m) == p.solved_pattern()) continue;
      s = filter_mysteries(p, s, g, p.matrix().at(g, m));
    }
    if (s.eligible_count() != 2) continue;
    for (Heuristic h : {Heuristic::mig, Heuristic::mrd, Heuristic::gep}) {
      for (Mode mode : {Mode::easy, Mode::hard, Mode::hard_hints}) {
        const auto scores = score_guesses(p, s, {mode}, h);
        for (TieBreak tie : {TieBreak::lowest_id, TieBreak::prefer_eligible}) {
          REQUIRE(scores[preferred_index(scores, tie)].guess == base_policy_step(p, s, {mode}, h, tie));
        }
      }
    }
  }
}

TEST_CASE("selection is invariant to positive rescaling and the top score leads the ranking") {
  const auto& p = standard_puzzle();
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_state(p, rng);
    for (Heuristic h : {Heuristic::mig, Heuristic::mrd, Heuristic::gep}) {
      auto scores = score_guesses(p, s, {}, h);
      const auto pick = scores[preferred_index(scores)].guess;
      auto scaled = scores;
      for (auto& sc : scaled) sc.value *= 2.0;
      REQUIRE(scaled[preferred_index(scaled)].guess == pick);
      const auto top = top_scores(scores, 10);
      REQUIRE(top.front().guess == pick);
      for (std::size_t i = 1; i < top.size(); ++i) REQUIRE(merit(top[i]) <= merit(top[0]) + kScoreTolerance);
      // Mixed order: the lowest-id pick still leads.
      const auto mixed = top_scores(scores, 10, TieBreak::lowest_id, TieBreak::prefer_eligible);
      REQUIRE(mixed.front().guess == pick);
      for (std::size_t i = 2; i < mixed.size(); ++i) {
        REQUIRE(merit(mixed[i]) <= merit(mixed[i - 1]));
        if (merit(mixed[i]) == merit(mixed[i - 1])) REQUIRE(mixed[i].eligible <= mixed[i - 1].eligible);
      }
    }
  }
}
