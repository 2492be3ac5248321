#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "wordle/errors.hpp"
#include "wordle/game.hpp"

using namespace wordle;
using wordle::testing::standard_puzzle;
using wordle::testing::tiny_puzzle;

TEST_CASE("modes parse case-insensitively") {
  CHECK(parse_mode("Hard") == Mode::hard);
  CHECK(parse_mode("easy") == Mode::easy);
  CHECK(parse_mode("hard-hints") == Mode::hard_hints);
  CHECK(to_string(Mode::hard_hints) == "hard-hints");
  CHECK_THROWS_AS(parse_mode("ultra"), ConfigError);
}

TEST_CASE("filter_mysteries") {
  SUBCASE("identity guess solves") {
    const auto p = tiny_puzzle({"salet"});
    auto s = filter_mysteries(p, GameState::initial(p), 0, p.solved_pattern());
    CHECK(s.solved());
    CHECK(s.eligible_count() == 1);
    CHECK(s.history().size() == 1);
  }
  SUBCASE("crate against trace isolates trace") {
    const auto p = tiny_puzzle({"crate", "trace"});
    const auto s = filter_mysteries(p, GameState::initial(p), 0, parse_pattern("YGGYG", 5));
    REQUIRE(s.eligible_count() == 1);
    CHECK(p.mysteries()[s.eligible()[0]] == "trace");
    CHECK_FALSE(s.solved());
  }
  SUBCASE("inconsistent feedback") {
    const auto p = tiny_puzzle({"crate", "trace"});
    CHECK_THROWS_AS(filter_mysteries(p, GameState::initial(p), 0, parse_pattern("BBBBB", 5)), InconsistentFeedback);
  }
}

TEST_CASE("salet partitions the full mystery list") {
  const auto& p = standard_puzzle();
  const GuessId salet = p.require_guess("salet");
  const auto start = GameState::initial(p);
  std::map<Pattern::Code, std::size_t> brute;
  for (MysteryId m = 0; m < p.mysteries().size(); ++m) ++brute[p.matrix().at(salet, m).code()];
  std::size_t total = 0;
  for (auto [code, count] : brute) {
    const auto s = filter_mysteries(p, start, salet, Pattern{code});
    REQUIRE(s.eligible_count() == count);
    total += s.eligible_count();
  }
  CHECK(total == 2315);
}

TEST_CASE("allowable guesses") {
  const auto& p = standard_puzzle();
  const auto start = GameState::initial(p);
  CHECK(allowable_guesses(p, start, {Mode::easy}).size() == 12972);
  CHECK(allowable_guesses(p, start, {Mode::hard}).size() == 12972);
  CHECK(allowable_guesses(p, start, {Mode::hard_hints}).size() == 12972);

  // A green 'e' in the last position restricts hard mode to words ending in 'e'.
  const GuessId carse = p.require_guess("carse");
  const auto s = filter_mysteries(p, start, carse, p.matrix().at(carse, p.require_mystery("shine")));
  REQUIRE(to_string(s.history().back().feedback, 5) == "BBBYG");
  const auto hard = allowable_guesses(p, s, {Mode::hard});
  const auto hints = allowable_guesses(p, s, {Mode::hard_hints});
  CHECK(!hard.empty());
  CHECK(hard.size() < hints.size());
  CHECK(hints.size() < 12972);
  CHECK(std::includes(hints.begin(), hints.end(), hard.begin(), hard.end()));
  for (GuessId g : hints) {
    const auto& w = p.guesses()[g];
    REQUIRE(w[4] == 'e');
    REQUIRE(w.find('s') != std::string::npos);
  }
  for (GuessId g : hard) {
    // Grays stay out and the yellow 's' moves.
    const auto& w = p.guesses()[g];
    REQUIRE(w.find_first_of("car") == std::string::npos);
    REQUIRE(w[3] != 's');
  }
  CHECK(allowable_guesses(p, s, {Mode::easy}).size() == 12972);
  for (Mode mode : {Mode::hard, Mode::hard_hints}) {
    CHECK_FALSE(is_allowable(p, s, mode, p.require_guess("salet")));
    CHECK(is_allowable(p, s, mode, p.require_guess("shine")));
    CHECK_FALSE(violations(p, s, mode, p.require_guess("salet")).empty());
    CHECK(violations(p, s, mode, p.require_guess("shine")).empty());
  }
  // Reusing the gray 'c' is fine under the hint rule only.
  const GuessId chose = p.require_guess("chose");
  CHECK(is_allowable(p, s, Mode::hard_hints, chose));
  CHECK_FALSE(is_allowable(p, s, Mode::hard, chose));
  CHECK(violations(p, s, Mode::easy, chose).empty());
}

TEST_CASE("hard-mode multiplicity counts repeated hints") {
  const auto p = tiny_puzzle({"geese", "eerie", "crepe", "beret"});
  const GuessId eerie = *p.guesses().find("eerie");
  const MysteryId geese = static_cast<MysteryId>(*p.mysteries().find("geese"));
  const auto s = filter_mysteries(p, GameState::initial(p), eerie, p.matrix().at(eerie, geese));
  // Three e's are hinted, so a guess needs at least three.
  CHECK(s.constraints().min_counts[static_cast<std::size_t>('e' - 'a')] == 3);
  for (Mode mode : {Mode::hard, Mode::hard_hints}) {
    CHECK(is_allowable(p, s, mode, *p.guesses().find("geese")));
    CHECK_FALSE(is_allowable(p, s, mode, *p.guesses().find("crepe")));
  }
}

TEST_CASE("random histories keep the true mystery, shrink monotonically, and keep eligibles allowable") {
  const auto& p = standard_puzzle();
  std::mt19937_64 rng(2024);
  for (int game = 0; game < 60; ++game) {
    const auto mystery = static_cast<MysteryId>(rng() % p.mysteries().size());
    const Mode mode = static_cast<Mode>(game % 3);
    auto state = GameState::initial(p);
    for (int turn = 0; turn < 4 && !state.solved(); ++turn) {
      const auto allowed = allowable_guesses(p, state, {mode});
      for (MysteryId m : state.eligible()) REQUIRE(is_allowable(p, state, mode, p.guess_of(m)));
      const GuessId g = allowed[rng() % allowed.size()];
      const auto next = filter_mysteries(p, state, g, p.matrix().at(g, mystery));
      REQUIRE(std::binary_search(next.eligible().begin(), next.eligible().end(), mystery));
      REQUIRE(std::includes(state.eligible().begin(), state.eligible().end(), next.eligible().begin(),
                            next.eligible().end()));
      // Eligible is exactly the consistent subset of the original list.
      std::size_t consistent = 0;
      for (MysteryId m = 0; m < p.mysteries().size(); ++m) {
        bool ok = true;
        for (const auto& t : next.history()) ok = ok && p.matrix().at(t.guess, m) == t.feedback;
        consistent += ok;
      }
      REQUIRE(consistent == next.eligible_count());
      state = next;
    }
  }
}

TEST_CASE("play_episode") {
  const auto& p = standard_puzzle();
  const GuessId salet = p.require_guess("salet");

  SUBCASE("first-guess win") {
    const GuessId crate = p.require_guess("crate");
    const auto e = play_episode(p, p.require_mystery("crate"), [&](const GameState&) { return crate; }, {});
    CHECK(e.guess_count == 1);
    CHECK(e.solved_within_limit);
    CHECK(format_episode(p, e) == "crate\ncrate GGGGG\n");
  }
  SUBCASE("disallowed hard-mode guess is a protocol error") {
    const MysteryId shine = p.require_mystery("shine");
    const GuessId carse = p.require_guess("carse");
    auto policy = [&](const GameState& s) { return s.history().empty() ? carse : salet; };
    CHECK_THROWS_AS(play_episode(p, shine, policy, {Mode::hard}), ProtocolError);
  }
  SUBCASE("a policy that never progresses diverges") {
    const GuessId fuzzy = p.require_guess("fuzzy");
    const MysteryId crate = p.require_mystery("crate");
    CHECK_THROWS_AS(play_episode(p, crate, [&](const GameState&) { return fuzzy; }, {}), DivergenceError);
  }
  SUBCASE("long games keep counting past the limit") {
    const auto tiny = tiny_puzzle({"aaaaa", "bbbbb", "ccccc", "ddddd", "eeeee", "fffff", "ggggg", "hhhhh"});
    const MysteryId last = 7;
    auto policy = [](const GameState& s) { return static_cast<GuessId>(s.history().size()); };
    const auto e = play_episode(tiny, last, policy, {Mode::easy, 6});
    CHECK(e.guess_count == 8);
    CHECK_FALSE(e.solved_within_limit);
  }
}

TEST_CASE("replay equals incremental filtering") {
  const auto& p = standard_puzzle();
  const auto s = wordle::testing::play_out(p, {"salet", "courd"}, "mound");
  CHECK(replay(p, s.history()) == s);
  CHECK(s.key(Mode::easy) != s.key(Mode::hard));
  CHECK(s.key(Mode::hard) != s.key(Mode::hard_hints));
  // The consistent rule ignores turn order.
  const auto swapped = wordle::testing::play_out(p, {"courd", "salet"}, "mound");
  CHECK(swapped.key(Mode::hard) == s.key(Mode::hard));
}
