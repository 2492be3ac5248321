#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "reference.hpp"
#include "wordle/errors.hpp"
#include "wordle/lexicon.hpp"

using namespace wordle;
using wordle::testing::reference_code;
using wordle::testing::reference_feedback;

namespace {
std::string fb(std::string_view g, std::string_view m) { return to_string(compute_feedback(g, m), 5); }
}  // namespace

TEST_CASE("feedback on hand-checked pairs") {
  CHECK(fb("salet", "salet") == "GGGGG");
  // First 'e' takes the only 'e' of "abide"; the second stays gray.
  CHECK(fb("speed", "abide") == "BBYBY");
  CHECK(fb("crate", "trace") == "YGGYG");
  CHECK(fb("crane", "salet") == "BBYBY");
  // Green claims before an earlier duplicate can turn yellow.
  CHECK(fb("eerie", "crate") == "BBYBG");
  CHECK(fb("llama", "hello") == "YYBBB");
}

TEST_CASE("feedback rejects length mismatch") {
  CHECK_THROWS_AS(compute_feedback("salet", "sale"), DataError);
}

TEST_CASE("pattern encoding round-trips every code") {
  for (int length : {1, 5, 6}) {
    for (std::uint32_t code = 0; code < pattern_count(length); ++code) {
      const Pattern p{static_cast<Pattern::Code>(code)};
      const auto marks = decode_marks(p, length);
      REQUIRE(encode_marks(marks) == p);
      const auto text = to_string(p, length);
      REQUIRE(reference_code(text) == code);
      REQUIRE(parse_pattern(text, length) == p);
    }
  }
  CHECK(Pattern::all_green(5).code() == 242);
  CHECK(Pattern::all_green(6).code() == 728);
  CHECK(Pattern{2}.mark(0) == Mark::green);
}

TEST_CASE("pattern parsing") {
  CHECK(parse_pattern("bbygg", 5) == parse_pattern("BBYGG", 5));
  CHECK(parse_pattern("242", 5) == Pattern::all_green(5));
  CHECK_THROWS_AS(parse_pattern("BBXBB", 5), DataError);
  CHECK_THROWS_AS(parse_pattern("BBBB", 5), DataError);
  CHECK_THROWS_AS(parse_pattern("243", 5), DataError);
}

TEST_CASE("load_word_list") {
  SUBCASE("two words") {
    std::istringstream in("salet\ncrate\n");
    const auto list = load_word_list(in, 5);
    REQUIRE(list.size() == 2);
    CHECK(list.find("salet") == 0u);
    CHECK(list.find("crate") == 1u);
  }
  SUBCASE("normalizes case, strips CR, de-duplicates in order") {
    std::istringstream in("Crate\r\nsalet\n\ncrate\n");
    const auto list = load_word_list(in, 5);
    REQUIRE(list.size() == 2);
    CHECK(list[0] == "crate");
    CHECK(list[1] == "salet");
  }
  SUBCASE("wrong length names the line") {
    std::istringstream in("salet\ncrat\n");
    CHECK_THROWS_WITH_AS(load_word_list(in, 5), doctest::Contains("line 2"), DataError);
  }
  SUBCASE("non-letter names the line") {
    std::istringstream in("salet\ncr4te\n");
    CHECK_THROWS_WITH_AS(load_word_list(in, 5), doctest::Contains("line 2"), DataError);
  }
  SUBCASE("empty") {
    std::istringstream in("\n\n");
    CHECK_THROWS_AS(load_word_list(in, 5), DataError);
  }
}

TEST_CASE("shipped lists have the published sizes") {
  const auto& p = wordle::testing::standard_puzzle();
  CHECK(p.mysteries().size() == 2315);
  CHECK(p.guesses().size() == 12972);
  CHECK(p.matrix().guess_count() == 12972);
  CHECK(p.matrix().mystery_count() == 2315);
  CHECK(p.matrix().narrow());
  const auto& six = wordle::testing::six_letter_puzzle();
  CHECK(six.mysteries().size() == 2315);
  CHECK(six.guesses().size() == 12972);
  CHECK_FALSE(six.matrix().narrow());
}

TEST_CASE("self-crossed matrix has an all-green diagonal") {
  const auto p = wordle::testing::tiny_puzzle({"salet", "crate"});
  CHECK(p.matrix().at(0, 0) == Pattern::all_green(5));
  CHECK(p.matrix().at(1, 1) == Pattern::all_green(5));
  CHECK(p.matrix().at(0, 1) != Pattern::all_green(5));
}

TEST_CASE("matrix entries match fresh recomputation on a random sample") {
  const auto& p = wordle::testing::standard_puzzle();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = static_cast<GuessId>(rng() % p.guesses().size());
    for (int j = 0; j < 50; ++j) {
      const auto m = static_cast<MysteryId>(rng() % p.mysteries().size());
      REQUIRE(p.matrix().at(g, m) == compute_feedback(p.guesses()[g], p.mysteries()[m]));
    }
  }
}

TEST_CASE("all-green iff identical, and marks never exceed mystery letter counts") {
  const auto& p = wordle::testing::standard_puzzle();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const auto g = static_cast<GuessId>(rng() % p.guesses().size());
    const auto m = static_cast<MysteryId>(rng() % p.mysteries().size());
    const auto& gw = p.guesses()[g];
    const auto& mw = p.mysteries()[m];
    const Pattern f = p.matrix().at(g, m);
    REQUIRE((f == p.solved_pattern()) == (gw == mw));
    REQUIRE(to_string(f, 5) == reference_feedback(gw, mw));
    LetterCounts hinted{};
    const auto marks = decode_marks(f, 5);
    for (int k = 0; k < 5; ++k) {
      if (marks[static_cast<std::size_t>(k)] != Mark::gray) ++hinted[static_cast<std::size_t>(gw[static_cast<std::size_t>(k)] - 'a')];
    }
    const auto have = count_letters(mw);
    for (int c = 0; c < 26; ++c) REQUIRE(hinted[static_cast<std::size_t>(c)] <= have[static_cast<std::size_t>(c)]);
  }
  for (MysteryId m = 0; m < p.mysteries().size(); ++m) {
    REQUIRE(p.matrix().at(p.guess_of(m), m) == p.solved_pattern());
  }
}

TEST_CASE("matrix budget") {
  const WordList words({"salet", "crate"}, 5);
  CHECK_THROWS_AS(FeedbackMatrix(words, words, 3), InstanceTooLarge);
  CHECK(FeedbackMatrix::required_bytes(12972, 2315, 5) == 12972u * 2315u);
  CHECK(FeedbackMatrix::required_bytes(12972, 2315, 6) == 2u * 12972u * 2315u);
}

TEST_CASE("puzzle subset slices the parent matrix") {
  const auto& p = wordle::testing::standard_puzzle();
  const std::vector<GuessId> guesses = {p.require_guess("salet"), p.require_guess("crate"), p.require_guess("trace")};
  const std::vector<MysteryId> mysteries = {p.require_mystery("crate"), p.require_mystery("trace")};
  const Puzzle sub = p.subset(guesses, mysteries);
  CHECK(sub.guesses().size() == 3);
  for (GuessId g = 0; g < 3; ++g) {
    for (MysteryId m = 0; m < 2; ++m) {
      CHECK(sub.matrix().at(g, m) == compute_feedback(sub.guesses()[g], sub.mysteries()[m]));
    }
  }
  CHECK(sub.mystery_of(0) == std::nullopt);
  CHECK(sub.guess_of(1) == 2);
}

TEST_CASE("unknown words come with a nearest-word hint") {
  const auto& p = wordle::testing::standard_puzzle();
  CHECK_THROWS_WITH_AS(p.require_guess("salez"), doctest::Contains("nearest"), DataError);
  CHECK(p.require_guess("SALET") == *p.guesses().find("salet"));
}

TEST_CASE("mysteries must be guessable") {
  CHECK_THROWS_AS(wordle::testing::tiny_puzzle({"salet"}, {"crate"}), DataError);
}
