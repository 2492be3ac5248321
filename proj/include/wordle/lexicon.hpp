#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wordle {

using GuessId = std::uint32_t;
using MysteryId = std::uint16_t;

inline constexpr int kDefaultWordLength = 5;
// 3^8 still fits a 16-bit pattern code.
inline constexpr int kMaxWordLength = 8;

enum class Mark : std::uint8_t { gray = 0, yellow = 1, green = 2 };

// Feedback for one guess against one mystery, stored as L base-3 digits with
// position 0 in the least significant trit.
class Pattern {
 public:
  using Code = std::uint16_t;

  constexpr Pattern() = default;
  constexpr explicit Pattern(Code code) : code_(code) {}

  constexpr Code code() const { return code_; }
  Mark mark(int position) const;

  static Pattern all_green(int length);

  friend constexpr bool operator==(Pattern, Pattern) = default;
  friend constexpr auto operator<=>(Pattern, Pattern) = default;

 private:
  Code code_ = 0;
};

// Number of distinct patterns for words of the given length (3^length).
std::uint32_t pattern_count(int length);

Pattern encode_marks(std::span<const Mark> marks);
std::vector<Mark> decode_marks(Pattern pattern, int length);

// "B" gray, "Y" yellow, "G" green; position 0 leftmost.
std::string to_string(Pattern pattern, int length);

// Accepts the B/Y/G form (case-insensitive) or a decimal code in [0, 3^length).
Pattern parse_pattern(std::string_view text, int length);

// Dense, de-duplicated list of lowercase words of one length. Ids are the
// positions in the list.
class WordList {
 public:
  WordList() = default;
  WordList(std::vector<std::string> words, int length);

  int word_length() const { return length_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& operator[](std::size_t id) const { return words_[id]; }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<std::uint32_t> find(std::string_view word) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> index_;
  int length_ = kDefaultWordLength;
};

// One word per line. Surrounding whitespace is stripped and letters are
// lowercased; blank lines are skipped. Throws DataError naming the line on a
// wrong length or a non-letter character, and on an empty result.
WordList load_word_list(std::istream& source, int expected_length);
WordList load_word_list_file(const std::filesystem::path& path, int expected_length);

// Standard two-pass rule: greens claim letters first, then yellows are
// assigned left to right against the mystery's remaining letter counts.
Pattern compute_feedback(std::string_view guess, std::string_view mystery);

// Precomputed guess x mystery feedback table, row-major by guess. Entries use
// one byte for words of length <= 5 and two bytes otherwise.
class FeedbackMatrix {
 public:
  static constexpr std::size_t kDefaultBudgetBytes = std::size_t{1} << 30;

  FeedbackMatrix() = default;
  FeedbackMatrix(const WordList& guesses, const WordList& mysteries,
                 std::size_t budget_bytes = kDefaultBudgetBytes, unsigned threads = 0);

  std::size_t guess_count() const { return guess_count_; }
  std::size_t mystery_count() const { return mystery_count_; }
  int word_length() const { return length_; }
  bool narrow() const { return narrow_; }

  Pattern at(GuessId guess, MysteryId mystery) const {
    const std::size_t i = std::size_t{guess} * mystery_count_ + mystery;
    return Pattern{narrow_ ? Pattern::Code{narrow_cells_[i]} : wide_cells_[i]};
  }

  std::span<const std::uint8_t> narrow_row(GuessId guess) const {
    return {narrow_cells_.data() + std::size_t{guess} * mystery_count_, mystery_count_};
  }
  std::span<const std::uint16_t> wide_row(GuessId guess) const {
    return {wide_cells_.data() + std::size_t{guess} * mystery_count_, mystery_count_};
  }

  // Calls f with the row of `guess` as a span of uint8_t or uint16_t codes.
  template <class F>
  decltype(auto) visit_row(GuessId guess, F&& f) const {
    if (narrow_) return f(narrow_row(guess));
    return f(wide_row(guess));
  }

  // Sub-table restricted to the given guess rows and mystery columns.
  FeedbackMatrix slice(std::span<const GuessId> guesses, std::span<const MysteryId> mysteries) const;

  static std::size_t required_bytes(std::size_t guesses, std::size_t mysteries, int length);

 private:
  std::vector<std::uint8_t> narrow_cells_;
  std::vector<std::uint16_t> wide_cells_;
  std::size_t guess_count_ = 0;
  std::size_t mystery_count_ = 0;
  int length_ = kDefaultWordLength;
  bool narrow_ = true;
};

using LetterCounts = std::array<std::uint8_t, 26>;

LetterCounts count_letters(std::string_view word);

// Guess and mystery lists plus their feedback matrix. Every mystery word must
// also be a guess word. Immutable after construction.
class Puzzle {
 public:
  Puzzle(WordList guesses, WordList mysteries,
         std::size_t budget_bytes = FeedbackMatrix::kDefaultBudgetBytes);

  static Puzzle load(const std::filesystem::path& guess_file,
                     const std::filesystem::path& mystery_file, int length);

  // Puzzle over a subset of this one's words; the matrix is sliced, not rebuilt.
  Puzzle subset(std::span<const GuessId> guesses, std::span<const MysteryId> mysteries) const;

  const WordList& guesses() const { return guesses_; }
  const WordList& mysteries() const { return mysteries_; }
  const FeedbackMatrix& matrix() const { return matrix_; }
  int word_length() const { return guesses_.word_length(); }
  std::uint32_t pattern_count() const { return pattern_count_; }
  Pattern solved_pattern() const { return solved_; }

  GuessId guess_of(MysteryId mystery) const { return mystery_to_guess_[mystery]; }
  std::optional<MysteryId> mystery_of(GuessId guess) const;
  const LetterCounts& letter_counts(GuessId guess) const { return letter_counts_[guess]; }

  GuessId require_guess(std::string_view word) const;
  MysteryId require_mystery(std::string_view word) const;

 private:
  Puzzle(WordList guesses, WordList mysteries, FeedbackMatrix matrix);
  void index();

  WordList guesses_;
  WordList mysteries_;
  FeedbackMatrix matrix_;
  std::vector<GuessId> mystery_to_guess_;
  std::vector<std::int32_t> guess_to_mystery_;
  std::vector<LetterCounts> letter_counts_;
  std::uint32_t pattern_count_ = 0;
  Pattern solved_;
};

}  // namespace wordle
