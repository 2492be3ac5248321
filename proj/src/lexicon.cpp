#include "wordle/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <thread>

#include "wordle/errors.hpp"

namespace wordle {

namespace {

std::uint32_t pow3(int n) {
  std::uint32_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

void check_length(int length) {
  if (length < 1 || length > kMaxWordLength) {
    throw ConfigError("word length must be in [1, " + std::to_string(kMaxWordLength) +
                      "], got " + std::to_string(length));
  }
}

std::string nearest_word(const WordList& list, std::string_view word) {
  const std::string* best = nullptr;
  std::size_t best_distance = 0;
  for (const auto& candidate : list.words()) {
    std::size_t distance = 0;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      distance += i >= word.size() || candidate[i] != word[i];
    }
    if (best == nullptr || distance < best_distance) {
      best = &candidate;
      best_distance = distance;
    }
  }
  return best ? *best : std::string{};
}

}  // namespace

Mark Pattern::mark(int position) const {
  Code c = code_;
  for (int i = 0; i < position; ++i) c /= 3;
  return static_cast<Mark>(c % 3);
}

Pattern Pattern::all_green(int length) { return Pattern{static_cast<Code>(pow3(length) - 1)}; }

std::uint32_t pattern_count(int length) { return pow3(length); }

Pattern encode_marks(std::span<const Mark> marks) {
  Pattern::Code code = 0;
  for (std::size_t i = marks.size(); i-- > 0;) {
    code = static_cast<Pattern::Code>(code * 3 + static_cast<Pattern::Code>(marks[i]));
  }
  return Pattern{code};
}

std::vector<Mark> decode_marks(Pattern pattern, int length) {
  std::vector<Mark> marks(static_cast<std::size_t>(length));
  Pattern::Code c = pattern.code();
  for (auto& m : marks) {
    m = static_cast<Mark>(c % 3);
    c /= 3;
  }
  return marks;
}

std::string to_string(Pattern pattern, int length) {
  static constexpr char kLetters[] = {'B', 'Y', 'G'};
  std::string out;
  out.reserve(static_cast<std::size_t>(length));
  for (Mark m : decode_marks(pattern, length)) out.push_back(kLetters[static_cast<int>(m)]);
  return out;
}

Pattern parse_pattern(std::string_view text, int length) {
  check_length(length);
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::uint32_t code = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), code);
    if (ec != std::errc{} || ptr != text.data() + text.size() || code >= pattern_count(length)) {
      throw DataError("pattern code out of range: " + std::string(text));
    }
    return Pattern{static_cast<Pattern::Code>(code)};
  }
  if (text.size() != static_cast<std::size_t>(length)) {
    throw DataError("pattern '" + std::string(text) + "' must have " + std::to_string(length) +
                    " characters");
  }
  std::vector<Mark> marks;
  marks.reserve(text.size());
  for (char c : text) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'B': marks.push_back(Mark::gray); break;
      case 'Y': marks.push_back(Mark::yellow); break;
      case 'G': marks.push_back(Mark::green); break;
      default:
        throw DataError("pattern '" + std::string(text) + "' may only contain B, Y and G");
    }
  }
  return encode_marks(marks);
}

WordList::WordList(std::vector<std::string> words, int length) : length_(length) {
  check_length(length);
  words_.reserve(words.size());
  for (auto& w : words) {
    if (w.size() != static_cast<std::size_t>(length) ||
        !std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
      throw DataError("'" + w + "' is not a lowercase word of length " + std::to_string(length));
    }
    if (index_.contains(w)) continue;
    index_.emplace(w, static_cast<std::uint32_t>(words_.size()));
    words_.push_back(std::move(w));
  }
}

std::optional<std::uint32_t> WordList::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordList load_word_list(std::istream& source, int expected_length) {
  check_length(expected_length);
  std::vector<std::string> words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    for (char& c : word) {
      if (!std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80) {
        throw DataError("line " + std::to_string(line_no) + ": non-letter character in '" + word + "'");
      }
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (word.size() != static_cast<std::size_t>(expected_length)) {
      throw DataError("line " + std::to_string(line_no) + ": '" + word + "' has length " +
                      std::to_string(word.size()) + ", expected " + std::to_string(expected_length));
    }
    words.push_back(std::move(word));
  }
  if (words.empty()) throw DataError("word list is empty");
  return WordList(std::move(words), expected_length);
}

WordList load_word_list_file(const std::filesystem::path& path, int expected_length) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word list " + path.string());
  try {
    return load_word_list(in, expected_length);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Pattern compute_feedback(std::string_view guess, std::string_view mystery) {
  if (guess.size() != mystery.size()) {
    throw DataError("feedback needs equal lengths: '" + std::string(guess) + "' vs '" +
                    std::string(mystery) + "'");
  }
  const std::size_t n = guess.size();
  std::array<std::uint8_t, 26> remaining{};
  std::array<Mark, kMaxWordLength> marks{};
  for (std::size_t i = 0; i < n; ++i) {
    if (guess[i] == mystery[i]) {
      marks[i] = Mark::green;
    } else {
      ++remaining[static_cast<std::size_t>(mystery[i] - 'a')];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (marks[i] == Mark::green) continue;
    auto& left = remaining[static_cast<std::size_t>(guess[i] - 'a')];
    if (left > 0) {
      marks[i] = Mark::yellow;
      --left;
    }
  }
  return encode_marks(std::span<const Mark>(marks.data(), n));
}

std::size_t FeedbackMatrix::required_bytes(std::size_t guesses, std::size_t mysteries, int length) {
  return guesses * mysteries * (length <= 5 ? 1 : 2);
}

FeedbackMatrix::FeedbackMatrix(const WordList& guesses, const WordList& mysteries,
                               std::size_t budget_bytes, unsigned threads)
    : guess_count_(guesses.size()), mystery_count_(mysteries.size()), length_(guesses.word_length()) {
  if (guesses.word_length() != mysteries.word_length()) {
    throw DataError("guess and mystery lists have different word lengths");
  }
  const std::size_t bytes = required_bytes(guess_count_, mystery_count_, length_);
  if (bytes > budget_bytes) {
    throw InstanceTooLarge("feedback matrix needs " + std::to_string(bytes) + " bytes, budget is " +
                           std::to_string(budget_bytes));
  }
  narrow_ = length_ <= 5;
  if (narrow_) {
    narrow_cells_.resize(guess_count_ * mystery_count_);
  } else {
    wide_cells_.resize(guess_count_ * mystery_count_);
  }

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      for (std::size_t m = 0; m < mystery_count_; ++m) {
        const auto code = compute_feedback(guesses[g], mysteries[m]).code();
        const std::size_t i = g * mystery_count_ + m;
        if (narrow_) {
          narrow_cells_[i] = static_cast<std::uint8_t>(code);
        } else {
          wide_cells_[i] = code;
        }
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, guess_count_ / 256)));
  if (threads <= 1) {
    fill(0, guess_count_);
    return;
  }
  std::vector<std::jthread> workers;
  const std::size_t chunk = (guess_count_ + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(guess_count_, begin + chunk);
    if (begin < end) workers.emplace_back(fill, begin, end);
  }
}

FeedbackMatrix FeedbackMatrix::slice(std::span<const GuessId> guesses,
                                     std::span<const MysteryId> mysteries) const {
  FeedbackMatrix out;
  out.guess_count_ = guesses.size();
  out.mystery_count_ = mysteries.size();
  out.length_ = length_;
  out.narrow_ = narrow_;
  if (narrow_) {
    out.narrow_cells_.resize(out.guess_count_ * out.mystery_count_);
  } else {
    out.wide_cells_.resize(out.guess_count_ * out.mystery_count_);
  }
  for (std::size_t g = 0; g < guesses.size(); ++g) {
    for (std::size_t m = 0; m < mysteries.size(); ++m) {
      const std::size_t i = g * out.mystery_count_ + m;
      const auto code = at(guesses[g], mysteries[m]).code();
      if (narrow_) {
        out.narrow_cells_[i] = static_cast<std::uint8_t>(code);
      } else {
        out.wide_cells_[i] = code;
      }
    }
  }
  return out;
}

LetterCounts count_letters(std::string_view word) {
  LetterCounts counts{};
  for (char c : word) ++counts[static_cast<std::size_t>(c - 'a')];
  return counts;
}

Puzzle::Puzzle(WordList guesses, WordList mysteries, std::size_t budget_bytes)
    : guesses_(std::move(guesses)), mysteries_(std::move(mysteries)) {
  if (mysteries_.size() > 0xFFFF) throw InstanceTooLarge("at most 65535 mystery words are supported");
  index();
  matrix_ = FeedbackMatrix(guesses_, mysteries_, budget_bytes);
}

Puzzle::Puzzle(WordList guesses, WordList mysteries, FeedbackMatrix matrix)
    : guesses_(std::move(guesses)), mysteries_(std::move(mysteries)), matrix_(std::move(matrix)) {
  index();
}

void Puzzle::index() {
  if (guesses_.word_length() != mysteries_.word_length()) {
    throw DataError("guess and mystery lists have different word lengths");
  }
  if (guesses_.empty() || mysteries_.empty()) throw DataError("puzzle needs nonempty word lists");
  pattern_count_ = wordle::pattern_count(word_length());
  solved_ = Pattern::all_green(word_length());
  guess_to_mystery_.assign(guesses_.size(), -1);
  mystery_to_guess_.resize(mysteries_.size());
  for (std::size_t m = 0; m < mysteries_.size(); ++m) {
    auto g = guesses_.find(mysteries_[m]);
    if (!g) throw DataError("mystery word '" + mysteries_[m] + "' is missing from the guess list");
    mystery_to_guess_[m] = *g;
    guess_to_mystery_[*g] = static_cast<std::int32_t>(m);
  }
  letter_counts_.resize(guesses_.size());
  for (std::size_t g = 0; g < guesses_.size(); ++g) letter_counts_[g] = count_letters(guesses_[g]);
}

Puzzle Puzzle::load(const std::filesystem::path& guess_file, const std::filesystem::path& mystery_file,
                    int length) {
  return Puzzle(load_word_list_file(guess_file, length), load_word_list_file(mystery_file, length));
}

Puzzle Puzzle::subset(std::span<const GuessId> guesses, std::span<const MysteryId> mysteries) const {
  std::vector<std::string> g_words;
  std::vector<std::string> m_words;
  for (GuessId g : guesses) g_words.push_back(guesses_[g]);
  for (MysteryId m : mysteries) m_words.push_back(mysteries_[m]);
  WordList g_list(std::move(g_words), word_length());
  WordList m_list(std::move(m_words), word_length());
  if (g_list.size() != guesses.size() || m_list.size() != mysteries.size()) {
    throw DataError("subset ids must be distinct");
  }
  return Puzzle(std::move(g_list), std::move(m_list), matrix_.slice(guesses, mysteries));
}

std::optional<MysteryId> Puzzle::mystery_of(GuessId guess) const {
  const auto m = guess_to_mystery_[guess];
  if (m < 0) return std::nullopt;
  return static_cast<MysteryId>(m);
}

GuessId Puzzle::require_guess(std::string_view word) const {
  std::string lower(word);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (auto id = guesses_.find(lower)) return *id;
  throw DataError("'" + lower + "' is not in the guess list (nearest: " + nearest_word(guesses_, lower) + ")");
}

MysteryId Puzzle::require_mystery(std::string_view word) const {
  std::string lower(word);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (auto id = mysteries_.find(lower)) return static_cast<MysteryId>(*id);
  throw DataError("'" + lower + "' is not in the mystery list (nearest: " + nearest_word(mysteries_, lower) + ")");
}

}  // namespace wordle
