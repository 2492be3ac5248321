#pragma once

// Turn-by-turn advice for a game played elsewhere. The CLI and the HTTP
// service both go through this, so they always agree.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "wordle/errors.hpp"
#include "wordle/game.hpp"
#include "wordle/lexicon.hpp"
#include "wordle/rollout.hpp"

namespace wordle {

struct AssistantConfig {
  Mode mode = Mode::easy;
  int length = 5;
  PolicySpec policy = PolicySpec{Heuristic::mig, true};
  std::string opener = "salet";
};

// Reads mode, length, policy, shortlist and opener from a JSON object; absent
// fields keep their defaults. Throws FieldError naming the bad field.
AssistantConfig parse_assistant_config(const nlohmann::json& body);
nlohmann::json to_json(const AssistantConfig& config);

class FieldError : public ConfigError {
 public:
  FieldError(std::string field, const std::string& message) : ConfigError(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Suggestion {
  std::string word;
  // Single-stage score of the base heuristic (bits for mig, expected
  // remaining words for mrd, probability for gep).
  double score = 0.0;
  // Mean further guesses after this one, from the rollout; absent otherwise.
  std::optional<double> q_mean;
  // The word is still a possible answer.
  bool eligible = false;
  std::uint32_t cells = 0;
};

struct Advice {
  std::size_t eligible_count = 0;
  bool solved = false;
  std::size_t guesses_used = 0;
  // Up to kEligiblePreview remaining answers in list order.
  std::vector<std::string> eligible_preview;
  // Best first; the first entry is the pick. Empty once solved.
  std::vector<Suggestion> suggestions;
  std::optional<std::string> pick;
};

inline constexpr std::size_t kEligiblePreview = 20;

nlohmann::json to_json(const Advice& advice, const AssistantConfig& config);

// One puzzle and its shared policy cache per word length.
class PuzzleRegistry {
 public:
  // Loads the shipped lists on first use.
  PuzzleRegistry() = default;
  // Uses these puzzles for their lengths instead of the shipped ones.
  void install(std::shared_ptr<const Puzzle> puzzle);

  const Puzzle& puzzle(int length);
  PolicyLibrary& library(int length);

 private:
  struct Slot {
    std::shared_ptr<const Puzzle> puzzle;
    std::unique_ptr<PolicyLibrary> library;
  };
  Slot& slot(int length);

  std::mutex mutex_;
  std::map<int, Slot> slots_;
};

// Resolves a word, with a hint naming the closest guess words if unknown.
GuessId resolve_guess(const Puzzle& puzzle, std::string_view word);

// Applies one observed turn. Throws DataError for an unknown word or bad
// pattern, GuessNotAllowed when the mode forbids the guess and
// InconsistentFeedback when no answer would show that pattern.
GameState apply_turn(const Puzzle& puzzle, Mode mode, const GameState& state, std::string_view guess,
                     std::string_view pattern);

// Folds apply_turn over a transcript of (guess, pattern) pairs.
GameState replay_turns(const Puzzle& puzzle, Mode mode,
                       const std::vector<std::pair<std::string, std::string>>& turns);

// Suggestions for the next guess. Before the first guess this is the
// configured opener with its single-stage score.
Advice advise(const Puzzle& puzzle, PolicyLibrary& library, const AssistantConfig& config, const GameState& state);

}  // namespace wordle
