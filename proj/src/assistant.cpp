#include "wordle/assistant.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "wordle/data.hpp"
#include "wordle/errors.hpp"
#include "wordle/heuristics.hpp"

namespace wordle {

AssistantConfig parse_assistant_config(const nlohmann::json& body) {
  AssistantConfig config;
  if (body.is_null()) return config;
  if (!body.is_object()) throw FieldError("body", "expected a JSON object");
  auto text = [&](const char* field) -> std::optional<std::string> {
    if (!body.contains(field) || body[field].is_null()) return std::nullopt;
    if (!body[field].is_string()) throw FieldError(field, std::string(field) + " must be a string");
    return body[field].get<std::string>();
  };
  auto integer = [&](const char* field) -> std::optional<long long> {
    if (!body.contains(field) || body[field].is_null()) return std::nullopt;
    if (!body[field].is_number_integer()) throw FieldError(field, std::string(field) + " must be an integer");
    return body[field].get<long long>();
  };
  try {
    if (auto v = text("mode")) config.mode = parse_mode(*v);
  } catch (const ConfigError& e) {
    throw FieldError("mode", e.what());
  }
  if (auto v = integer("length")) {
    if (*v != 5 && *v != 6) throw FieldError("length", "length must be 5 or 6");
    config.length = static_cast<int>(*v);
  }
  try {
    if (auto v = text("policy")) config.policy = parse_policy(*v);
  } catch (const ConfigError& e) {
    throw FieldError("policy", e.what());
  }
  if (auto v = integer("shortlist")) {
    if (*v < 1 || *v > 1000) throw FieldError("shortlist", "shortlist must be between 1 and 1000");
    config.policy.shortlist_size = static_cast<std::size_t>(*v);
  }
  try {
    if (auto v = text("tie_break")) config.policy.tie_break = parse_tie_break(*v);
  } catch (const ConfigError& e) {
    throw FieldError("tie_break", e.what());
  }
  if (auto v = text("opener")) {
    config.opener = *v;
    std::transform(config.opener.begin(), config.opener.end(), config.opener.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  if (!config.opener.empty() && config.opener.size() != static_cast<std::size_t>(config.length)) {
    // The default opener only suits 5 letters; longer words open on the heuristic.
    if (!body.contains("opener")) {
      config.opener.clear();
    } else {
      throw FieldError("opener", "opener must have " + std::to_string(config.length) + " letters");
    }
  }
  return config;
}

nlohmann::json to_json(const AssistantConfig& config) {
  return {{"mode", to_string(config.mode)},
          {"length", config.length},
          {"policy", to_string(config.policy)},
          {"shortlist", config.policy.shortlist_size},
          {"tie_break", to_string(config.policy.tie_break)},
          {"opener", config.opener.empty() ? nlohmann::json(nullptr) : nlohmann::json(config.opener)}};
}

nlohmann::json to_json(const Advice& advice, const AssistantConfig& config) {
  nlohmann::json suggestions = nlohmann::json::array();
  for (const auto& s : advice.suggestions) {
    suggestions.push_back({{"word", s.word},
                           {"score", s.score},
                           {"score_kind", to_string(config.policy.heuristic)},
                           {"q_mean", s.q_mean ? nlohmann::json(*s.q_mean) : nlohmann::json(nullptr)},
                           {"eligible", s.eligible},
                           {"cells", s.cells}});
  }
  return {{"eligible_count", advice.eligible_count},
          {"solved", advice.solved},
          {"guesses_used", advice.guesses_used},
          {"eligible_preview", advice.eligible_preview},
          {"suggestions", suggestions},
          {"pick", advice.pick ? nlohmann::json(*advice.pick) : nlohmann::json(nullptr)}};
}

void PuzzleRegistry::install(std::shared_ptr<const Puzzle> puzzle) {
  std::lock_guard lock(mutex_);
  auto& s = slots_[puzzle->word_length()];
  s.library = std::make_unique<PolicyLibrary>(*puzzle);
  s.puzzle = std::move(puzzle);
}

PuzzleRegistry::Slot& PuzzleRegistry::slot(int length) {
  std::lock_guard lock(mutex_);
  auto& s = slots_[length];
  if (!s.puzzle) {
    s.puzzle = std::make_shared<const Puzzle>(load_shipped_puzzle(length));
    s.library = std::make_unique<PolicyLibrary>(*s.puzzle);
  }
  return s;
}

const Puzzle& PuzzleRegistry::puzzle(int length) { return *slot(length).puzzle; }
PolicyLibrary& PuzzleRegistry::library(int length) { return *slot(length).library; }

namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_eligible(const Puzzle& puzzle, const GameState& state, GuessId g) {
  const auto m = puzzle.mystery_of(g);
  return m && std::binary_search(state.eligible().begin(), state.eligible().end(), *m);
}

}  // namespace

GuessId resolve_guess(const Puzzle& puzzle, std::string_view word) {
  const std::string w = lower(word);
  if (auto id = puzzle.guesses().find(w)) return *id;
  std::size_t best = std::string::npos;
  std::vector<std::string> near;
  for (const auto& g : puzzle.guesses().words()) {
    const auto d = edit_distance(w, g);
    if (d < best) {
      best = d;
      near.clear();
    }
    if (d == best && near.size() < 3) near.push_back(g);
  }
  std::string hint;
  for (const auto& n : near) hint += (hint.empty() ? "" : ", ") + n;
  throw DataError("'" + std::string(word) + "' is not in the guess list (closest: " + hint + ")");
}

GameState apply_turn(const Puzzle& puzzle, Mode mode, const GameState& state, std::string_view guess,
                     std::string_view pattern) {
  if (state.solved()) throw ProtocolError("the game is already solved");
  const GuessId g = resolve_guess(puzzle, guess);
  const Pattern p = parse_pattern(pattern, puzzle.word_length());
  if (auto broken = violations(puzzle, state, mode, g); !broken.empty()) {
    throw GuessNotAllowed("'" + puzzle.guesses()[g] + "' is not allowed in " + std::string(to_string(mode)) + " mode",
                          std::move(broken));
  }
  return filter_mysteries(puzzle, state, g, p);
}

GameState replay_turns(const Puzzle& puzzle, Mode mode,
                       const std::vector<std::pair<std::string, std::string>>& turns) {
  GameState state = GameState::initial(puzzle);
  for (const auto& [g, p] : turns) state = apply_turn(puzzle, mode, state, g, p);
  return state;
}

Advice advise(const Puzzle& puzzle, PolicyLibrary& library, const AssistantConfig& config, const GameState& state) {
  Advice advice;
  advice.eligible_count = state.eligible_count();
  advice.solved = state.solved();
  advice.guesses_used = state.history().size();
  for (std::size_t i = 0; i < std::min(kEligiblePreview, state.eligible_count()); ++i) {
    advice.eligible_preview.push_back(puzzle.mysteries()[state.eligible()[i]]);
  }
  if (state.solved()) return advice;

  const Heuristic h = config.policy.heuristic;
  PartitionScorer scorer(puzzle);
  auto plain = [&](GuessId g) {
    const auto stats = scorer.stats(g, state.eligible());
    Suggestion s;
    s.word = puzzle.guesses()[g];
    s.score = heuristic_value(h, stats, static_cast<std::uint32_t>(state.eligible_count()));
    s.eligible = is_eligible(puzzle, state, g);
    s.cells = stats.cells;
    return s;
  };

  if (state.history().empty() && !config.opener.empty()) {
    advice.suggestions.push_back(plain(resolve_guess(puzzle, config.opener)));
  } else if (state.eligible_count() == 1) {
    advice.suggestions.push_back(plain(puzzle.guess_of(state.eligible()[0])));
  } else if (config.policy.rollout) {
    const auto& p = config.policy;
    const auto rollout = library.rollout(config.mode, RolloutConfig{h, p.shortlist_size, p.tie_break,
                                                                    p.shortlist_tie_break});
    const auto decision = rollout->select(state);
    std::vector<std::size_t> order(decision.shortlist.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return decision.shortlist[a].q_sum < decision.shortlist[b].q_sum;
    });
    for (auto i : order) {
      const auto& e = decision.shortlist[i];
      Suggestion s;
      s.word = puzzle.guesses()[e.score.guess];
      s.score = e.score.value;
      s.q_mean = e.q_mean;
      s.eligible = e.score.eligible;
      s.cells = e.cells;
      advice.suggestions.push_back(s);
    }
  } else {
    const GuessId pick = library.base(config.mode, h, config.policy.tie_break)->choose(state);
    advice.suggestions.push_back(plain(pick));
    for (const auto& r : rank_guesses(puzzle, state, GameConfig{config.mode}, h, config.policy.shortlist_size,
                                      config.policy.tie_break)) {
      if (advice.suggestions.size() >= config.policy.shortlist_size) break;
      if (r.guess != pick) advice.suggestions.push_back(plain(r.guess));
    }
  }
  advice.pick = advice.suggestions.front().word;
  return advice;
}

}  // namespace wordle
