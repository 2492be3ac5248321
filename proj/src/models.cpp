#include "wordle/models.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "json.hpp"

#include "wordle/data.hpp"
#include "wordle/errors.hpp"
#include "wordle/oracle.hpp"

namespace wordle {

WordleModel::WordleModel(const Puzzle& puzzle, Mode mode, TieBreak tie) : puzzle_(&puzzle), mode_(mode), tie_(tie) {}

std::vector<GuessId> WordleModel::controls(const GameState& x) const {
  if (x.eligible_count() == 1) return {puzzle_->guess_of(x.eligible()[0])};
  auto out = allowable_guesses(*puzzle_, x, GameConfig{mode_});
  if (tie_ == TieBreak::prefer_eligible) {
    std::stable_partition(out.begin(), out.end(), [&](GuessId g) {
      const auto m = puzzle_->mystery_of(g);
      return m && std::binary_search(x.eligible().begin(), x.eligible().end(), *m);
    });
  }
  return out;
}

GameState WordleModel::next(const GameState& x, GuessId u, Pattern z) const {
  return filter_mysteries(*puzzle_, x, u, z);
}

double entropy_cost_to_go(const GameState& x) { return std::log2(static_cast<double>(x.eligible_count())); }

NumberSearchModel::NumberSearchModel(int n) : n_(n) {
  if (n < 1) throw ConfigError("number search needs n >= 1");
}

std::vector<int> NumberSearchModel::controls(const State& x) const {
  std::vector<int> out;
  for (int k = x.lo; k <= x.hi; ++k) out.push_back(k);
  return out;
}

Comparison NumberSearchModel::outcome(const State&, std::size_t i, int probe) const {
  const int secret = static_cast<int>(i) + 1;
  if (secret < probe) return Comparison::less;
  if (secret > probe) return Comparison::greater;
  return Comparison::equal;
}

NumberSearchModel::State NumberSearchModel::next(const State& x, int probe, Comparison z) const {
  switch (z) {
    case Comparison::less: return {x.lo, probe - 1, false};
    case Comparison::greater: return {probe + 1, x.hi, false};
    case Comparison::equal: return {probe, probe, true};
  }
  return x;
}

std::string NumberSearchModel::key(const State& x) const {
  return std::to_string(x.lo) + ".." + std::to_string(x.hi) + (x.found ? "!" : "");
}

std::string NumberSearchModel::describe(Comparison z) const {
  switch (z) {
    case Comparison::less: return "less";
    case Comparison::equal: return "equal";
    case Comparison::greater: return "greater";
  }
  return "?";
}

InstanceConfig parse_instance_config(std::string_view json) {
  InstanceConfig out;
  try {
    const auto j = nlohmann::json::parse(json);
    out.type = j.at("type").get<std::string>();
    if (out.type == "number-search") {
      out.n = j.at("n").get<int>();
      if (out.n < 1) throw DataError("number-search needs n >= 1");
      out.hypotheses = static_cast<std::size_t>(out.n);
      return out;
    }
    if (out.type != "wordle") throw DataError("unknown instance type '" + out.type + "'");
    out.mode = parse_mode(j.value("mode", std::string("easy")));
    out.length = j.value("length", 5);
    out.seed = j.value("seed", std::uint64_t{0});
    const auto& mysteries = j.at("mysteries");
    const auto& guesses = j.at("guesses");
    if (mysteries.is_array()) {
      out.mystery_words = mysteries.get<std::vector<std::string>>();
      out.guess_words = guesses.get<std::vector<std::string>>();
      out.hypotheses = out.mystery_words.size();
      if (out.mystery_words.empty()) throw DataError("wordle instance needs at least one mystery");
    } else {
      out.mystery_count = mysteries.get<std::size_t>();
      out.guess_count = guesses.get<std::size_t>();
      out.hypotheses = out.mystery_count;
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed instance config: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed instance config: ") + e.what());
  }
}

namespace {

template <class Model>
DpReport run_dp(const Model& model, const typename Model::State& x0, const std::string& type,
                adaptive::DpOptions options) {
  const auto belief = adaptive::Belief<Rational>::uniform(model.hypothesis_count());
  const auto result = adaptive::exact_information_dp(model, x0, belief, options);
  DpReport report;
  report.type = type;
  report.hypotheses = model.hypothesis_count();
  report.cost = result.cost;
  report.first = result.tree ? model.describe(result.first) : std::string{};
  report.tree = adaptive::format_policy_tree(model, result.tree);
  report.nodes = result.nodes;
  return report;
}

Puzzle build_wordle(const InstanceConfig& config, const Puzzle* parent) {
  if (!config.mystery_words.empty()) {
    auto guesses = config.guess_words;
    for (const auto& m : config.mystery_words) {
      if (std::find(guesses.begin(), guesses.end(), m) == guesses.end()) guesses.push_back(m);
    }
    const int length = static_cast<int>(config.mystery_words.front().size());
    return Puzzle(WordList(guesses, length), WordList(config.mystery_words, length));
  }
  std::optional<Puzzle> shipped;
  if (!parent) {
    shipped.emplace(load_shipped_puzzle(config.length));
    parent = &*shipped;
  }
  const auto inst = sample_sub_instance(*parent, config.seed, config.mystery_count, config.guess_count, config.mode);
  return materialize(*parent, inst);
}

}  // namespace

DpReport solve_instance(const InstanceConfig& config, const Puzzle* parent, adaptive::DpOptions options) {
  if (config.type == "number-search") {
    const NumberSearchModel model(config.n);
    return run_dp(model, model.initial(), config.type, options);
  }
  const Puzzle puzzle = build_wordle(config, parent);
  const WordleModel model(puzzle, config.mode);
  return run_dp(model, GameState::initial(puzzle), config.type, options);
}

}  // namespace wordle
