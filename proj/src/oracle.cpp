#include "wordle/oracle.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "wordle/errors.hpp"

namespace wordle {

namespace {

std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

// Partial Fisher-Yates: the first `count` entries of a shuffled 0..n-1.
std::vector<std::size_t> sample_indices(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + draw(rng, n - i)]);
  idx.resize(count);
  return idx;
}

class Solver {
 public:
  Solver(const Puzzle& puzzle, Mode mode, const OracleOptions& options)
      : puzzle_(puzzle), mode_(mode), options_(options) {}

  std::uint64_t solve(const GameState& state, GuessId* opener) {
    const std::size_t n = state.eligible_count();
    if (n == 1) {
      if (opener) *opener = puzzle_.guess_of(state.eligible()[0]);
      return 1;
    }
    std::string key;
    if (options_.memoize && !opener) {
      key = key_of(state);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    if (++nodes_ > options_.node_budget) {
      throw InstanceTooLarge("exact solve exceeded the node budget of " + std::to_string(options_.node_budget));
    }

    struct Candidate {
      GuessId guess;
      std::uint64_t bound;
      std::vector<FeedbackCell> cells;
    };
    std::vector<Candidate> candidates;
    for (GuessId u : allowable_guesses(puzzle_, state, GameConfig{mode_})) {
      auto cells = split_by_feedback(puzzle_, u, state.eligible());
      std::uint64_t bound = n;
      bool progress = true;
      for (const auto& c : cells) {
        if (c.pattern == puzzle_.solved_pattern()) continue;
        if (c.members.size() == n) progress = false;
        bound += 2 * c.members.size() - 1;
      }
      if (progress) candidates.push_back({u, bound, std::move(cells)});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.bound < b.bound; });

    // A cell of c words costs at least 2c - 1: at most one word is found by
    // the next guess. At the root, equal bounds are still explored so the
    // lowest-id optimal opener is found.
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    GuessId best_guess = 0;
    for (auto& cand : candidates) {
      if (opener ? cand.bound > best : cand.bound >= best) break;
      std::uint64_t total = cand.bound;
      bool pruned = false;
      for (auto& cell : cand.cells) {
        if (cell.pattern == puzzle_.solved_pattern()) continue;
        const std::uint64_t floor = 2 * cell.members.size() - 1;
        const GameState next =
            advance_unchecked(puzzle_, state, cand.guess, cell.pattern, std::move(cell.members));
        total += solve(next, nullptr) - floor;
        if (opener ? total > best : total >= best) {
          pruned = true;
          break;
        }
      }
      if (pruned) continue;
      if (total < best || (total == best && cand.guess < best_guess)) {
        best = total;
        best_guess = cand.guess;
      }
    }
    if (best == std::numeric_limits<std::uint64_t>::max()) {
      throw Error("invariant violated: no guess makes progress on " + std::to_string(n) + " words");
    }
    if (opener) *opener = best_guess;
    if (options_.memoize && !key.empty()) memo_.emplace(std::move(key), best);
    return best;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  // Under the consistent hard rule the future depends on the history only
  // through the allowable set, which makes a tighter key than the turns.
  std::string key_of(const GameState& state) const {
    if (mode_ != Mode::hard) return state.key(mode_);
    std::string k = state.key(Mode::easy);
    std::string bits((puzzle_.guesses().size() + 7) / 8, '\0');
    for (GuessId g : allowable_guesses(puzzle_, state, GameConfig{mode_})) bits[g / 8] |= static_cast<char>(1 << (g % 8));
    k.push_back('A');
    k += bits;
    return k;
  }

  const Puzzle& puzzle_;
  Mode mode_;
  OracleOptions options_;
  std::unordered_map<std::string, std::uint64_t> memo_;
  std::size_t nodes_ = 0;
};

}  // namespace

SubInstance sample_sub_instance(const Puzzle& parent, std::uint64_t seed, std::size_t mystery_count,
                                std::size_t guess_count, Mode mode) {
  if (mystery_count == 0 || mystery_count > parent.mysteries().size()) {
    throw ConfigError("mystery count must be between 1 and " + std::to_string(parent.mysteries().size()));
  }
  if (guess_count < mystery_count) throw ConfigError("guess count must be at least the mystery count");
  std::mt19937_64 rng(seed);
  SubInstance out;
  out.seed = seed;
  out.mode = mode;
  std::set<GuessId> guesses;
  for (auto i : sample_indices(rng, parent.mysteries().size(), mystery_count)) {
    out.mysteries.push_back(static_cast<MysteryId>(i));
    guesses.insert(parent.guess_of(static_cast<MysteryId>(i)));
  }
  std::sort(out.mysteries.begin(), out.mysteries.end());
  const std::size_t target = std::min(guess_count, parent.guesses().size());
  while (guesses.size() < target) guesses.insert(static_cast<GuessId>(draw(rng, parent.guesses().size())));
  out.guesses.assign(guesses.begin(), guesses.end());
  return out;
}

std::string serialize(const SubInstance& instance) {
  nlohmann::json j;
  j["seed"] = instance.seed;
  j["mode"] = std::string(to_string(instance.mode));
  j["mysteries"] = instance.mysteries;
  j["guesses"] = instance.guesses;
  return j.dump();
}

SubInstance parse_sub_instance(std::string_view json) {
  try {
    const auto j = nlohmann::json::parse(json);
    SubInstance out;
    out.seed = j.value("seed", std::uint64_t{0});
    out.mode = parse_mode(j.value("mode", std::string("easy")));
    out.mysteries = j.at("mysteries").get<std::vector<MysteryId>>();
    out.guesses = j.at("guesses").get<std::vector<GuessId>>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed sub-instance: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed sub-instance: ") + e.what());
  }
}

Puzzle materialize(const Puzzle& parent, const SubInstance& instance) {
  for (GuessId g : instance.guesses) {
    if (g >= parent.guesses().size()) throw DataError("guess id " + std::to_string(g) + " out of range");
  }
  for (MysteryId m : instance.mysteries) {
    if (m >= parent.mysteries().size()) throw DataError("mystery id " + std::to_string(m) + " out of range");
  }
  return parent.subset(instance.guesses, instance.mysteries);
}

OracleResult optimal_expected_guesses(const Puzzle& puzzle, Mode mode, const OracleOptions& options) {
  return optimal_expected_guesses(puzzle, GameState::initial(puzzle), mode, options);
}

OracleResult optimal_expected_guesses(const Puzzle& puzzle, const GameState& from, Mode mode,
                                      const OracleOptions& options) {
  if (puzzle.mysteries().size() > options.max_mysteries) {
    throw InstanceTooLarge("exact solve is capped at " + std::to_string(options.max_mysteries) + " mysteries, got " +
                           std::to_string(puzzle.mysteries().size()));
  }
  if (puzzle.guesses().size() > options.max_guesses) {
    throw InstanceTooLarge("exact solve is capped at " + std::to_string(options.max_guesses) + " guesses, got " +
                           std::to_string(puzzle.guesses().size()));
  }
  if (from.eligible_count() == 0) throw Error("exact solve called with no eligible words");
  Solver solver(puzzle, mode, options);
  OracleResult result;
  result.total = solver.solve(from, &result.opener);
  result.expected = Rational(static_cast<std::int64_t>(result.total), static_cast<std::int64_t>(from.eligible_count()));
  result.nodes = solver.nodes();
  return result;
}

Rational policy_expected_guesses(const Puzzle& puzzle, Mode mode, const GuessPolicy& policy) {
  std::int64_t total = 0;
  for (MysteryId m = 0; m < puzzle.mysteries().size(); ++m) {
    total += play_episode(puzzle, m, policy, GameConfig{mode}).guess_count;
  }
  return Rational(total, static_cast<std::int64_t>(puzzle.mysteries().size()));
}

OrderingReport verify_ordering(const Puzzle& puzzle, Mode mode, std::span<const PolicySpec> bases,
                               const OracleOptions& options) {
  OrderingReport report;
  report.mode = mode;
  report.mysteries = puzzle.mysteries().size();
  report.guesses = puzzle.guesses().size();
  const auto optimum = optimal_expected_guesses(puzzle, mode, options);
  report.optimal = optimum.expected;
  report.opener = optimum.opener;
  PolicyLibrary library(puzzle);
  for (PolicySpec spec : bases) {
    OrderingRow row;
    spec.rollout = false;
    row.base = spec;
    row.base_cost = policy_expected_guesses(puzzle, mode, library.policy(spec, mode, std::nullopt));
    auto rollout_spec = spec;
    rollout_spec.rollout = true;
    row.rollout_cost = policy_expected_guesses(puzzle, mode, library.policy(rollout_spec, mode, std::nullopt));
    row.optimal_le_rollout = report.optimal <= row.rollout_cost;
    row.rollout_le_base = row.rollout_cost <= row.base_cost;
    if (!row.optimal_le_rollout) {
      report.violations.push_back("optimal " + to_string(report.optimal) + " > " + to_string(rollout_spec) + " " +
                                  to_string(row.rollout_cost));
    }
    if (!row.rollout_le_base) {
      report.violations.push_back(to_string(rollout_spec) + " " + to_string(row.rollout_cost) + " > " +
                                  to_string(spec) + " " + to_string(row.base_cost));
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string format_report(const Puzzle& puzzle, const OrderingReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "instance " << report.mysteries << " mysteries, " << report.guesses << " guesses, "
      << to_string(report.mode) << '\n';
  out << "optimal " << to_string(report.optimal) << " = " << to_double(report.optimal) << " opener "
      << puzzle.guesses()[report.opener] << '\n';
  for (const auto& row : report.rows) {
    const auto gap = [&](const Rational& v) { return to_double(v - report.optimal); };
    out << to_string(row.base) << ' ' << to_string(row.base_cost) << " (+" << gap(row.base_cost) << ")  rollout "
        << to_string(row.rollout_cost) << " (+" << gap(row.rollout_cost) << ")\n";
  }
  for (const auto& v : report.violations) out << "VIOLATION " << v << '\n';
  return out.str();
}

}  // namespace wordle
