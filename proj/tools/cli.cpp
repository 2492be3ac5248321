#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "wordle/assistant.hpp"
#include "wordle/bench.hpp"
#include "wordle/data.hpp"
#include "wordle/errors.hpp"
#include "wordle/models.hpp"
#include "wordle/oracle.hpp"
#include "wordle/service.hpp"

namespace wordle::cli {

namespace {

struct ListOptions {
  int length = 5;
  std::string mystery_list;
  std::string guess_list;

  void add(CLI::App& app) {
    app.add_option("--length", length, "Word length")->check(CLI::IsMember({5, 6}));
    app.add_option("--mystery-list", mystery_list, "Mystery word list, one word per line");
    app.add_option("--guess-list", guess_list, "Guess word list, one word per line");
  }

  std::shared_ptr<const Puzzle> load() const {
    if (mystery_list.empty() && guess_list.empty()) return std::make_shared<const Puzzle>(load_shipped_puzzle(length));
    const auto shipped = shipped_lists(length);
    return std::make_shared<const Puzzle>(Puzzle::load(guess_list.empty() ? shipped.guesses : std::filesystem::path(guess_list),
                                                       mystery_list.empty() ? shipped.mysteries : std::filesystem::path(mystery_list),
                                                       length));
  }
};

struct PolicyOptions {
  std::string mode = "easy";
  std::string policy = "rollout-mig";
  std::string opener = "salet";
  std::size_t shortlist = 10;
  std::string tie_break = "lowest-id";

  void add(CLI::App& app) {
    app.add_option("--mode", mode, "easy, hard or hard-hints");
    app.add_option("--policy", policy, "mig, mrd, gep, or rollout-<base>");
    app.add_option("--opener", opener, "First guess; empty to let the policy choose");
    app.add_option("--shortlist", shortlist, "Rollout shortlist size")->check(CLI::Range(1, 100000));
    app.add_option("--tie-break", tie_break, "lowest-id or prefer-eligible");
  }

  AssistantConfig config(int length) const {
    AssistantConfig c;
    c.mode = parse_mode(mode);
    c.length = length;
    c.policy = parse_policy(policy);
    c.policy.shortlist_size = shortlist;
    c.policy.tie_break = parse_tie_break(tie_break);
    c.opener = opener;
    // The default opener is a 5-letter word; other lengths open on the policy.
    if (c.opener == "salet" && length != 5) c.opener.clear();
    return c;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "salet:BBYBG" or "salet=BBYBG".
std::pair<std::string, std::string> parse_turn(const std::string& text) {
  const auto cut = text.find_first_of(":=");
  if (cut == std::string::npos) throw ConfigError("history entry '" + text + "' must look like guess:PATTERN");
  return {text.substr(0, cut), text.substr(cut + 1)};
}

void print_advice(std::ostream& out, const Advice& advice, const AssistantConfig& config) {
  out << "eligible: " << advice.eligible_count << '\n';
  if (advice.solved) {
    out << "solved in " << advice.guesses_used << " guesses\n";
    return;
  }
  if (advice.eligible_count <= kEligiblePreview) {
    out << "remaining:";
    for (const auto& w : advice.eligible_preview) out << ' ' << w;
    out << '\n';
  }
  const auto h = to_string(config.policy.heuristic);
  out << "rank  word      " << std::setw(10) << h << "  further\n";
  for (std::size_t i = 0; i < advice.suggestions.size(); ++i) {
    const auto& s = advice.suggestions[i];
    out << std::left << std::setw(6) << (i + 1) << std::setw(8) << s.word << std::right << std::fixed
        << std::setprecision(4) << std::setw(12) << s.score << "  "
        << (s.q_mean ? (std::ostringstream() << std::fixed << std::setprecision(4) << *s.q_mean).str()
                     : std::string("-"))
        << (s.eligible ? "  (possible answer)" : "") << '\n';
  }
  if (advice.pick) out << "pick: " << *advice.pick << '\n';
}

int code_for_exception(std::ostream& err) {
  try {
    throw;
  } catch (const InconsistentFeedback& e) {
    err << "error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const GuessNotAllowed& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& v : e.violations()) err << "  " << v << '\n';
    return kInconsistent;
  } catch (const ProtocolError& e) {
    err << "error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wordle rollout engine", "wordle"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Play one mystery word and print the transcript");
  std::string mystery;
  ListOptions solve_lists;
  PolicyOptions solve_policy;
  solve->add_option("mystery", mystery, "The word to find")->required();
  solve_lists.add(*solve);
  solve_policy.add(*solve);

  // bench
  auto* bench = app.add_subcommand("bench", "Play every mystery word and print one CSV row per configuration");
  std::string openers = "salet", modes = "easy", policies = "mig,rollout-mig", out_path, compare_path;
  std::size_t threads = 0, bench_shortlist = 10;
  std::string bench_tie = "lowest-id";
  bool no_timing = false, compare = false;
  ListOptions bench_lists;
  bench->add_option("--openers,--opener", openers, "Comma-separated openers");
  bench->add_option("--modes,--mode", modes, "Comma-separated modes");
  bench->add_option("--policies,--policy", policies, "Comma-separated policy tags");
  bench->add_option("--shortlist", bench_shortlist, "Rollout shortlist size")->check(CLI::Range(1, 100000));
  bench->add_option("--tie-break", bench_tie, "lowest-id or prefer-eligible");
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)");
  bench->add_option("--out", out_path, "Write the CSV here instead of stdout");
  bench->add_flag("--no-timing", no_timing, "Write 0 in the seconds column");
  bench->add_flag("--compare", compare, "Also print the comparison against published optima");
  bench->add_option("--compare-csv", compare_path, "Write the comparison as CSV here");
  bench_lists.add(*bench);

  // suggest
  auto* suggest = app.add_subcommand("suggest", "Suggest the next guess for a transcript");
  std::vector<std::string> history;
  bool opener_only = false, as_json = false;
  ListOptions suggest_lists;
  PolicyOptions suggest_policy;
  suggest->add_option("history", history, "Turns as guess:PATTERN, PATTERN in B/Y/G or a base-3 code");
  suggest->add_flag("--opener-only", opener_only, "Print the configured opener and exit");
  suggest->add_flag("--json", as_json, "Print the same JSON the service returns");
  suggest_lists.add(*suggest);
  suggest_policy.add(*suggest);

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP assistant service");
  std::string host = "127.0.0.1", static_dir;
  int port = 8080;
  double idle_hours = 24.0;
  ListOptions serve_lists;
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--static-dir", static_dir, "Serve the browser UI from this directory");
  serve_cmd->add_option("--idle-hours", idle_hours, "Evict sessions idle this long")->check(CLI::PositiveNumber);
  serve_lists.add(*serve_cmd);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Solve a reduced instance exactly");
  std::uint64_t seed = 1;
  std::size_t oracle_mysteries = 20, oracle_guesses = 100;
  std::string oracle_mode = "easy", instance_path, config_path, bases;
  ListOptions oracle_lists;
  oracle->add_option("--seed", seed, "Sampling seed");
  oracle->add_option("--mysteries", oracle_mysteries, "Mystery words in the instance");
  oracle->add_option("--guesses", oracle_guesses, "Guess words in the instance");
  oracle->add_option("--mode", oracle_mode, "easy, hard or hard-hints");
  oracle->add_option("--instance", instance_path, "Load a serialized instance instead of sampling");
  oracle->add_option("--verify", bases, "Comma-separated base heuristics to check optimal <= rollout <= base");
  oracle->add_option("--config", config_path, "Solve a declarative instance (wordle or number-search)");
  oracle_lists.add(*oracle);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (*app.get_subcommands().begin() ? (*app.get_subcommands().begin())->help() : app.help());
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*solve) {
      const auto puzzle = solve_lists.load();
      const auto config = solve_policy.config(solve_lists.length);
      PolicyLibrary library(*puzzle);
      const auto policy = library.policy(config.policy, config.mode,
                                         config.opener.empty() ? std::nullopt : std::optional<std::string_view>(config.opener));
      const auto episode = play_episode(*puzzle, puzzle->require_mystery(mystery), policy, GameConfig{config.mode});
      for (const auto& t : episode.turns) {
        out << puzzle->guesses()[t.guess] << ' ' << to_string(t.feedback, puzzle->word_length()) << '\n';
      }
      out << "found in " << episode.guess_count << " guesses" << (episode.solved_within_limit ? "" : " (over the limit)")
          << '\n';
      return kOk;
    }
    if (*bench) {
      const auto puzzle = bench_lists.load();
      BenchmarkSpec spec;
      spec.openers = split_list(openers);
      spec.modes.clear();
      for (const auto& m : split_list(modes)) spec.modes.push_back(parse_mode(m));
      spec.policies.clear();
      for (const auto& p : split_list(policies)) {
        auto tag = parse_policy(p);
        tag.shortlist_size = bench_shortlist;
        tag.tie_break = parse_tie_break(bench_tie);
        spec.policies.push_back(tag);
      }
      spec.threads = threads;
      for (const auto& o : spec.openers) {
        if (!puzzle->guesses().find(o)) throw ConfigError("opener '" + o + "' is not in the guess list");
      }
      PolicyLibrary library(*puzzle);
      const auto rows = run_benchmark(library, spec);
      if (out_path.empty()) {
        write_csv(out, rows, !no_timing);
      } else {
        std::ofstream file(out_path);
        if (!file) throw DataError("cannot write " + out_path);
        write_csv(file, rows, !no_timing);
      }
      if (compare) out << compare_report(rows);
      if (!compare_path.empty()) {
        std::ofstream file(compare_path);
        if (!file) throw DataError("cannot write " + compare_path);
        file << compare_report_csv(rows);
      }
      return kOk;
    }
    if (*suggest) {
      const auto config = suggest_policy.config(suggest_lists.length);
      if (opener_only) {
        out << (config.opener.empty() ? "(none)" : config.opener) << '\n';
        return kOk;
      }
      const auto puzzle = suggest_lists.load();
      PolicyLibrary library(*puzzle);
      std::vector<std::pair<std::string, std::string>> turns;
      for (const auto& h : history) turns.push_back(parse_turn(h));
      const auto state = replay_turns(*puzzle, config.mode, turns);
      const auto advice = advise(*puzzle, library, config, state);
      if (as_json) {
        out << to_json(advice, config).dump(2) << '\n';
      } else {
        print_advice(out, advice, config);
      }
      return kOk;
    }
    if (*serve_cmd) {
      PuzzleRegistry registry;
      if (!serve_lists.mystery_list.empty() || !serve_lists.guess_list.empty()) registry.install(serve_lists.load());
      ServiceOptions options;
      options.idle_timeout = std::chrono::seconds(static_cast<long long>(idle_hours * 3600));
      options.static_dir = static_dir;
      Api api(registry, options);
      err << "listening on http://" << host << ':' << port << '\n';
      if (!wordle::serve(api, host, port)) {
        err << "error: cannot bind " << host << ':' << port << '\n';
        return kDataError;
      }
      return kOk;
    }
    if (*oracle) {
      if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) throw DataError("cannot read " + config_path);
        std::stringstream text;
        text << file.rdbuf();
        const auto config = parse_instance_config(text.str());
        std::shared_ptr<const Puzzle> parent;
        if (config.type == "wordle" && config.mystery_words.empty()) parent = oracle_lists.load();
        const auto report = solve_instance(config, parent.get());
        out << report.type << " with " << report.hypotheses << " hypotheses\n";
        out << "optimal " << to_string(report.cost) << " = " << std::fixed << std::setprecision(6)
            << to_double(report.cost) << '\n';
        out << "first " << report.first << '\n' << report.tree;
        return kOk;
      }
      const auto parent = oracle_lists.load();
      const Mode mode = parse_mode(oracle_mode);
      SubInstance inst;
      if (!instance_path.empty()) {
        std::ifstream file(instance_path);
        if (!file) throw DataError("cannot read " + instance_path);
        std::stringstream text;
        text << file.rdbuf();
        inst = parse_sub_instance(text.str());
      } else {
        inst = sample_sub_instance(*parent, seed, oracle_mysteries, oracle_guesses, mode);
      }
      const Puzzle puzzle = materialize(*parent, inst);
      if (!bases.empty()) {
        std::vector<PolicySpec> specs;
        for (const auto& b : split_list(bases)) specs.push_back(parse_policy(b));
        const auto report = verify_ordering(puzzle, inst.mode, specs);
        out << format_report(puzzle, report);
        return report.ok() ? kOk : kDataError;
      }
      const auto r = optimal_expected_guesses(puzzle, inst.mode);
      out << "instance " << serialize(inst) << '\n';
      out << "optimal " << to_string(r.expected) << " = " << std::fixed << std::setprecision(6) << to_double(r.expected)
          << '\n';
      out << "opener " << puzzle.guesses()[r.opener] << '\n';
      return kOk;
    }
  } catch (...) {
    return code_for_exception(err);
  }
  return kUsage;
}

}  // namespace wordle::cli
