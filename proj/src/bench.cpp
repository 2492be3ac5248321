#include "wordle/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "wordle/errors.hpp"

namespace wordle {

double BenchmarkRow::mean() const {
  return mysteries ? static_cast<double>(total_guesses) / static_cast<double>(mysteries) : 0.0;
}

int BenchmarkRow::p50() const {
  std::uint64_t seen = 0;
  for (std::size_t c = 0; c < histogram.size(); ++c) {
    seen += histogram[c];
    if (2 * seen >= mysteries) return static_cast<int>(c);
  }
  return 0;
}

int BenchmarkRow::max() const {
  for (std::size_t c = histogram.size(); c-- > 0;) {
    if (histogram[c]) return static_cast<int>(c);
  }
  return 0;
}

BenchmarkRow run_row(PolicyLibrary& library, std::string_view opener, Mode mode, const PolicySpec& policy,
                     std::size_t threads) {
  const Puzzle& puzzle = library.puzzle();
  const auto start = std::chrono::steady_clock::now();
  const GuessPolicy play = library.policy(policy, mode, opener);
  const GameConfig config{mode};
  const std::size_t n = puzzle.mysteries().size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);

  std::vector<int> counts(n, 0);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_at = n;
  std::string error;
  auto work = [&] {
    for (std::size_t m; (m = next.fetch_add(1)) < n;) {
      try {
        counts[m] = play_episode(puzzle, static_cast<MysteryId>(m), play, config).guess_count;
      } catch (const Error& e) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing id so the message is reproducible.
        if (m < error_at) {
          error_at = m;
          error = e.what();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  if (error_at < n) {
    throw DivergenceError("row " + std::string(opener) + "/" + std::string(to_string(mode)) + "/" + to_string(policy) +
                          " aborted at mystery '" + puzzle.mysteries()[error_at] + "': " + error);
  }

  BenchmarkRow row;
  row.opener = std::string(opener);
  row.mode = mode;
  row.policy = policy;
  row.mysteries = n;
  for (int c : counts) {
    if (static_cast<std::size_t>(c) >= row.histogram.size()) row.histogram.resize(c + 1, 0);
    ++row.histogram[c];
    row.total_guesses += c;
    if (c > config.max_guesses) ++row.failures;
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<BenchmarkRow> run_benchmark(PolicyLibrary& library, const BenchmarkSpec& spec) {
  for (const auto& o : spec.openers) library.puzzle().require_guess(o);
  std::vector<BenchmarkRow> rows;
  for (const auto& opener : spec.openers) {
    for (Mode mode : spec.modes) {
      for (const auto& policy : spec.policies) rows.push_back(run_row(library, opener, mode, policy, spec.threads));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows, bool timing) {
  out << "opener,mode,policy,mean,p50,max,failures,seconds\n";
  for (const auto& r : rows) {
    out << r.opener << ',' << to_string(r.mode) << ',' << to_string(r.policy) << ',' << std::fixed
        << std::setprecision(4) << r.mean() << ',' << r.p50() << ',' << r.max() << ',' << r.failures << ','
        << std::setprecision(3) << (timing ? r.seconds : 0.0) << '\n';
  }
}

std::string format_csv(const std::vector<BenchmarkRow>& rows, bool timing) {
  std::ostringstream out;
  write_csv(out, rows, timing);
  return out.str();
}

std::optional<double> published_optimum(std::string_view opener, Mode mode) {
  struct Entry {
    std::string_view opener;
    double easy, hard;  // 0 where unpublished
  };
  static constexpr Entry kTable[] = {
      {"salet", 3.4212, 3.5084}, {"reast", 3.4225, 3.5136}, {"crate", 3.4238, 3.5175}, {"trace", 3.4238, 0},
      {"slate", 3.4246, 0},      {"trape", 3.4454, 3.5179}, {"slane", 3.4311, 3.5201}, {"prate", 3.4376, 3.5210},
      {"crane", 3.4255, 3.5227}, {"carle", 3.4285, 3.5261}, {"train", 3.4436, 3.5248}, {"raise", 3.4618, 0},
      {"clout", 0, 0},
  };
  if (mode == Mode::hard_hints) return std::nullopt;
  for (const auto& e : kTable) {
    if (e.opener != opener) continue;
    const double v = mode == Mode::easy ? e.easy : e.hard;
    if (v > 0) return v;
    return std::nullopt;
  }
  return std::nullopt;
}

double percent_over(double value, double reference) { return 100.0 * (value / reference - 1.0); }

std::vector<ComparisonLine> compare(const std::vector<BenchmarkRow>& rows) {
  std::vector<ComparisonLine> out;
  for (const auto& r : rows) {
    ComparisonLine line;
    line.row = &r;
    // Published optima are for the standard 5-letter lists only.
    if (r.mysteries == 2315) line.optimum = published_optimum(r.opener, r.mode);
    if (line.optimum) line.percent_over_optimum = percent_over(r.mean(), *line.optimum);
    if (r.policy.rollout) {
      for (const auto& b : rows) {
        if (!b.policy.rollout && b.policy.heuristic == r.policy.heuristic && b.opener == r.opener &&
            b.mode == r.mode && b.mysteries == r.mysteries) {
          line.delta_vs_base = r.mean() - b.mean();
          break;
        }
      }
    }
    out.push_back(line);
  }
  return out;
}

namespace {

std::string fixed(double v, int digits, bool sign = false) {
  std::ostringstream s;
  if (sign) s << std::showpos;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

}  // namespace

std::string compare_report(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "opener" << std::setw(12) << "mode" << std::setw(16) << "policy" << std::right
      << std::setw(8) << "mean" << std::setw(9) << "optimal" << std::setw(10) << "vs opt" << std::setw(10)
      << "vs base" << '\n';
  for (const auto& line : compare(rows)) {
    const auto& r = *line.row;
    out << std::left << std::setw(8) << r.opener << std::setw(12) << to_string(r.mode) << std::setw(16)
        << to_string(r.policy) << std::right << std::setw(8) << fixed(r.mean(), 4) << std::setw(9)
        << (line.optimum ? fixed(*line.optimum, 4) : "-") << std::setw(10)
        << (line.percent_over_optimum ? fixed(*line.percent_over_optimum, 2, true) + "%" : "-") << std::setw(10)
        << (line.delta_vs_base ? fixed(*line.delta_vs_base, 4, true) : "-") << '\n';
  }
  return out.str();
}

std::string compare_report_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  out << "opener,mode,policy,mean,optimal,pct_over_optimal,delta_vs_base\n";
  for (const auto& line : compare(rows)) {
    const auto& r = *line.row;
    out << r.opener << ',' << to_string(r.mode) << ',' << to_string(r.policy) << ',' << fixed(r.mean(), 4) << ','
        << (line.optimum ? fixed(*line.optimum, 4) : "") << ','
        << (line.percent_over_optimum ? fixed(*line.percent_over_optimum, 2) : "") << ','
        << (line.delta_vs_base ? fixed(*line.delta_vs_base, 4) : "") << '\n';
  }
  return out.str();
}

}  // namespace wordle
