#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wordle/game.hpp"
#include "wordle/rollout.hpp"

namespace wordle {

struct BenchmarkSpec {
  std::vector<std::string> openers{"salet"};
  std::vector<Mode> modes{Mode::easy};
  std::vector<PolicySpec> policies{PolicySpec{}};
  // Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 0;
};

struct BenchmarkRow {
  std::string opener;
  Mode mode = Mode::easy;
  PolicySpec policy;
  std::size_t mysteries = 0;
  std::uint64_t total_guesses = 0;
  // histogram[c] = number of mysteries found in exactly c guesses.
  std::vector<std::uint32_t> histogram;
  // Mysteries needing more than GameConfig::max_guesses.
  std::uint32_t failures = 0;
  double seconds = 0.0;

  double mean() const;
  // Lower median and maximum guess count.
  int p50() const;
  int max() const;
};

// Plays every mystery once per (opener, mode, policy), in that loop order.
// Episodes are spread over a worker pool and collected by mystery id, so the
// rows do not depend on the thread count. A diverging episode aborts with a
// DivergenceError naming the row and the mystery.
std::vector<BenchmarkRow> run_benchmark(PolicyLibrary& library, const BenchmarkSpec& spec);
BenchmarkRow run_row(PolicyLibrary& library, std::string_view opener, Mode mode, const PolicySpec& policy,
                     std::size_t threads = 0);

// Header: opener,mode,policy,mean,p50,max,failures,seconds. With
// `timing` off the seconds column is written as 0 so reruns compare
// byte for byte.
void write_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows, bool timing = true);
std::string format_csv(const std::vector<BenchmarkRow>& rows, bool timing = true);

// Published optimal averages for the standard 5-letter lists, by opener and
// mode; nullopt where none was published.
std::optional<double> published_optimum(std::string_view opener, Mode mode);

// 100 * (value / reference - 1).
double percent_over(double value, double reference);

struct ComparisonLine {
  const BenchmarkRow* row = nullptr;
  std::optional<double> optimum;
  std::optional<double> percent_over_optimum;
  // For a rollout row: its mean minus the mean of the matching base row.
  std::optional<double> delta_vs_base;
};

std::vector<ComparisonLine> compare(const std::vector<BenchmarkRow>& rows);

// Aligned text table; rows without a published optimum show "-".
std::string compare_report(const std::vector<BenchmarkRow>& rows);
// Same content as CSV: opener,mode,policy,mean,optimal,pct_over_optimal,delta_vs_base
std::string compare_report_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace wordle
