#include "wordle/data.hpp"

#include <cstdlib>
#include <string>

namespace wordle {

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("WORDLE_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return WORDLE_DATA_DIR;
}

ListPaths shipped_lists(int length) {
  const auto dir = data_directory();
  const auto stem = "words" + std::to_string(length);
  return {dir / (stem + "_guess.txt"), dir / (stem + "_mystery.txt")};
}

Puzzle load_shipped_puzzle(int length) {
  const auto paths = shipped_lists(length);
  return Puzzle::load(paths.guesses, paths.mysteries, length);
}

}  // namespace wordle
