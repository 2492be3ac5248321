#pragma once

#include <filesystem>

#include "wordle/lexicon.hpp"

namespace wordle {

struct ListPaths {
  std::filesystem::path guesses;
  std::filesystem::path mysteries;
};

// Directory of the shipped word lists: $WORDLE_DATA_DIR if set, otherwise the
// location configured at build time.
std::filesystem::path data_directory();

// words<L>_guess.txt and words<L>_mystery.txt inside data_directory().
ListPaths shipped_lists(int length);

Puzzle load_shipped_puzzle(int length);

}  // namespace wordle
