#pragma once

#include <string>
#include <vector>

#include "wordle/game.hpp"
#include "wordle/lexicon.hpp"

namespace wordle::testing {

// Shipped lists, loaded once per test binary.
const Puzzle& standard_puzzle();
const Puzzle& six_letter_puzzle();

// Puzzle whose guess and mystery lists are both `words`.
Puzzle tiny_puzzle(const std::vector<std::string>& words);
Puzzle tiny_puzzle(const std::vector<std::string>& guesses, const std::vector<std::string>& mysteries);

// A state reached by playing `guesses` against `mystery`.
GameState play_out(const Puzzle& puzzle, const std::vector<std::string>& guesses, const std::string& mystery);

}  // namespace wordle::testing
