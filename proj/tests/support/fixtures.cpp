#include "fixtures.hpp"

#include "wordle/data.hpp"

namespace wordle::testing {

const Puzzle& standard_puzzle() {
  static const Puzzle puzzle = load_shipped_puzzle(5);
  return puzzle;
}

const Puzzle& six_letter_puzzle() {
  static const Puzzle puzzle = load_shipped_puzzle(6);
  return puzzle;
}

Puzzle tiny_puzzle(const std::vector<std::string>& words) { return tiny_puzzle(words, words); }

Puzzle tiny_puzzle(const std::vector<std::string>& guesses, const std::vector<std::string>& mysteries) {
  const int length = static_cast<int>(guesses.front().size());
  return Puzzle(WordList(guesses, length), WordList(mysteries, length));
}

GameState play_out(const Puzzle& puzzle, const std::vector<std::string>& guesses, const std::string& mystery) {
  GameState state = GameState::initial(puzzle);
  const MysteryId m = puzzle.require_mystery(mystery);
  for (const auto& g : guesses) {
    const GuessId id = puzzle.require_guess(g);
    state = filter_mysteries(puzzle, state, id, puzzle.matrix().at(id, m));
  }
  return state;
}

}  // namespace wordle::testing
