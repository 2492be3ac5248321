#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wordle {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: malformed word lists, unknown words, unparsable patterns.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: unknown tags, openers outside the guess list.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A feedback history that no remaining mystery word is consistent with.
class InconsistentFeedback : public Error {
 public:
  using Error::Error;
};

// A policy proposed a guess the current mode does not allow.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A submitted guess breaks the hard-mode rules; lists the broken rules.
class GuessNotAllowed : public ProtocolError {
 public:
  GuessNotAllowed(const std::string& message, std::vector<std::string> violations)
      : ProtocolError(message), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// A simulated episode failed to terminate within its step cap.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// An exact solver or precomputation exceeded its configured budget.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace wordle
