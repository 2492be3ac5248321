#pragma once

// Session-based JSON API for the assistant. The wire schema is described in
// the README. Api::call holds all request handling, so it can be driven with
// or without a socket.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wordle/assistant.hpp"

namespace httplib {
class Server;
}

namespace wordle {

using Clock = std::chrono::steady_clock;

struct ServiceOptions {
  std::chrono::seconds idle_timeout{24 * 60 * 60};
  // Directory served at / for the browser UI; empty serves nothing.
  std::string static_dir;
  // Test hook; defaults to Clock::now.
  std::function<Clock::time_point()> now;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

inline constexpr int kApiVersion = 1;

class Api {
 public:
  explicit Api(PuzzleRegistry& registry, ServiceOptions options = {});

  // method is GET, POST or DELETE; path like "/sessions/<id>/feedback".
  ApiResponse call(std::string_view method, std::string_view path, std::string_view body);

  std::size_t session_count();
  // Drops sessions idle for longer than the timeout; returns how many.
  std::size_t evict_idle();

  const ServiceOptions& options() const { return options_; }

 private:
  struct Session {
    std::string id;
    AssistantConfig config;
    std::vector<std::pair<std::string, std::string>> history;
    GameState state;
    Clock::time_point created;
    Clock::time_point updated;
    std::mutex mutex;
  };

  ApiResponse create(std::string_view body);
  ApiResponse view(Session& session);
  ApiResponse feedback(Session& session, std::string_view body);
  ApiResponse undo(Session& session);
  std::shared_ptr<Session> find(const std::string& id);
  bool erase(const std::string& id);
  std::string fresh_id();
  Clock::time_point now() const;

  PuzzleRegistry& registry_;
  ServiceOptions options_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

// Routes every endpoint of `api` on `server`, plus the static UI if set.
void mount(httplib::Server& server, Api& api);

// Blocks serving on host:port until the server stops.
// Returns false if the address could not be bound.
bool serve(Api& api, const std::string& host, int port);

}  // namespace wordle
