#include "wordle/service.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "httplib.h"

#include "wordle/errors.hpp"

namespace wordle {

namespace {

ApiResponse error(int status, std::string code, const std::string& message, nlohmann::json extra = nullptr) {
  nlohmann::json e = {{"code", std::move(code)}, {"message", message}};
  if (extra.is_object()) e.update(extra);
  return {status, {{"error", e}}};
}

ApiResponse validation(const std::string& message, const std::string& field) {
  return error(400, "validation", message, {{"field", field}});
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = i;
    while (j < path.size() && path[j] != '/') ++j;
    if (j > i) parts.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

nlohmann::json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return nullptr;
  return nlohmann::json::parse(body);
}

}  // namespace

Api::Api(PuzzleRegistry& registry, ServiceOptions options) : registry_(registry), options_(std::move(options)) {}

Clock::time_point Api::now() const { return options_.now ? options_.now() : Clock::now(); }

std::string Api::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(8) << (++counter_ & 0xFFFFFFFF);
  return out.str();
}

std::size_t Api::session_count() {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::size_t Api::evict_idle() {
  const auto cutoff = now() - options_.idle_timeout;
  std::lock_guard lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    // A session busy with a request is not idle.
    bool idle = false;
    if (std::unique_lock session_lock(it->second->mutex, std::try_to_lock); session_lock.owns_lock()) {
      idle = it->second->updated < cutoff;
    }
    if (idle) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::shared_ptr<Api::Session> Api::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool Api::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  return sessions_.erase(id) > 0;
}

ApiResponse Api::call(std::string_view method, std::string_view path, std::string_view body) {
  try {
    evict_idle();
    const auto parts = split_path(path);
    if (parts.size() == 1 && parts[0] == "health") {
      if (method != "GET") return error(405, "method_not_allowed", "use GET");
      return {200, {{"status", "ok"}, {"api_version", kApiVersion}, {"sessions", session_count()}}};
    }
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      return error(404, "not_found", "no such endpoint: " + std::string(path));
    }
    if (parts.size() == 1) {
      if (method != "POST") return error(405, "method_not_allowed", "use POST to create a session");
      return create(body);
    }
    const auto session = find(parts[1]);
    if (!session) return error(404, "not_found", "unknown or expired session '" + parts[1] + "'");
    if (parts.size() == 2) {
      if (method == "GET") {
        std::lock_guard lock(session->mutex);
        return view(*session);
      }
      if (method == "DELETE") {
        erase(parts[1]);
        return {204, nullptr};
      }
      return error(405, "method_not_allowed", "use GET or DELETE on a session");
    }
    if (method != "POST") return error(405, "method_not_allowed", "use POST");
    std::lock_guard lock(session->mutex);
    if (parts[2] == "feedback") return feedback(*session, body);
    if (parts[2] == "undo") return undo(*session);
    return error(404, "not_found", "no such endpoint: " + std::string(path));
  } catch (const nlohmann::json::exception& e) {
    return validation(std::string("request body is not valid JSON: ") + e.what(), "body");
  } catch (const FieldError& e) {
    return validation(e.what(), e.field());
  } catch (const Error& e) {
    return error(500, "internal", e.what());
  }
}

ApiResponse Api::create(std::string_view body) {
  const auto config = parse_assistant_config(parse_body(body));
  const Puzzle& puzzle = registry_.puzzle(config.length);
  if (!config.opener.empty()) {
    try {
      resolve_guess(puzzle, config.opener);
    } catch (const DataError& e) {
      return validation(e.what(), "opener");
    }
  }
  auto session = std::make_shared<Session>();
  session->config = config;
  session->state = GameState::initial(puzzle);
  session->created = session->updated = now();
  {
    std::lock_guard lock(mutex_);
    do {
      session->id = fresh_id();
    } while (sessions_.count(session->id));
    sessions_[session->id] = session;
  }
  std::lock_guard lock(session->mutex);
  auto response = view(*session);
  response.status = 201;
  return response;
}

ApiResponse Api::view(Session& session) {
  const Puzzle& puzzle = registry_.puzzle(session.config.length);
  auto& library = registry_.library(session.config.length);
  nlohmann::json history = nlohmann::json::array();
  for (const auto& [g, p] : session.history) history.push_back({{"guess", g}, {"pattern", p}});
  nlohmann::json body = {{"api_version", kApiVersion},
                         {"id", session.id},
                         {"config", to_json(session.config)},
                         {"history", history}};
  body.update(to_json(advise(puzzle, library, session.config, session.state), session.config));
  return {200, body};
}

ApiResponse Api::feedback(Session& session, std::string_view body) {
  const auto j = parse_body(body);
  if (!j.is_object()) return validation("expected an object with guess and pattern", "body");
  if (!j.contains("guess") || !j["guess"].is_string()) return validation("guess must be a string", "guess");
  if (!j.contains("pattern") || !j["pattern"].is_string()) return validation("pattern must be a string", "pattern");
  const Puzzle& puzzle = registry_.puzzle(session.config.length);
  const auto guess_text = j["guess"].get<std::string>();
  const auto pattern_text = j["pattern"].get<std::string>();
  GuessId guess;
  Pattern pattern;
  try {
    guess = resolve_guess(puzzle, guess_text);
  } catch (const DataError& e) {
    return validation(e.what(), "guess");
  }
  try {
    pattern = parse_pattern(pattern_text, puzzle.word_length());
  } catch (const DataError& e) {
    return validation(e.what(), "pattern");
  }
  const std::string word = puzzle.guesses()[guess];
  const std::string colors = to_string(pattern, puzzle.word_length());
  try {
    GameState next = apply_turn(puzzle, session.config.mode, session.state, word, colors);
    session.state = std::move(next);
  } catch (const GuessNotAllowed& e) {
    return error(400, "validation", e.what(), {{"field", "guess"}, {"violations", e.violations()}});
  } catch (const InconsistentFeedback& e) {
    return error(409, "conflict", e.what());
  } catch (const ProtocolError& e) {
    return error(409, "conflict", e.what());
  }
  session.history.emplace_back(word, colors);
  session.updated = now();
  return view(session);
}

ApiResponse Api::undo(Session& session) {
  if (session.history.empty()) return validation("nothing to undo", "history");
  session.history.pop_back();
  session.state = replay_turns(registry_.puzzle(session.config.length), session.config.mode, session.history);
  session.updated = now();
  return view(session);
}

void mount(httplib::Server& server, Api& api) {
  auto handle = [&api](const httplib::Request& req, httplib::Response& res) {
    const auto r = api.call(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    if (r.status != 204) res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/health", handle);
  server.Post("/sessions", handle);
  server.Get(R"(/sessions/([^/]+))", handle);
  server.Delete(R"(/sessions/([^/]+))", handle);
  server.Post(R"(/sessions/([^/]+)/(feedback|undo))", handle);
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  if (!api.options().static_dir.empty()) server.set_mount_point("/", api.options().static_dir);
}

bool serve(Api& api, const std::string& host, int port) {
  httplib::Server server;
  mount(server, api);
  return server.listen(host, port);
}

}  // namespace wordle
