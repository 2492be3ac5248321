#include <atomic>
#include <thread>

#include "doctest.h"
#include "fixtures.hpp"
#include "httplib.h"
#include "wordle/service.hpp"

using namespace wordle;
using nlohmann::json;
using wordle::testing::standard_puzzle;

namespace {

PuzzleRegistry& shared_registry() {
  static PuzzleRegistry registry;
  static const bool installed = [] {
    registry.install(std::shared_ptr<const Puzzle>(&standard_puzzle(), [](const Puzzle*) {}));
    return true;
  }();
  (void)installed;
  return registry;
}

std::string create(Api& api, const json& body = json::object()) {
  const auto r = api.call("POST", "/sessions", body.dump());
  REQUIRE(r.status == 201);
  return r.body["id"].get<std::string>();
}

ApiResponse submit(Api& api, const std::string& id, const std::string& guess, const std::string& pattern) {
  return api.call("POST", "/sessions/" + id + "/feedback", json{{"guess", guess}, {"pattern", pattern}}.dump());
}

// The parts of a view that depend only on (config, history).
json advice_part(json view) {
  view.erase("id");
  return view;
}

}  // namespace

TEST_CASE("health") {
  Api api(shared_registry());
  const auto r = api.call("GET", "/health", "");
  CHECK(r.status == 200);
  CHECK(r.body["status"] == "ok");
  CHECK(r.body["api_version"] == kApiVersion);
}

TEST_CASE("a default session opens with salet") {
  Api api(shared_registry());
  const auto r = api.call("POST", "/sessions", "");
  REQUIRE(r.status == 201);
  CHECK(r.body["pick"] == "salet");
  CHECK(r.body["eligible_count"] == 2315);
  CHECK(r.body["solved"] == false);
  REQUIRE(r.body["suggestions"].size() == 1);
  CHECK(r.body["suggestions"][0]["word"] == "salet");
  CHECK(r.body["suggestions"][0]["score"].get<double>() > 5.8);
  CHECK(r.body["suggestions"][0]["q_mean"].is_null());
  CHECK(r.body["config"]["mode"] == "easy");
  CHECK(r.body["config"]["policy"] == "rollout-mig");
  CHECK(r.body["history"].empty());
}

TEST_CASE("config is validated field by field") {
  Api api(shared_registry());
  auto check_field = [&](const json& body, const std::string& field) {
    const auto r = api.call("POST", "/sessions", body.dump());
    CHECK(r.status == 400);
    CHECK(r.body["error"]["code"] == "validation");
    CHECK(r.body["error"]["field"] == field);
  };
  check_field({{"policy", "rollout-xyz"}}, "policy");
  check_field({{"mode", "medium"}}, "mode");
  check_field({{"length", 7}}, "length");
  check_field({{"shortlist", 0}}, "shortlist");
  check_field({{"opener", "qqqqq"}}, "opener");
  check_field({{"opener", "sale"}}, "opener");
  check_field({{"mode", 3}}, "mode");
  const auto bad = api.call("POST", "/sessions", "{not json");
  CHECK(bad.status == 400);
  CHECK(bad.body["error"]["field"] == "body");
  CHECK(api.session_count() == 0);
}

TEST_CASE("six-letter hard session") {
  PuzzleRegistry registry;
  Api api(registry);
  const auto r = api.call("POST", "/sessions", json{{"mode", "hard"}, {"length", 6}}.dump());
  REQUIRE(r.status == 201);
  CHECK(r.body["config"]["length"] == 6);
  CHECK(r.body["config"]["mode"] == "hard");
  CHECK(r.body["config"]["opener"].is_null());
  CHECK(r.body["eligible_count"] == registry.puzzle(6).mysteries().size());
  CHECK(r.body["pick"].get<std::string>().size() == 6);
}

TEST_CASE("feedback narrows and suggests") {
  Api api(shared_registry());
  const auto id = create(api);
  const auto r = submit(api, id, "salet", "BBBBB");
  REQUIRE(r.status == 200);
  CHECK(r.body["eligible_count"] == 221);
  CHECK(r.body["history"] == json::array({{{"guess", "salet"}, {"pattern", "BBBBB"}}}));
  CHECK(r.body["suggestions"].size() == 10);
  CHECK(r.body["pick"] == r.body["suggestions"][0]["word"]);
  for (const auto& s : r.body["suggestions"]) CHECK(s["q_mean"].is_number());
  // Suggestions are ordered by expected further guesses.
  for (std::size_t i = 1; i < r.body["suggestions"].size(); ++i) {
    CHECK(r.body["suggestions"][i - 1]["q_mean"].get<double>() <= r.body["suggestions"][i]["q_mean"].get<double>());
  }
}

TEST_CASE("input forms are normalized") {
  Api api(shared_registry());
  const auto id = create(api);
  // 0 is all gray as a base-3 code.
  const auto r = submit(api, id, "SaLeT", "0");
  REQUIRE(r.status == 200);
  CHECK(r.body["history"][0] == json{{"guess", "salet"}, {"pattern", "BBBBB"}});
}

TEST_CASE("all green solves the session") {
  Api api(shared_registry());
  const auto id = create(api);
  const auto r = submit(api, id, "crate", "GGGGG");
  REQUIRE(r.status == 200);
  CHECK(r.body["solved"] == true);
  CHECK(r.body["eligible_count"] == 1);
  CHECK(r.body["suggestions"].empty());
  CHECK(r.body["pick"].is_null());
  CHECK(submit(api, id, "trace", "GGGGG").status == 409);
}

TEST_CASE("bad input is rejected and leaves the session alone") {
  Api api(shared_registry());
  const auto id = create(api);
  REQUIRE(submit(api, id, "salet", "BBBBB").status == 200);
  const auto before = api.call("GET", "/sessions/" + id, "").body;

  auto r = submit(api, id, "crate", "BXBBB");
  CHECK(r.status == 400);
  CHECK(r.body["error"]["field"] == "pattern");
  r = submit(api, id, "cratx", "BBBBB");
  CHECK(r.status == 400);
  CHECK(r.body["error"]["field"] == "guess");
  CHECK(r.body["error"]["message"].get<std::string>().find("closest") != std::string::npos);
  r = api.call("POST", "/sessions/" + id + "/feedback", R"({"guess": "crate"})");
  CHECK(r.status == 400);
  // s, a, l, e and t are gray, so no answer can show a green s.
  r = submit(api, id, "shown", "GBBBB");
  CHECK(r.status == 409);
  CHECK(r.body["error"]["code"] == "conflict");
  CHECK(r.body["error"]["message"].get<std::string>().find("re-check") != std::string::npos);

  CHECK(api.call("GET", "/sessions/" + id, "").body == before);
}

TEST_CASE("hard mode lists broken rules") {
  Api api(shared_registry());
  const auto id = create(api, {{"mode", "hard"}});
  REQUIRE(submit(api, id, "salet", "BYBBG").status == 200);
  const auto r = submit(api, id, "crate", "BBBBB");
  CHECK(r.status == 400);
  CHECK(r.body["error"]["field"] == "guess");
  REQUIRE(r.body["error"]["violations"].is_array());
  CHECK_FALSE(r.body["error"]["violations"].empty());
}

TEST_CASE("undo") {
  Api api(shared_registry());
  const auto id = create(api);
  const auto fresh = api.call("GET", "/sessions/" + id, "").body;
  REQUIRE(submit(api, id, "salet", "BBBBB").status == 200);
  auto r = api.call("POST", "/sessions/" + id + "/undo", "");
  REQUIRE(r.status == 200);
  CHECK(r.body == fresh);

  const auto one = submit(api, id, "salet", "BBBBB").body;
  REQUIRE(submit(api, id, "corny", "BYBBB").status == 200);
  r = api.call("POST", "/sessions/" + id + "/undo", "");
  CHECK(r.body == one);
  api.call("POST", "/sessions/" + id + "/undo", "");
  r = api.call("POST", "/sessions/" + id + "/undo", "");
  CHECK(r.status == 400);
  CHECK(r.body["error"]["code"] == "validation");
}

TEST_CASE("suggestions are a function of config and history") {
  Api api(shared_registry());
  const json config = {{"mode", "hard"}, {"policy", "rollout-gep"}, {"shortlist", 5}};
  const auto a = create(api, config);
  const auto b = create(api, config);
  CHECK(a != b);
  submit(api, a, "salet", "BBBBB");
  submit(api, a, "corny", "BYBBB");
  submit(api, b, "salet", "BBBBB");
  const auto vb = submit(api, b, "corny", "BYBBB").body;
  const auto va = api.call("GET", "/sessions/" + a, "").body;
  CHECK(advice_part(va) == advice_part(vb));
}

TEST_CASE("delete and unknown sessions") {
  Api api(shared_registry());
  const auto id = create(api);
  CHECK(api.call("DELETE", "/sessions/" + id, "").status == 204);
  CHECK(api.call("GET", "/sessions/" + id, "").status == 404);
  CHECK(submit(api, id, "salet", "BBBBB").status == 404);
  CHECK(api.call("GET", "/nowhere", "").status == 404);
  CHECK(api.call("PUT", "/sessions", "").status == 405);
}

TEST_CASE("idle sessions are evicted") {
  auto clock = std::make_shared<std::atomic<long long>>(0);
  ServiceOptions options;
  options.idle_timeout = std::chrono::hours(24);
  options.now = [clock] { return Clock::time_point(std::chrono::seconds(clock->load())); };
  Api api(shared_registry(), options);
  const auto old_id = create(api);
  *clock = 20 * 3600;
  const auto young_id = create(api);
  *clock = 25 * 3600;
  CHECK(api.call("GET", "/sessions/" + old_id, "").status == 404);
  CHECK(api.call("GET", "/sessions/" + young_id, "").status == 200);
  *clock = 45 * 3600;
  CHECK(api.evict_idle() == 1);
  CHECK(api.session_count() == 0);
}

TEST_CASE("concurrent submits to one session are serialized") {
  Api api(shared_registry());
  const auto id = create(api, {{"policy", "mig"}});
  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&] {
      const auto r = submit(api, id, "salet", "BBBBB");
      if (r.status == 200) ++ok;
      if (r.status == 409) ++conflict;
    });
  }
  for (auto& t : pool) t.join();
  // Repeating a gray guess is always consistent, so every submit lands.
  CHECK(ok == 8);
  const auto view = api.call("GET", "/sessions/" + id, "").body;
  CHECK(view["history"].size() == 8);
  CHECK(view["eligible_count"] == 221);
}

TEST_CASE("the same API over a socket") {
  Api api(shared_registry());
  httplib::Server server;
  mount(server, api);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread runner([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  auto created = client.Post("/sessions", R"({"mode": "hard"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const auto id = json::parse(created->body)["id"].get<std::string>();
  auto fed = client.Post("/sessions/" + id + "/feedback", R"({"guess": "salet", "pattern": "BBBBB"})",
                         "application/json");
  REQUIRE(fed);
  CHECK(fed->status == 200);
  CHECK(fed->get_header_value("Content-Type") == "application/json");
  const auto direct = api.call("GET", "/sessions/" + id, "");
  CHECK(json::parse(fed->body) == direct.body);
  auto bad = client.Post("/sessions/" + id + "/feedback", R"({"guess": "salet", "pattern": "GGGGG"})",
                         "application/json");
  REQUIRE(bad);
  // salet reuses letters already shown gray, which hard mode forbids.
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body)["error"]["violations"].is_array());
  auto gone = client.Delete("/sessions/" + id);
  REQUIRE(gone);
  CHECK(gone->status == 204);
  CHECK(client.Get("/sessions/" + id)->status == 404);

  server.stop();
  runner.join();
}
