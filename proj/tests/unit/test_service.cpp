#include <doctest.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <httplib.h>

#include "mdspline/service.hpp"

using namespace mdspline;
using namespace mdspline::service;
using io::json;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(MDSPLINE_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string create_session(SessionStore& store, const std::string& doc) {
  const auto r = store.create(doc);
  REQUIRE(r.status == 201);
  return r.body["session_id"];
}

Response op(SessionStore& store, const std::string& id, json body) { return store.op(id, body.dump()); }

const char* kGcParametric =
    R"({"domain":[0,3],"breakpoints":[0.75,1.75,2.5],"degrees":[3,4,3,1],"continuities":[2,2,0],
        "control_points":[[0,0],[0.2,1],[0.8,1.6],[1.5,1.9],[2.3,1.6],[2.8,1],[3,0],[1.5,-0.8]]})";

}  // namespace

TEST_CASE("create sessions") {
  SessionStore store;
  const auto r = store.create(fixture("running.json"));
  CHECK(r.status == 201);
  CHECK(r.body["K"] == 7);
  CHECK(r.body["version"] == 0);
  CHECK(r.body["partitions"]["s"] == json({0, 0, 1, 1, 3, 3, 3}));
  const auto again = store.create(fixture("running.json"));
  CHECK(again.body["session_id"] != r.body["session_id"]);
  CHECK(store.size() == 2);

  CHECK(store.create(fixture("bad_continuity.json")).status == 400);
  CHECK(store.create(fixture("malformed.json")).status == 400);
  const auto bare = store.create(R"({"domain":[0,1],"breakpoints":[],"degrees":[2],"continuities":[]})");
  CHECK(bare.status == 201);
  CHECK(bare.body["control_points"].size() == 3);
}

TEST_CASE("unknown sessions and bad requests") {
  SessionStore store;
  CHECK(store.state("0123").status == 404);
  CHECK(store.samples("0123", "curve", 10).status == 404);
  CHECK(store.op("0123", R"({"op":"move_point"})").status == 404);
  CHECK(store.undo("0123").status == 404);
  const auto id = create_session(store, fixture("running.json"));
  CHECK(store.op(id, "{").status == 400);
  CHECK(store.op(id, R"({"op":"rotate"})").status == 400);
  CHECK(store.samples(id, "weights", 10).status == 400);
}

TEST_CASE("operations, versions and undo") {
  SessionStore store;
  const auto id = create_session(store, fixture("running.json"));

  auto r = op(store, id, {{"op", "insert_knot"}, {"x", 2.6}, {"expected_version", 0}});
  REQUIRE(r.status == 200);
  CHECK(r.body["K"] == 8);
  CHECK(r.body["version"] == 1);
  CHECK(r.body["invariance"]["ok"] == true);

  CHECK(op(store, id, {{"op", "insert_knot"}, {"x", 2.0}, {"expected_version", 0}}).status == 409);
  CHECK(op(store, id, {{"op", "insert_knot"}, {"x", 9.0}}).status == 422);
  CHECK(op(store, id, {{"op", "insert_knot"}}).status == 422);
  CHECK(op(store, id, {{"op", "elevate"}, {"interval", 9}}).status == 422);
  CHECK(op(store, id, {{"op", "move_point"}, {"index", 0}, {"point", {1, 1}}}).status == 422);
  CHECK(store.state(id).body["version"] == 1);

  r = op(store, id, {{"op", "elevate"}, {"interval", 2}, {"times", 3}, {"expected_version", 1}});
  REQUIRE(r.status == 200);
  CHECK(r.body["K"] == 11);

  r = store.undo(id);
  CHECK(r.status == 200);
  CHECK(r.body["K"] == 8);
  CHECK(r.body["version"] == 3);
  r = store.undo(id);
  CHECK(r.body["K"] == 7);
  CHECK(store.undo(id).status == 422);
}

TEST_CASE("move_point") {
  SessionStore store;
  const auto id = create_session(store, fixture("running.json"));
  const auto before = store.samples(id, "curve", 101).body["rows"];
  auto r = op(store, id, {{"op", "move_point"}, {"index", 3}, {"point", {3, 3.5}}});
  REQUIRE(r.status == 200);
  CHECK(r.body["version"] == 1);
  CHECK(store.samples(id, "curve", 101).body["rows"] == before);

  r = op(store, id, {{"op", "move_point"}, {"index", 3}, {"point", {-1.25, 0.125}}});
  CHECK(r.body["control_points"][2] == json({-1.25, 0.125}));
  CHECK(store.samples(id, "curve", 101).body["rows"] != before);
  r = store.undo(id);
  CHECK(r.body["control_points"][2] == json({3, 3.5}));
  CHECK(store.samples(id, "curve", 101).body["rows"] == before);
}

TEST_CASE("undo depth is bounded") {
  SessionStore store;
  const auto id = create_session(store, fixture("running.json"));
  for (int k = 0; k < 70; ++k)
    REQUIRE(op(store, id, {{"op", "move_point"}, {"index", 1}, {"point", {0.01 * k, 0}}}).status == 200);
  CHECK(store.state(id).body["undo_depth"] == 64);
  int undone = 0;
  while (store.undo(id).status == 200) ++undone;
  CHECK(undone == 64);
}

TEST_CASE("identity connection equals the parametric space") {
  SessionStore store;
  const auto par = create_session(store, kGcParametric);
  const auto geo = create_session(store, kGcParametric);
  for (int j : {1, 2})
    REQUIRE(op(store, geo, {{"op", "set_connection"}, {"breakpoint", j}, {"alpha", 1}, {"beta", 0}, {"gamma", 1}})
                .status == 200);
  REQUIRE(op(store, geo, {{"op", "set_connection"}, {"breakpoint", 3}, {"matrix", {{1}}}}).status == 200);
  for (const char* what : {"curve", "basis", "transitions"}) {
    const auto a = store.samples(par, what, 301).body["rows"];
    const auto b = store.samples(geo, what, 301).body["rows"];
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r)
      for (std::size_t c = 0; c < a[r].size(); ++c)
        worst = std::max(worst, std::abs(a[r][c].get<double>() - b[r][c].get<double>()));
    CHECK(worst <= 1e-12);
  }
  CHECK(op(store, geo, {{"op", "set_connection"}, {"breakpoint", 1}, {"alpha", -1}}).status == 422);
  CHECK(op(store, geo, {{"op", "set_connection"}, {"breakpoint", 4}}).status == 422);

  const auto r = op(store, geo, {{"op", "set_connection"}, {"breakpoint", 1}, {"alpha", 1.5}, {"beta", 0.5}, {"gamma", 2}});
  CHECK(r.status == 200);
  CHECK(r.body["connections"][0] == json({1, 0, 1.5, 0, 0.5, 2}));
}

TEST_CASE("debug mode rejects refinements that move the curve") {
  Options opts;
  opts.debug = true;
  opts.invariance_tol = -1.0;
  SessionStore store(opts);
  const auto id = create_session(store, fixture("running.json"));
  const auto r = op(store, id, {{"op", "insert_knot"}, {"x", 2.6}});
  CHECK(r.status == 500);
  CHECK(store.state(id).body["K"] == 7);
  CHECK(store.state(id).body["version"] == 0);
}

TEST_CASE("racing writers with expected_version") {
  SessionStore store;
  const auto id = create_session(store, fixture("running.json"));
  std::atomic<int> ok{0}, conflicts{0};
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      for (int k = 0; k < 25; ++k) {
        const std::uint64_t v = store.state(id).body["version"];
        const auto r = op(store, id, {{"op", "move_point"}, {"index", 2}, {"point", {w, k}}, {"expected_version", v}});
        (r.status == 200 ? ok : conflicts)++;
      }
    });
  for (auto& t : workers) t.join();
  CHECK(ok + conflicts == 100);
  CHECK(store.state(id).body["version"] == ok.load());
}

TEST_CASE("HTTP routes") {
  SessionStore store;
  httplib::Server server;
  register_routes(server, store);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Post("/session", fixture("running.json"), "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  const std::string id = json::parse(res->body)["session_id"];

  res = cli.Get("/session/" + id);
  REQUIRE(res);
  CHECK(json::parse(res->body)["K"] == 7);

  res = cli.Get("/session/" + id + "/samples?what=basis&n=11");
  REQUIRE(res);
  const auto table = json::parse(res->body);
  CHECK(table["rows"].size() == 11);
  CHECK(table["header"].size() == 8);
  CHECK(cli.Get("/session/" + id + "/samples?n=1")->status == 400);

  res = cli.Post("/session/" + id + "/op", R"({"op":"insert_knot","x":2.6,"expected_version":0})", "application/json");
  REQUIRE(res);
  CHECK(json::parse(res->body)["K"] == 8);
  res = cli.Post("/session/" + id + "/op", R"({"op":"insert_knot","x":2.0,"expected_version":0})", "application/json");
  CHECK(res->status == 409);
  res = cli.Post("/session/" + id + "/undo", "", "application/json");
  CHECK(json::parse(res->body)["K"] == 7);
  CHECK(cli.Get("/session/ffff")->status == 404);

  httplib::Request pre;
  pre.method = "OPTIONS";
  pre.path = "/session";
  auto opt = cli.send(pre);
  REQUIRE(opt);
  CHECK(opt->status == 204);

  server.stop();
  th.join();
}
