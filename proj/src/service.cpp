#include "mdspline/service.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include <httplib.h>

namespace mdspline::service {

using io::json;

namespace {

int status_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::validation:
    case ErrorKind::unclamped:
    case ErrorKind::io: return 400;
    case ErrorKind::precondition:
    case ErrorKind::out_of_range:
    case ErrorKind::unsupported:
    case ErrorKind::singular: return 422;
    case ErrorKind::internal: return 500;
  }
  return 500;
}

Response error(int status, const std::string& msg, const char* kind = nullptr) {
  json body{{"error", msg}};
  if (kind) body["kind"] = kind;
  return {status, std::move(body)};
}

Response from_error(const Error& e) { return error(status_for(e.kind()), e.what(), to_string(e.kind())); }

// Control points spread along the x axis when a document has none.
std::vector<Point> default_points(const SplineSpace& space) {
  const auto parts = extended_partitions(space);
  std::vector<Point> cps;
  for (int i = 1; i <= parts.size(); ++i) cps.push_back({0.5 * (parts.s(i) + parts.t(i)), 0.0, 0.0});
  return cps;
}

Point point_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(ErrorKind::precondition, "point must have " + std::to_string(dim) + " coordinates");
  Point p{0.0, 0.0, 0.0};
  for (int k = 0; k < dim; ++k) {
    if (!j[k].is_number()) fail(ErrorKind::precondition, "point coordinates must be numbers");
    p[k] = j[k].get<double>();
    if (!std::isfinite(p[k])) fail(ErrorKind::precondition, "point coordinates must be finite");
  }
  return p;
}

double get_number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number())
    fail(ErrorKind::precondition, std::string("missing numeric argument \"") + key + "\"");
  return it->get<double>();
}

int get_int(const json& j, const char* key, std::optional<int> fallback = std::nullopt) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    fail(ErrorKind::precondition, std::string("missing integer argument \"") + key + "\"");
  }
  if (!it->is_number_integer())
    fail(ErrorKind::precondition, std::string("argument \"") + key + "\" must be an integer");
  return it->get<int>();
}

// Matrix from {"matrix": rows|packed} or the shape parameters alpha/beta/gamma,
// truncated to the order required at the break-point.
ConnectionMatrix connection_from_args(const json& args, int order) {
  if (auto it = args.find("matrix"); it != args.end()) {
    json doc{{"domain", {0, 1}}, {"breakpoints", json::array()}, {"degrees", {1}},
             {"continuities", json::array()}, {"connections", {*it}}};
    try {
      return io::document_from_json(doc).space.connections->front();
    } catch (const Error& e) {
      fail(ErrorKind::precondition, e.what());
    }
  }
  const double alpha = args.value("alpha", 1.0);
  const double beta = args.value("beta", 0.0);
  const double gamma = args.value("gamma", 1.0);
  std::vector<std::vector<double>> rows{{1.0}, {0.0, alpha}, {0.0, beta, gamma}};
  if (order > 3)
    fail(ErrorKind::precondition, "shape parameters cover orders up to 3; pass \"matrix\"");
  rows.resize(order);
  try {
    return ConnectionMatrix(std::move(rows));
  } catch (const Error& e) {
    fail(ErrorKind::precondition, e.what());
  }
}

}  // namespace

SessionStore::SessionStore(Options opts) : opts_(opts), salt_(std::random_device{}()) {
  salt_ = (salt_ << 32) ^ std::random_device{}();
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::string SessionStore::next_id() {
  std::lock_guard lock(mu_);
  const std::uint64_t n = ++counter_;
  std::uint64_t h = salt_ ^ (n * 0x9e3779b97f4a7c15ULL);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 29;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

json SessionStore::describe(const Session& s, const MDCurve& c) const {
  json j = io::curve_to_json(c);
  j["session_id"] = s.id;
  j["version"] = s.version;
  j["K"] = c.size();
  j["partitions"] = io::partitions_to_json(c.partitions());
  j["undo_depth"] = s.undo.size();
  return j;
}

Response SessionStore::create(const std::string& body) {
  try {
    io::Document doc = io::parse_document(body);
    const SplineSpace space = validate_space(doc.space);
    if (!doc.control_points) doc.control_points = default_points(space);
    auto curve = std::make_shared<const MDCurve>(space, *doc.control_points, doc.dim);
    auto s = std::make_shared<Session>();
    s->id = next_id();
    s->curve = curve;
    {
      std::lock_guard lock(mu_);
      sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mu);
    return {201, describe(*s, *curve)};
  } catch (const Error& e) {
    // Any problem with the submitted document is the client's.
    return error(e.kind() == ErrorKind::internal ? 500 : 400, e.what(), to_string(e.kind()));
  }
}

Response SessionStore::state(const std::string& id) const {
  const auto s = find(id);
  if (!s) return error(404, "unknown session " + id);
  std::lock_guard lock(s->mu);
  return {200, describe(*s, *s->curve)};
}

Response SessionStore::samples(const std::string& id, const std::string& what, int n) const {
  const auto s = find(id);
  if (!s) return error(404, "unknown session " + id);
  std::shared_ptr<const MDCurve> curve;
  std::uint64_t version;
  {
    std::lock_guard lock(s->mu);
    curve = s->curve;
    version = s->version;
  }
  try {
    io::SampleTable t;
    if (what == "curve")
      t = io::sample_curve(*curve, n);
    else if (what == "basis")
      t = io::sample_basis(curve->basis(), n);
    else if (what == "transitions")
      t = io::sample_transitions(curve->transitions(), n);
    else
      return error(400, "what must be curve, basis or transitions");
    json body = io::to_json(t);
    body["version"] = version;
    body["what"] = what;
    return {200, std::move(body)};
  } catch (const Error& e) {
    return from_error(e);
  }
}

Response SessionStore::op(const std::string& id, const std::string& body) {
  const auto s = find(id);
  if (!s) return error(404, "unknown session " + id);
  json args;
  try {
    args = json::parse(body);
  } catch (const json::parse_error& e) {
    return error(400, std::string("invalid JSON: ") + e.what());
  }
  if (!args.is_object() || !args.contains("op") || !args["op"].is_string())
    return error(400, "body must be an object with a string \"op\"");
  const std::string name = args["op"];

  std::lock_guard lock(s->mu);
  if (auto it = args.find("expected_version"); it != args.end() && !it->is_null()) {
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() != s->version) {
      Response r = error(409, "version mismatch");
      r.body["version"] = s->version;
      return r;
    }
  }
  const MDCurve& cur = *s->curve;
  try {
    std::shared_ptr<const MDCurve> next;
    bool refinement = false;
    if (name == "move_point") {
      const int i = get_int(args, "index");
      if (!args.contains("point")) fail(ErrorKind::precondition, "missing argument \"point\"");
      next = std::make_shared<const MDCurve>(cur.with_point(i, point_from_json(args["point"], cur.dim())));
    } else if (name == "insert_knot") {
      next = std::make_shared<const MDCurve>(insert_knot(cur, get_number(args, "x")).curve);
      refinement = true;
    } else if (name == "elevate") {
      const int times = get_int(args, "times", 1);
      if (times < 1) fail(ErrorKind::precondition, "times must be positive");
      next = std::make_shared<const MDCurve>(elevate_degree(cur, get_int(args, "interval"), times));
      refinement = true;
    } else if (name == "set_connection") {
      const int j = get_int(args, "breakpoint");
      const auto& sp = cur.space();
      if (j < 1 || j > sp.q())
        fail(ErrorKind::precondition, "break-point index must be in 1.." + std::to_string(sp.q()));
      RawSpace raw = sp.raw();
      if (!raw.connections) {
        raw.connections.emplace();
        for (int i = 1; i <= sp.q(); ++i) raw.connections->push_back(ConnectionMatrix::identity(sp.continuity(i) + 1));
      }
      (*raw.connections)[j - 1] = connection_from_args(args, sp.continuity(j) + 1);
      SplineSpace space = [&] {
        try {
          return validate_space(raw);
        } catch (const Error& e) {
          fail(ErrorKind::precondition, e.what());
        }
      }();
      next = std::make_shared<const MDCurve>(space, cur.control_points(), cur.dim());
    } else {
      return error(400, "unknown op \"" + name + "\"");
    }

    json extra;
    if (refinement) {
      const double dev = max_deviation(cur, *next, opts_.invariance_samples);
      double scale = 1.0;
      for (const auto& p : cur.control_points())
        for (double v : p) scale = std::max(scale, std::abs(v));
      const bool ok = dev <= opts_.invariance_tol * scale;
      extra["invariance"] = {{"max_deviation", dev}, {"ok", ok}};
      if (opts_.debug && !ok)
        return error(500, "refinement moved the curve by " + std::to_string(dev), "internal");
    }

    s->undo.push_back(s->curve);
    if (s->undo.size() > opts_.undo_depth) s->undo.pop_front();
    s->curve = std::move(next);
    ++s->version;
    json out = describe(*s, *s->curve);
    if (!extra.is_null()) out.update(extra);
    return {200, std::move(out)};
  } catch (const Error& e) {
    return from_error(e);
  }
}

Response SessionStore::undo(const std::string& id) {
  const auto s = find(id);
  if (!s) return error(404, "unknown session " + id);
  std::lock_guard lock(s->mu);
  if (s->undo.empty()) return error(422, "nothing to undo", "precondition");
  s->curve = std::move(s->undo.back());
  s->undo.pop_back();
  ++s->version;
  return {200, describe(*s, *s->curve)};
}

namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store, const std::string& ui_dir) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/session", [&store](const httplib::Request& req, httplib::Response& res) {
    reply(res, store.create(req.body));
  });
  server.Get(R"(/session/([0-9a-f]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    reply(res, store.state(req.matches[1]));
  });
  server.Get(R"(/session/([0-9a-f]+)/samples)",
             [&store](const httplib::Request& req, httplib::Response& res) {
               const std::string what = req.has_param("what") ? req.get_param_value("what") : "curve";
               int n = 200;
               if (req.has_param("n")) {
                 try {
                   n = std::stoi(req.get_param_value("n"));
                 } catch (const std::exception&) {
                   return reply(res, {400, {{"error", "n must be an integer"}}});
                 }
               }
               if (n < 2 || n > 100000) return reply(res, {400, {{"error", "n must be in 2..100000"}}});
               reply(res, store.samples(req.matches[1], what, n));
             });
  server.Post(R"(/session/([0-9a-f]+)/op)", [&store](const httplib::Request& req, httplib::Response& res) {
    reply(res, store.op(req.matches[1], req.body));
  });
  server.Post(R"(/session/([0-9a-f]+)/undo)", [&store](const httplib::Request& req, httplib::Response& res) {
    reply(res, store.undo(req.matches[1]));
  });
  if (!ui_dir.empty()) server.set_mount_point("/ui", ui_dir);
}

bool serve(const std::string& host, int port, SessionStore& store, const std::string& ui_dir) {
  httplib::Server server;
  register_routes(server, store, ui_dir);
  return server.listen(host, port);
}

}  // namespace mdspline::service
