#pragma once

// In-memory editing sessions behind a small JSON-over-HTTP API.
//
//   POST /session                      space document -> new session
//   GET  /session/{id}                 current state
//   GET  /session/{id}/samples         ?what=curve|basis|transitions&n=N
//   POST /session/{id}/op              {"op": ..., "expected_version": v, ...}
//   POST /session/{id}/undo

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "mdspline/io.hpp"

namespace httplib {
class Server;
}

namespace mdspline::service {

struct Response {
  int status = 200;
  io::json body;
};

struct Options {
  bool debug = false;        // reject refinements that move the curve
  std::size_t undo_depth = 64;
  double invariance_tol = 1e-10;
  int invariance_samples = 400;
};

class SessionStore {
 public:
  explicit SessionStore(Options opts = {});

  Response create(const std::string& body);
  Response state(const std::string& id) const;
  Response samples(const std::string& id, const std::string& what, int n) const;
  Response op(const std::string& id, const std::string& body);
  Response undo(const std::string& id);

  std::size_t size() const;

 private:
  struct Session {
    std::string id;
    mutable std::mutex mu;
    std::shared_ptr<const MDCurve> curve;
    std::deque<std::shared_ptr<const MDCurve>> undo;
    std::uint64_t version = 0;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string next_id();
  io::json describe(const Session& s, const MDCurve& c) const;

  Options opts_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;
};

/// Installs the routes (and CORS headers) on a server. If ui_dir is
/// non-empty it is served under /ui.
void register_routes(httplib::Server& server, SessionStore& store, const std::string& ui_dir = {});

/// Blocks until the server stops. Returns false if binding failed.
bool serve(const std::string& host, int port, SessionStore& store, const std::string& ui_dir = {});

}  // namespace mdspline::service
