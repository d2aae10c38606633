#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "mdspline/io.hpp"
#include "support/oracles.hpp"

using namespace mdspline;
using namespace mdspline::testing;
using io::json;

namespace {

const std::string kRunning = MDSPLINE_FIXTURE_DIR "/running.json";

Error error_of(const std::string& text) {
  try {
    io::parse_document(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("document was accepted");
  return Error(ErrorKind::internal, "");
}

bool contains(const Error& e, const std::string& s) {
  return std::string(e.what()).find(s) != std::string::npos;
}

}  // namespace

TEST_CASE("load the running fixture") {
  const auto doc = io::load_document(kRunning);
  CHECK(doc.dim == 2);
  REQUIRE(doc.control_points);
  CHECK(doc.control_points->size() == 7);
  const auto c = io::curve_from_document(doc);
  CHECK(c.size() == 7);
  CHECK(validate_space(doc.space) == validate_space(running_space()));
}

TEST_CASE("round trip is semantically equal") {
  const auto c = io::curve_from_document(io::load_document(kRunning));
  const json once = io::curve_to_json(c);
  const auto again = io::curve_from_document(io::parse_document(once.dump()));
  CHECK(again.space() == c.space());
  CHECK(again.control_points() == c.control_points());
  CHECK(io::curve_to_json(again) == once);

  const auto gc = validate_space(gc_space(1.25, 0.5, 2.0));
  const auto back = io::document_from_json(io::space_to_json(gc));
  CHECK(validate_space(back.space) == gc);
}

TEST_CASE("connection formats") {
  const std::string base = R"({"domain":[0,3],"breakpoints":[0.75,1.75,2.5],"degrees":[3,4,3,1],"continuities":[2,2,0],)";
  const auto nested = io::parse_document(base + R"("connections":[[[1],[0,2],[0,0.5,3]],[[1],[0,1],[0,0,1]],[[1]]]})");
  const auto packed = io::parse_document(base + R"("connections":[[1,0,2,0,0.5,3],[1,0,1,0,0,1],[1]]})");
  const auto full = io::parse_document(base + R"("connections":[[[1,0,0],[0,2,0],[0,0.5,3]],[[1,0,0],[0,1,0],[0,0,1]],[[1]]]})");
  CHECK(validate_space(nested.space) == validate_space(packed.space));
  CHECK(validate_space(nested.space) == validate_space(full.space));
  CHECK(error_of(base + R"("connections":[[[1,0,0],[0,2,1],[0,0.5,3]],[[1]],[[1]]]})").kind() ==
        ErrorKind::validation);
  CHECK(error_of(base + R"("connections":[[1,0,2,0],[1],[1]]})").kind() == ErrorKind::validation);
}

TEST_CASE("schema and syntax errors") {
  const auto syntax = error_of(R"({"domain": [0, 1],
    "degrees": [3,)");
  CHECK(syntax.kind() == ErrorKind::io);
  CHECK(contains(syntax, "line 2"));

  const auto missing = error_of(R"({"domain":[0,1],"breakpoints":[],"continuities":[]})");
  CHECK(missing.kind() == ErrorKind::validation);
  CHECK(contains(missing, "degrees"));

  CHECK(error_of(R"({"domain":[0],"breakpoints":[],"degrees":[2],"continuities":[]})").kind() ==
        ErrorKind::validation);
  CHECK(error_of(R"({"domain":[0,1],"breakpoints":[],"degrees":[2.5],"continuities":[]})").kind() ==
        ErrorKind::validation);
  CHECK(error_of(R"({"domain":[0,1],"breakpoints":[],"degrees":[2],"continuities":[],"control_points":[[0,0],[1]]})")
            .kind() == ErrorKind::validation);
  CHECK(error_of("[1,2]").kind() == ErrorKind::validation);

  try {
    io::load_document("/nonexistent/doc.json");
    FAIL("loaded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
  const auto no_points = io::parse_document(R"({"domain":[0,1],"breakpoints":[],"degrees":[2],"continuities":[]})");
  CHECK_THROWS_AS(io::curve_from_document(no_points), Error);
}

TEST_CASE("sample tables") {
  const auto c = io::curve_from_document(io::load_document(kRunning));
  CHECK_THROWS_AS(io::uniform_samples(0, 1, 1), Error);
  const auto xs = io::uniform_samples(0, 7, 8);
  CHECK(xs.front() == 0.0);
  CHECK(xs.back() == 7.0);

  const auto basis = io::sample_basis(c.basis(), 50);
  CHECK(basis.header.size() == 8);
  CHECK(basis.rows.size() == 50);
  for (const auto& row : basis.rows) {
    double sum = 0.0;
    for (std::size_t k = 1; k < row.size(); ++k) sum += row[k];
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
  for (std::size_t k = 1; k < basis.rows.size(); ++k) CHECK(basis.rows[k][0] > basis.rows[k - 1][0]);

  const auto curve = io::sample_curve(c, 3);
  CHECK(curve.header == std::vector<std::string>{"t", "x", "y"});
  CHECK(io::sample_transitions(c.transitions(), 4).header.size() == 8);
  CHECK(io::sample_derivative(c, 2, 5).rows.size() == 5);
  CHECK_THROWS_AS(io::sample_derivative(c, 0, 5), Error);

  const std::string csv = io::to_csv(curve);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,x,y");
  std::getline(in, line);
  CHECK(line == "0,0,0");
  const json j = io::to_json(curve);
  CHECK(j["rows"].size() == 3);
  CHECK(j["header"][0] == "t");
}

TEST_CASE("exports") {
  const auto c = io::curve_from_document(io::load_document(kRunning));
  const json bz = io::bezier_to_json(to_bezier(c), 2);
  CHECK(bz["segments"].size() == 4);
  CHECK(bz["segments"][2]["degree"] == 4);
  const json tr = io::transitions_to_json(c.transitions());
  CHECK(tr["transitions"].size() == 7);
  CHECK(tr["partitions"]["s"] == json({0, 0, 1, 1, 3, 3, 3}));
}

TEST_CASE("write_text") {
  const auto dir = std::filesystem::temp_directory_path() / "mdspline_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "doc.json";
  const auto c = io::curve_from_document(io::load_document(kRunning));
  io::write_text(path, io::curve_to_json(c).dump(2));
  CHECK(io::curve_from_document(io::load_document(path)).control_points() == c.control_points());
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::write_text("/nonexistent/dir/x.json", "{}"), Error);
}
