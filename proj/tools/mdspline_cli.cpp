// mdspline: command-line front end for multi-degree spline spaces and curves.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mdspline/io.hpp"
#include "mdspline/service.hpp"

using namespace mdspline;
using io::json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::validation:
    case ErrorKind::unclamped: return 2;
    case ErrorKind::precondition:
    case ErrorKind::out_of_range:
    case ErrorKind::unsupported: return 3;
    case ErrorKind::io: return 4;
    case ErrorKind::singular:
    case ErrorKind::internal: return 1;
  }
  return 1;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    io::write_text(out, text);
}

void emit(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

std::string join(const std::vector<double>& v) {
  std::string s;
  char buf[40];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return "{" + s + "}";
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

void report(const SplineSpace& sp, const io::Document& doc) {
  const auto parts = extended_partitions(sp);
  std::printf("K=%d\n", sp.dimension());
  std::printf("m=%d\n", sp.max_degree());
  std::printf("domain=[%.17g, %.17g]\n", sp.a(), sp.b());
  std::printf("degrees=%s\n", join_ints(sp.degrees()).c_str());
  for (int i = 1; i <= sp.q(); ++i) {
    std::printf("x_%d=%.17g C^%d", i, sp.x(i), sp.continuity(i));
    if (sp.has_connections() && !sp.connection(i).is_identity()) std::printf(" (connection matrix)");
    std::printf("\n");
  }
  std::printf("s=%s\n", join(parts.s_knots()).c_str());
  std::printf("t=%s\n", join(parts.t_knots()).c_str());
  if (doc.control_points) std::printf("control_points=%zu dim=%d\n", doc.control_points->size(), doc.dim);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-degree spline toolkit"};
  app.require_subcommand(1);

  std::string path, out, what = "basis", format = "csv", host = "127.0.0.1", ui_dir;
  int samples = 200, interval = 0, times = 1, order = 1, port = 8080;
  double x = 0.0;
  bool debug = false;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("document", path, "Space or curve JSON document")->required();
  };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out,-o", out, "Output file (default stdout)"); };

  auto* validate = app.add_subcommand("validate", "Validate a document and print its partitions");
  add_input(validate);

  auto* sample = app.add_subcommand("sample", "Sample basis, transitions, curve or derivative");
  add_input(sample);
  add_out(sample);
  sample->add_option("--what", what, "basis|transitions|curve|derivative")
      ->check(CLI::IsMember({"basis", "transitions", "curve", "derivative"}));
  sample->add_option("--samples,-n", samples, "Number of uniform samples")->check(CLI::Range(2, 10000000));
  sample->add_option("--order,-r", order, "Derivative order for --what derivative")->check(CLI::PositiveNumber);
  sample->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* insert = app.add_subcommand("insert-knot", "Insert one knot into a curve");
  add_input(insert);
  add_out(insert);
  insert->add_option("--x", x, "Parameter value of the new knot")->required();

  auto* elevate = app.add_subcommand("elevate", "Raise the degree of one interval");
  add_input(elevate);
  add_out(elevate);
  elevate->add_option("--interval,-j", interval, "Interval index j (0-based)")->required();
  elevate->add_option("--times,-t", times, "Number of elevation steps")->check(CLI::NonNegativeNumber);

  auto* bezier = app.add_subcommand("to-bezier", "Export per-interval Bezier control polygons");
  add_input(bezier);
  add_out(bezier);

  auto* conventional = app.add_subcommand("to-conventional", "Elevate to a uniform-degree spline");
  add_input(conventional);
  add_out(conventional);

  auto* dump = app.add_subcommand("dump-transitions", "Bernstein tables of the transition functions");
  add_input(dump);
  add_out(dump);

  auto* serve = app.add_subcommand("serve", "Run the JSON editing service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--ui", ui_dir, "Directory served under /ui")->check(CLI::ExistingDirectory);
  serve->add_flag("--debug", debug, "Reject refinements that move the curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the exit code of invalid input.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*serve) {
      service::Options opts;
      opts.debug = debug;
      service::SessionStore store(opts);
      std::fprintf(stderr, "listening on http://%s:%d\n", host.c_str(), port);
      if (!service::serve(host, port, store, ui_dir)) {
        std::fprintf(stderr, "error: cannot bind %s:%d\n", host.c_str(), port);
        return 4;
      }
      return 0;
    }

    const io::Document doc = io::load_document(path);

    if (*validate) {
      const SplineSpace sp = validate_space(doc.space);
      if (doc.control_points) (void)io::curve_from_document(doc);
      report(sp, doc);
      return 0;
    }
    if (*sample) {
      io::SampleTable table;
      if (what == "basis") {
        table = io::sample_basis(basis_from_transitions(validate_space(doc.space)), samples);
      } else if (what == "transitions") {
        table = io::sample_transitions(solve_all(validate_space(doc.space)), samples);
      } else {
        const MDCurve c = io::curve_from_document(doc);
        table = what == "curve" ? io::sample_curve(c, samples) : io::sample_derivative(c, order, samples);
      }
      if (format == "csv")
        emit(io::to_csv(table), out);
      else
        emit(io::to_json(table), out);
      return 0;
    }
    if (*dump) {
      emit(io::transitions_to_json(solve_all(validate_space(doc.space))), out);
      return 0;
    }

    const MDCurve c = io::curve_from_document(doc);
    if (*insert) emit(io::curve_to_json(insert_knot(c, x).curve), out);
    if (*elevate) emit(io::curve_to_json(elevate_degree(c, interval, times)), out);
    if (*bezier) emit(io::bezier_to_json(to_bezier(c), c.dim()), out);
    if (*conventional) emit(io::curve_to_json(to_conventional(c)), out);
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
