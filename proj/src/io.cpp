#include "mdspline/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mdspline::io {

namespace {

[[noreturn]] void schema(const std::string& msg) { fail(ErrorKind::validation, msg); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(where + ": number must be finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e9) return static_cast<int>(v);
    }
    schema(where + ": expected an integer");
  }
  return j.get<int>();
}

const json& array(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field \"") + key + "\"");
  if (!it->is_array()) schema(std::string("field \"") + key + "\" must be an array");
  return *it;
}

std::string at(const char* key, std::size_t i) {
  return std::string(key) + "[" + std::to_string(i) + "]";
}

ConnectionMatrix matrix_from_json(const json& j, std::size_t idx) {
  const std::string where = at("connections", idx);
  if (!j.is_array() || j.empty()) schema(where + ": expected a non-empty array");
  std::vector<std::vector<double>> rows;
  if (j.front().is_array()) {
    for (std::size_t r = 0; r < j.size(); ++r) {
      const auto& row = j[r];
      if (!row.is_array()) schema(where + ": mixed row formats");
      std::vector<double> vals;
      for (std::size_t c = 0; c < row.size(); ++c)
        vals.push_back(number(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      // Full square rows are accepted if the upper part is zero.
      if (vals.size() > r + 1) {
        for (std::size_t c = r + 1; c < vals.size(); ++c)
          if (vals[c] != 0.0) schema(where + ": matrix must be lower triangular");
        vals.resize(r + 1);
      }
      if (vals.size() != r + 1) schema(where + ": row " + std::to_string(r) + " too short");
      rows.push_back(std::move(vals));
    }
  } else {
    std::vector<double> flat;
    for (std::size_t c = 0; c < j.size(); ++c) flat.push_back(number(j[c], where));
    std::size_t n = 0, used = 0;
    while (used < flat.size()) used += ++n;
    if (used != flat.size())
      schema(where + ": packed lower triangle must have n(n+1)/2 entries");
    std::size_t pos = 0;
    for (std::size_t r = 0; r < n; ++r) {
      rows.emplace_back(flat.begin() + pos, flat.begin() + pos + r + 1);
      pos += r + 1;
    }
  }
  try {
    return ConnectionMatrix(std::move(rows));
  } catch (const Error& e) {
    schema(where + ": " + e.what());
  }
}

}  // namespace

Document document_from_json(const json& j) {
  if (!j.is_object()) schema("document must be a JSON object");
  Document doc;
  const auto& domain = array(j, "domain");
  if (domain.size() != 2) schema("field \"domain\" must be [a, b]");
  doc.space.a = number(domain[0], "domain[0]");
  doc.space.b = number(domain[1], "domain[1]");
  const auto& bp = array(j, "breakpoints");
  for (std::size_t i = 0; i < bp.size(); ++i) doc.space.breakpoints.push_back(number(bp[i], at("breakpoints", i)));
  const auto& deg = array(j, "degrees");
  for (std::size_t i = 0; i < deg.size(); ++i) doc.space.degrees.push_back(integer(deg[i], at("degrees", i)));
  const auto& cont = array(j, "continuities");
  for (std::size_t i = 0; i < cont.size(); ++i)
    doc.space.continuities.push_back(integer(cont[i], at("continuities", i)));
  if (auto it = j.find("connections"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) schema("field \"connections\" must be an array");
    std::vector<ConnectionMatrix> ms;
    for (std::size_t i = 0; i < it->size(); ++i) ms.push_back(matrix_from_json((*it)[i], i));
    doc.space.connections = std::move(ms);
  }
  if (auto it = j.find("control_points"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) schema("field \"control_points\" must be an array");
    std::vector<Point> cps;
    int dim = -1;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& p = (*it)[i];
      const std::string where = at("control_points", i);
      Point c{0.0, 0.0, 0.0};
      if (p.is_number()) {
        c[0] = number(p, where);
        if (dim != -1 && dim != 1) schema(where + ": inconsistent point dimension");
        dim = 1;
      } else {
        if (!p.is_array() || p.empty() || p.size() > 3)
          schema(where + ": expected a point with 1 to 3 coordinates");
        const int n = static_cast<int>(p.size());
        if (dim != -1 && dim != n) schema(where + ": inconsistent point dimension");
        dim = n;
        for (int k = 0; k < n; ++k) c[k] = number(p[k], where);
      }
      cps.push_back(c);
    }
    doc.dim = dim == -1 ? 2 : dim;
    doc.control_points = std::move(cps);
  }
  return doc;
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // The library message already carries line and column.
    fail(ErrorKind::io, std::string("invalid JSON: ") + e.what());
  }
  return document_from_json(j);
}

Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for " + path.string());
}

json space_to_json(const SplineSpace& space) {
  json j;
  j["domain"] = {space.a(), space.b()};
  j["breakpoints"] = std::vector<double>(space.breakpoints().begin(), space.breakpoints().end());
  j["degrees"] = std::vector<int>(space.degrees().begin(), space.degrees().end());
  j["continuities"] = std::vector<int>(space.continuities().begin(), space.continuities().end());
  if (space.has_connections()) {
    json ms = json::array();
    for (int i = 1; i <= space.q(); ++i) {
      json flat = json::array();
      const ConnectionMatrix m = space.connection(i);
      for (const auto& row : m.rows())
        for (double v : row) flat.push_back(v);
      ms.push_back(std::move(flat));
    }
    j["connections"] = std::move(ms);
  }
  return j;
}

json document_to_json(const SplineSpace& space, const std::vector<Point>* cps, int dim) {
  json j = space_to_json(space);
  if (cps) {
    json pts = json::array();
    for (const auto& p : *cps) pts.push_back(std::vector<double>(p.begin(), p.begin() + dim));
    j["control_points"] = std::move(pts);
  }
  return j;
}

json curve_to_json(const MDCurve& curve) {
  return document_to_json(curve.space(), &curve.control_points(), curve.dim());
}

json partitions_to_json(const ExtendedPartitions& parts) {
  return {{"s", parts.s_knots()}, {"t", parts.t_knots()}};
}

json bezier_to_json(const BezierSegmentList& segments, int dim) {
  json segs = json::array();
  for (const auto& s : segments) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(std::vector<double>(p.begin(), p.begin() + dim));
    segs.push_back({{"interval", {s.lo, s.hi}}, {"degree", s.degree()}, {"points", std::move(pts)}});
  }
  return {{"segments", std::move(segs)}};
}

json transitions_to_json(const TransitionSet& ts) {
  json fns = json::array();
  for (int i = 1; i <= ts.size(); ++i) {
    const auto& f = ts.f(i);
    json pieces = json::array();
    for (int j = f.first_interval; j < f.last_interval; ++j) {
      const auto& p = f.poly.piece(j);
      pieces.push_back({{"interval", {p.lo, p.hi}}, {"coeffs", p.coeffs}});
    }
    fns.push_back({{"index", i},
                   {"k_s", f.k_s},
                   {"k_t", f.k_t},
                   {"residual", f.residual},
                   {"pieces", std::move(pieces)}});
  }
  return {{"K", ts.size()}, {"space", space_to_json(ts.space())},
          {"partitions", partitions_to_json(ts.partitions())}, {"transitions", std::move(fns)}};
}

MDCurve curve_from_document(const Document& doc) {
  if (!doc.control_points) fail(ErrorKind::validation, "document has no control_points");
  return MDCurve(validate_space(doc.space), *doc.control_points, doc.dim);
}

std::vector<double> uniform_samples(double a, double b, int n) {
  if (n < 2) fail(ErrorKind::precondition, "sample count must be at least 2");
  std::vector<double> xs(n);
  for (int s = 0; s < n; ++s) xs[s] = a + (b - a) * s / (n - 1);
  xs.back() = b;
  return xs;
}

namespace {

SampleTable columns(const std::vector<double>& xs, const std::string& prefix,
                    const std::vector<std::vector<double>>& cols) {
  SampleTable t;
  t.header.push_back("x");
  for (std::size_t i = 0; i < cols.size(); ++i) t.header.push_back(prefix + std::to_string(i + 1));
  t.rows.resize(xs.size());
  for (std::size_t r = 0; r < xs.size(); ++r) {
    t.rows[r].push_back(xs[r]);
    for (const auto& c : cols) t.rows[r].push_back(c[r]);
  }
  return t;
}

const char* kAxis[] = {"x", "y", "z"};

}  // namespace

SampleTable sample_basis(const BSplineBasis& basis, int n) {
  const auto xs = uniform_samples(basis.space().a(), basis.space().b(), n);
  std::vector<std::vector<double>> cols;
  for (const auto& f : basis.functions()) cols.push_back(f.sample(xs));
  return columns(xs, "N", cols);
}

SampleTable sample_transitions(const TransitionSet& ts, int n) {
  const auto xs = uniform_samples(ts.space().a(), ts.space().b(), n);
  std::vector<std::vector<double>> cols;
  for (int i = 1; i <= ts.size(); ++i) cols.push_back(ts.f(i).poly.sample(xs));
  return columns(xs, "f", cols);
}

SampleTable sample_curve(const MDCurve& curve, int n) {
  const auto xs = uniform_samples(curve.space().a(), curve.space().b(), n);
  SampleTable t;
  t.header.push_back("t");
  for (int k = 0; k < curve.dim(); ++k) t.header.push_back(kAxis[k]);
  for (double x : xs) {
    const Point p = curve(x);
    std::vector<double> row{x};
    for (int k = 0; k < curve.dim(); ++k) row.push_back(p[k]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

SampleTable sample_derivative(const MDCurve& curve, int r, int n) {
  if (r < 1) fail(ErrorKind::precondition, "derivative order must be >= 1");
  const auto xs = uniform_samples(curve.space().a(), curve.space().b(), n);
  SampleTable t;
  t.header.push_back("t");
  for (int k = 0; k < curve.dim(); ++k) t.header.push_back(std::string("d") + std::to_string(r) + kAxis[k]);
  for (double x : xs) {
    const Point p = curve.derivative(x, r, x == curve.space().b() ? Side::left : Side::right);
    std::vector<double> row{x};
    for (int k = 0; k < curve.dim(); ++k) row.push_back(p[k]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string to_csv(const SampleTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

json to_json(const SampleTable& table) {
  return {{"header", table.header}, {"rows", table.rows}};
}

}  // namespace mdspline::io
