#pragma once

// JSON documents (spaces, curves, Bezier exports, transition dumps) and
// sample tables.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mdspline/curve.hpp"

namespace mdspline::io {

using json = nlohmann::json;

/// A space document with optional control points.
struct Document {
  RawSpace space;
  std::optional<std::vector<Point>> control_points;
  int dim = 2;
};

/// Parses document text. Syntax errors raise ErrorKind::io with line and
/// column; schema errors raise ErrorKind::validation naming the field.
Document parse_document(std::string_view text);
Document document_from_json(const json& j);
Document load_document(const std::filesystem::path& path);

json space_to_json(const SplineSpace& space);
json document_to_json(const SplineSpace& space, const std::vector<Point>* cps, int dim);
json curve_to_json(const MDCurve& curve);
json partitions_to_json(const ExtendedPartitions& parts);
json bezier_to_json(const BezierSegmentList& segments, int dim);
json transitions_to_json(const TransitionSet& ts);

/// Requires control points.
MDCurve curve_from_document(const Document& doc);

void write_text(const std::filesystem::path& path, const std::string& text);

struct SampleTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::vector<double> uniform_samples(double a, double b, int n);

SampleTable sample_basis(const BSplineBasis& basis, int n);
SampleTable sample_transitions(const TransitionSet& ts, int n);
SampleTable sample_curve(const MDCurve& curve, int n);
/// r-th derivative of the curve (right limits, left limit at b).
SampleTable sample_derivative(const MDCurve& curve, int r, int n);

/// Header row plus rows at 17 significant digits.
std::string to_csv(const SampleTable& table);
json to_json(const SampleTable& table);

}  // namespace mdspline::io
