#pragma once

#include <string>

#include "json.hpp"

#include "adsp/classdata.hpp"
#include "adsp/construct.hpp"
#include "adsp/matrix.hpp"
#include "adsp/rootsys.hpp"
#include "adsp/sigma.hpp"

namespace adsp::io {

using nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"center": x, "arms": [[...], ...]} following the quiver's arms.
json vertex_json(const StarQuiver& q, const IntVector& v);
json vertex_json(const StarQuiver& q, const Weight& w);
IntVector dim_vector_from_json(const StarQuiver& q, const json& j);

enum class Mode { automatic, general, nilpotent, generic };
Mode parse_mode(const std::string& s);
const char* to_string(Mode m);

struct InstanceFile {
  ClassTuple tuple;
  std::optional<Mode> mode;
};

/// {"classes":[{"spectrum":[{"value":"1","blocks":[1,1]}, ...]}, ...], "mode": "..."}
InstanceFile instance_from_json(const json& j);
json to_json(const ClassTuple& t);

json to_json(const StarQuiver& q, const Decision& d);

json to_json(const MatrixSolution& s);
MatrixSolution solution_from_json(const json& j);

json to_json(const QuiverRep& rep);
QuiverRep rep_from_json(const StarQuiver& q, const json& j);

json to_json(const VerifyReport& r);

/// Parses text, mapping JSON syntax errors to InputError.
json parse(const std::string& text);

}  // namespace adsp::io
