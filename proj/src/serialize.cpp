#include "adsp/serialize.hpp"

#include "adsp/errors.hpp"

namespace adsp::io {

json to_json(const Rational& r) { return adsp::to_string(r); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw InputError("rational must be a string like \"p/q\" or an integer, got " + j.dump());
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  require_input(j.is_array(), "matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    require_input(j[r].is_array() && j[r].size() == cols, "matrix rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

namespace {

template <class T, class F>
json star_json(const StarQuiver& q, const std::vector<T>& v, F&& conv) {
  require_input(v.size() == q.vertex_count(), "vector length does not match the quiver");
  json arms = json::array();
  for (std::size_t i = 0; i < q.k(); ++i) {
    json arm = json::array();
    for (std::size_t j = 1; j <= q.arm_length(i); ++j) arm.push_back(conv(v[q.vertex(i, j)]));
    arms.push_back(std::move(arm));
  }
  return json{{"center", conv(v[0])}, {"arms", std::move(arms)}};
}

}  // namespace

json vertex_json(const StarQuiver& q, const IntVector& v) {
  return star_json(q, v, [](std::int64_t x) { return json(x); });
}

json vertex_json(const StarQuiver& q, const Weight& w) {
  return star_json(q, w, [](const Rational& x) { return to_json(x); });
}

IntVector dim_vector_from_json(const StarQuiver& q, const json& j) {
  require_input(j.is_object() && j.contains("center") && j.contains("arms"), "vector needs center and arms");
  IntVector v(q.vertex_count(), 0);
  v[0] = j.at("center").get<std::int64_t>();
  const auto& arms = j.at("arms");
  require_input(arms.is_array() && arms.size() == q.k(), "vector has the wrong number of arms");
  for (std::size_t i = 0; i < q.k(); ++i) {
    require_input(arms[i].is_array() && arms[i].size() == q.arm_length(i), "vector arm has the wrong length");
    for (std::size_t p = 1; p <= q.arm_length(i); ++p) v[q.vertex(i, p)] = arms[i][p - 1].get<std::int64_t>();
  }
  return v;
}

Mode parse_mode(const std::string& s) {
  if (s == "auto") return Mode::automatic;
  if (s == "general") return Mode::general;
  if (s == "nilpotent") return Mode::nilpotent;
  if (s == "generic") return Mode::generic;
  throw InputError("unknown mode '" + s + "'");
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::general: return "general";
    case Mode::nilpotent: return "nilpotent";
    case Mode::generic: return "generic";
    case Mode::automatic: break;
  }
  return "auto";
}

InstanceFile instance_from_json(const json& j) {
  try {
    require_input(j.is_object() && j.contains("classes"), "instance needs a \"classes\" array");
    const auto& classes = j.at("classes");
    require_input(classes.is_array(), "\"classes\" must be an array");
    std::vector<JordanClass> out;
    for (const auto& c : classes) {
      require_input(c.is_object() && c.contains("spectrum") && c.at("spectrum").is_array(),
                    "each class needs a \"spectrum\" array");
      std::vector<Eigenblock> spectrum;
      for (const auto& e : c.at("spectrum")) {
        require_input(e.is_object() && e.contains("value") && e.contains("blocks"), "spectrum entries need value and blocks");
        Eigenblock eb{rational_from_json(e.at("value")), {}};
        require_input(e.at("blocks").is_array(), "\"blocks\" must be an array");
        for (const auto& b : e.at("blocks")) {
          require_input(b.is_number_integer() && b.get<long long>() >= 1, "block sizes must be positive integers");
          eb.blocks.push_back(b.get<std::size_t>());
        }
        spectrum.push_back(std::move(eb));
      }
      out.emplace_back(std::move(spectrum));
    }
    InstanceFile f{ClassTuple(std::move(out)), std::nullopt};
    if (j.contains("mode")) f.mode = parse_mode(j.at("mode").get<std::string>());
    return f;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

json to_json(const ClassTuple& t) {
  json classes = json::array();
  for (const auto& c : t.classes()) {
    json spectrum = json::array();
    for (const auto& eb : c.spectrum()) spectrum.push_back({{"value", to_json(eb.value)}, {"blocks", eb.blocks}});
    classes.push_back({{"spectrum", std::move(spectrum)}});
  }
  return {{"classes", std::move(classes)}};
}

json to_json(const StarQuiver& q, const Decision& d) {
  json cert = std::visit(
      [&](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TraceObstruction>) {
          return {{"kind", "trace_obstruction"}, {"lambda_dot_alpha", to_json(c.lambda_dot_alpha)}};
        } else if constexpr (std::is_same_v<T, NotRoot>) {
          return {{"kind", "not_root"}};
        } else if constexpr (std::is_same_v<T, Decomposition>) {
          json parts = json::array();
          for (const auto& p : c.parts) parts.push_back(vertex_json(q, p));
          return {{"kind", "decomposition"}, {"parts", std::move(parts)}, {"sum_p", c.sum_p}, {"p_alpha", c.p_alpha}};
        } else {
          return {{"kind", "member_ok"},
                  {"p_alpha", c.p_alpha},
                  {"max_sub_defect", c.max_sub_defect ? json(*c.max_sub_defect) : json(nullptr)}};
        }
      },
      d.certificate);
  return {{"member", d.member},
          {"root_class", adsp::to_string(d.root_class)},
          {"solution_count", adsp::to_string(d.solution_count)},
          {"certificate", std::move(cert)}};
}

json to_json(const MatrixSolution& s) {
  json ms = json::array();
  for (const auto& m : s.matrices) ms.push_back(to_json(m));
  return {{"matrices", std::move(ms)}};
}

MatrixSolution solution_from_json(const json& j) {
  try {
    require_input(j.is_object() && j.contains("matrices") && j.at("matrices").is_array(),
                  "solution needs a \"matrices\" array");
    MatrixSolution s;
    for (const auto& m : j.at("matrices")) s.matrices.push_back(matrix_from_json(m));
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed solution: ") + e.what());
  }
}

namespace {

std::string arrow_key(const char* kind, std::size_t arm, std::size_t pos) {
  return std::string(kind) + "[" + std::to_string(arm + 1) + "][" + std::to_string(pos) + "]";
}

}  // namespace

json to_json(const QuiverRep& rep) {
  json j = {{"dims", vertex_json(rep.quiver, rep.dims)}};
  for (std::size_t i = 0; i < rep.quiver.k(); ++i) {
    for (std::size_t p = 1; p <= rep.quiver.arm_length(i); ++p) {
      j[arrow_key("a", i, p)] = to_json(rep.a[i][p - 1]);
      j[arrow_key("astar", i, p)] = to_json(rep.astar[i][p - 1]);
    }
  }
  return j;
}

QuiverRep rep_from_json(const StarQuiver& q, const json& j) {
  try {
    require_input(j.is_object() && j.contains("dims"), "representation needs \"dims\"");
    QuiverRep rep = QuiverRep::zero(q, dim_vector_from_json(q, j.at("dims")));
    for (std::size_t i = 0; i < q.k(); ++i) {
      for (std::size_t p = 1; p <= q.arm_length(i); ++p) {
        const auto ka = arrow_key("a", i, p), ks = arrow_key("astar", i, p);
        require_input(j.contains(ka) && j.contains(ks), "representation is missing arrow " + ka);
        // a 0-row matrix serializes as [] and loses its column count; keep the zero shape
        Matrix a = matrix_from_json(j.at(ka)), s = matrix_from_json(j.at(ks));
        if (a.rows() > 0) rep.a[i][p - 1] = std::move(a);
        if (s.rows() > 0) rep.astar[i][p - 1] = std::move(s);
      }
    }
    check_shapes(rep);
    return rep;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed representation: ") + e.what());
  }
}

json to_json(const VerifyReport& r) {
  return {{"classes_ok", r.classes_ok}, {"sum_zero", r.sum_zero}, {"irreducible", r.irreducible}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace adsp::io
