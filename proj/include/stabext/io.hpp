#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stabext/arquiver.hpp"
#include "stabext/extdeg.hpp"
#include "stabext/module.hpp"

namespace stabext {

using json = nlohmann::ordered_json;

/// Input error carrying a pointer to the offending file and field, so the
/// CLI can report exactly where a document went wrong (exit code 2).
struct IoError : std::runtime_error {
  std::string file;
  std::string field;
  IoError(std::string file_, std::string field_, const std::string& msg)
      : std::runtime_error((file_.empty() ? std::string("<input>") : file_) + ": " + field_ +
                           ": " + msg),
        file(std::move(file_)),
        field(std::move(field_)) {}
};

namespace ioimpl {

inline json scalar_out(const FieldSpec& f, const Scalar& s) {
  if (f.is_rational()) return json(f.to_string(s));
  return json(s.get_num().get_si());
}

inline Scalar scalar_in(const FieldSpec& f, const json& j, const std::string& file,
                        const std::string& field) {
  try {
    if (j.is_string()) return f.parse(j.get<std::string>());
    if (j.is_number_integer()) return f.from_long(j.get<long>());
  } catch (const std::exception& e) {
    throw IoError(file, field, e.what());
  }
  throw IoError(file, field, "scalar must be an integer or a rational string");
}

inline json vec_out(const FieldSpec& f, const Vec& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_out(f, s));
  return a;
}

inline Vec vec_in(const FieldSpec& f, const json& j, size_t expect, const std::string& file,
                  const std::string& field) {
  if (!j.is_array() || j.size() != expect)
    throw IoError(file, field, "expected an array of " + std::to_string(expect) + " scalars");
  Vec v;
  v.reserve(expect);
  for (size_t i = 0; i < expect; ++i)
    v.push_back(scalar_in(f, j[i], file, field + "[" + std::to_string(i) + "]"));
  return v;
}

inline json mat_out(const Mat& m) {
  json rows = json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_out(m.field(), m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat mat_in(const FieldSpec& f, const json& j, size_t rows, size_t cols,
                  const std::string& file, const std::string& field) {
  if (!j.is_array() || j.size() != rows)
    throw IoError(file, field, "expected a matrix with " + std::to_string(rows) + " rows");
  Mat m(f, rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != cols)
      throw IoError(file, rf, "expected a row of " + std::to_string(cols) + " scalars");
    for (size_t c = 0; c < cols; ++c)
      m.at(r, c) = scalar_in(f, row[c], file, rf + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline const json& require(const json& j, const char* key, const std::string& file) {
  if (!j.is_object()) throw IoError(file, "(root)", "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw IoError(file, key, "missing required field");
  return *it;
}

}  // namespace ioimpl

// ---------------------------------------------------------------------------
// Algebra documents
// ---------------------------------------------------------------------------

inline json algebra_to_json(const AlgebraPresentation& a) {
  json j;
  if (a.field.is_rational())
    j["field"] = "rational";
  else
    j["field"] = json{{"prime", a.field.characteristic()}};
  j["dim"] = a.dim;
  j["basis"] = a.basis_labels;
  j["unit"] = ioimpl::vec_out(a.field, a.unit);
  json table = json::array();
  for (size_t i = 0; i < a.dim; ++i) {
    json row = json::array();
    for (size_t k = 0; k < a.dim; ++k) row.push_back(ioimpl::vec_out(a.field, a.table[i][k]));
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  json idem = json::array();
  for (const auto& e : a.idempotents) idem.push_back(ioimpl::vec_out(a.field, e));
  j["idempotents"] = std::move(idem);
  json rad = json::array();
  for (const auto& r : a.radical) rad.push_back(ioimpl::vec_out(a.field, r));
  j["radical"] = std::move(rad);
  j["name"] = a.name;
  j["provenance"] = a.provenance;
  return j;
}

/// Parse an algebra document.  Shape errors throw IoError; the result is
/// not yet validated (run validate_algebra, or use load_algebra).
inline AlgebraPresentation algebra_from_json(const json& j, const std::string& file = "") {
  using namespace ioimpl;
  AlgebraPresentation a;
  const json& jf = require(j, "field", file);
  if (jf.is_string() && jf.get<std::string>() == "rational") {
    a.field = FieldSpec::rationals();
  } else if (jf.is_object() && jf.contains("prime")) {
    if (!jf["prime"].is_number_integer())
      throw IoError(file, "field.prime", "expected an integer prime");
    try {
      a.field = FieldSpec::prime(jf["prime"].get<unsigned long>());
    } catch (const std::exception& e) {
      throw IoError(file, "field.prime", e.what());
    }
  } else {
    throw IoError(file, "field", "expected \"rational\" or {\"prime\": p}");
  }
  const json& jd = require(j, "dim", file);
  if (!jd.is_number_unsigned()) throw IoError(file, "dim", "expected a nonnegative integer");
  a.dim = jd.get<size_t>();
  const json& jb = require(j, "basis", file);
  if (!jb.is_array() || jb.size() != a.dim)
    throw IoError(file, "basis", "expected " + std::to_string(a.dim) + " labels");
  for (const auto& l : jb) {
    if (!l.is_string()) throw IoError(file, "basis", "labels must be strings");
    a.basis_labels.push_back(l.get<std::string>());
  }
  a.unit = vec_in(a.field, require(j, "unit", file), a.dim, file, "unit");
  const json& jt = require(j, "table", file);
  if (!jt.is_array() || jt.size() != a.dim)
    throw IoError(file, "table", "expected " + std::to_string(a.dim) + " rows");
  a.table.resize(a.dim);
  for (size_t i = 0; i < a.dim; ++i) {
    std::string rf = "table[" + std::to_string(i) + "]";
    if (!jt[i].is_array() || jt[i].size() != a.dim)
      throw IoError(file, rf, "expected " + std::to_string(a.dim) + " entries");
    for (size_t k = 0; k < a.dim; ++k)
      a.table[i].push_back(
          vec_in(a.field, jt[i][k], a.dim, file, rf + "[" + std::to_string(k) + "]"));
  }
  const json& je = require(j, "idempotents", file);
  if (!je.is_array()) throw IoError(file, "idempotents", "expected an array");
  for (size_t i = 0; i < je.size(); ++i)
    a.idempotents.push_back(
        vec_in(a.field, je[i], a.dim, file, "idempotents[" + std::to_string(i) + "]"));
  const json& jr = require(j, "radical", file);
  if (!jr.is_array()) throw IoError(file, "radical", "expected an array");
  for (size_t i = 0; i < jr.size(); ++i)
    a.radical.push_back(vec_in(a.field, jr[i], a.dim, file, "radical[" + std::to_string(i) + "]"));
  const json& jn = require(j, "name", file);
  if (!jn.is_string()) throw IoError(file, "name", "expected a string");
  a.name = jn.get<std::string>();
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw IoError(file, "provenance", "expected a string");
    a.provenance = j["provenance"].get<std::string>();
  }
  return a;
}

/// Parse and validate; throws IoError on shape problems and on structural
/// invariant failures.
inline AlgebraPtr load_algebra(const json& j, const std::string& file = "") {
  AlgebraPresentation a = algebra_from_json(j, file);
  ValidationReport rep = validate_algebra(a);
  if (!rep.ok()) throw IoError(file, "(validation)", rep.failures[0]);
  return std::make_shared<AlgebraPresentation>(std::move(a));
}

// ---------------------------------------------------------------------------
// Module documents
// ---------------------------------------------------------------------------

inline json module_to_json(const FDModule& m) {
  json j;
  j["algebra"] = m.alg->name;
  j["dim"] = m.dim;
  json act = json::array();
  for (const auto& a : m.action) act.push_back(ioimpl::mat_out(a));
  j["action"] = std::move(act);
  j["name"] = m.name;
  return j;
}

inline ModulePtr module_from_json(const json& j, const AlgebraPtr& alg,
                                  const std::string& file = "") {
  using namespace ioimpl;
  const json& ja = require(j, "algebra", file);
  if (!ja.is_string()) throw IoError(file, "algebra", "expected an algebra name reference");
  if (ja.get<std::string>() != alg->name)
    throw IoError(file, "algebra",
                  "references algebra '" + ja.get<std::string>() + "' but '" + alg->name +
                      "' was supplied");
  const json& jd = require(j, "dim", file);
  if (!jd.is_number_unsigned()) throw IoError(file, "dim", "expected a nonnegative integer");
  size_t dim = jd.get<size_t>();
  const json& jact = require(j, "action", file);
  if (!jact.is_array() || jact.size() != alg->dim)
    throw IoError(file, "action",
                  "expected one matrix per algebra basis element (" + std::to_string(alg->dim) +
                      ")");
  std::vector<Mat> action;
  for (size_t i = 0; i < alg->dim; ++i)
    action.push_back(mat_in(alg->field, jact[i], dim, dim, file,
                            "action[" + std::to_string(i) + "]"));
  const json& jn = require(j, "name", file);
  if (!jn.is_string()) throw IoError(file, "name", "expected a string");
  ModulePtr m = make_module(alg, std::move(action), jn.get<std::string>());
  ValidationReport rep = validate_module(*m);
  if (!rep.ok()) throw IoError(file, "(validation)", rep.failures[0]);
  return m;
}

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

inline json verdict_to_json(const ExtDegResult& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  if (r.verdict == ExtDegVerdict::Finite) j["m"] = r.m;
  if (r.verdict == ExtDegVerdict::Infinite) {
    j["period"] = r.period;
    j["stable_endo_dim"] = r.stable_endo_dim;
  }
  j["window"] = r.window;
  j["guard"] = r.guard;
  json dims = json::object();
  for (size_t i = 0; i < r.dims.size(); ++i) dims[std::to_string(i + 1)] = r.dims[i];
  j["dims"] = std::move(dims);
  return j;
}

inline json ext_table_to_json(const ExtTable& t) {
  json dims = json::object();
  for (long i = t.lo; i <= t.hi; ++i) dims[std::to_string(i)] = t.at(i);
  json j;
  j["m"] = t.m->name;
  j["n"] = t.n->name;
  j["dims"] = std::move(dims);
  return j;
}

inline json component_to_json(const ComponentGraph& g) {
  json verts = json::array();
  for (const auto& v : g.vertices) {
    json jv;
    jv["key"] = v.key;
    jv["dim"] = v.rep->dim;
    if (v.alpha) jv["alpha"] = *v.alpha;
    if (v.ql) jv["ql"] = *v.ql;
    jv["certified"] = v.certified;
    verts.push_back(std::move(jv));
  }
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.first, e.second}));
  json j;
  j["vertices"] = std::move(verts);
  j["edges"] = std::move(edges);
  j["radius"] = g.radius;
  j["frontier"] = g.frontier;
  return j;
}

/// Plain-text edge list (one "from to" pair per line) for external viewers.
inline std::string component_edge_list(const ComponentGraph& g) {
  std::ostringstream os;
  for (const auto& e : g.edges) os << e.first << " " << e.second << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "(file)", "cannot open for reading");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError(path, "(parse)", e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "(file)", "cannot open for writing");
  out << j.dump(2) << "\n";
}

inline AlgebraPtr load_algebra_file(const std::string& path) {
  return load_algebra(read_json_file(path), path);
}

inline ModulePtr load_module_file(const std::string& path, const AlgebraPtr& alg) {
  return module_from_json(read_json_file(path), alg, path);
}

}  // namespace stabext
