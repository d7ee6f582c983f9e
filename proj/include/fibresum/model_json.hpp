#pragma once

// Structured-text (JSON) form of problem documents.
//
//   {"M": <side>, "N": <side>, "gluing": {"a": [...]}, "t": [...]}
//
// A side is either a full object with the keys written by side_to_json() or
// a catalog reference {"catalog": "E", "n": <int>}.

#include "fibresum/errors.hpp"
#include "fibresum/model.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fsum {

using Json = nlohmann::ordered_json;

/// JSON number when the value fits in 64 bits, decimal string otherwise.
inline Json int_to_json(const Int& x) {
  if (auto v = to_int64(x)) return *v;
  return x.str();
}

inline Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

inline Int json_to_int(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; i < s.size(); ++i) ok = ok && (s[i] >= '0' && s[i] <= '9');
    if (ok) return Int(s);
  }
  schema_error(path, "expected an integer");
}

inline int json_to_count(const Json& j, const std::string& path) {
  const Int v = json_to_int(j, path);
  if (v < 0 || v > std::numeric_limits<int>::max()) schema_error(path, "expected a non-negative count");
  return static_cast<int>(v);
}

inline IntVector json_to_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(json_to_int(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline IntMatrix json_to_matrix(const Json& j, const std::string& path, std::size_t cols) {
  if (!j.is_array()) schema_error(path, "expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto r = json_to_vector(j[i], path + "[" + std::to_string(i) + "]");
    if (r.size() != cols)
      schema_error(path + "[" + std::to_string(i) + "]", "row length must be 2g = " + std::to_string(cols));
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows, cols);
}

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing field");
  return *it;
}

inline void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) schema_error(path + "." + it.key(), "unknown field");
}

}  // namespace detail

inline Json side_to_json(const ManifoldSide& s) {
  Json j;
  j["name"] = s.name;
  j["b1"] = s.b1;
  j["h1_torsion"] = vector_to_json(s.h1_torsion);
  j["b2_plus"] = s.b2_plus;
  j["b2_minus"] = s.b2_minus;
  j["K_squared"] = int_to_json(s.k_squared);
  j["K_dot_B"] = int_to_json(s.k_dot_b);
  j["B_squared"] = int_to_json(s.b_squared);
  j["genus"] = s.genus;
  j["k"] = int_to_json(s.k);
  j["embedding_free"] = matrix_to_json(s.embedding_free);
  Json tors = Json::array();
  for (const auto& r : s.embedding_torsion) tors.push_back(Json{{"modulus", int_to_json(r.modulus)}, {"row", vector_to_json(r.row)}});
  j["embedding_torsion"] = std::move(tors);
  j["p_parity"] = to_string(s.p_parity);
  j["kbar_divisibility"] = s.kbar_divisibility ? int_to_json(*s.kbar_divisibility) : Json("unknown");
  return j;
}

/// Parses a side object or a catalog reference. Schema errors throw
/// ValidationError naming the offending field; side invariants are not
/// checked here.
inline ManifoldSide parse_side(const Json& j, const std::string& path) {
  using namespace detail;
  if (!j.is_object()) schema_error(path, "expected an object");
  if (j.contains("catalog")) {
    reject_unknown_keys(j, {"catalog", "n"}, path);
    const Json& cat = j.at("catalog");
    if (!cat.is_string() || cat.get<std::string>() != "E")
      schema_error(path + ".catalog", "unknown catalog entry (supported: \"E\")");
    const Int n = json_to_int(require(j, "n", path), path + ".n");
    if (n < 1 || n > 100000) schema_error(path + ".n", "catalog E(n) requires n >= 1");
    return elliptic_surface(static_cast<int>(n));
  }
  reject_unknown_keys(j,
                      {"name", "b1", "h1_torsion", "b2_plus", "b2_minus", "K_squared", "K_dot_B", "B_squared",
                       "genus", "k", "embedding_free", "embedding_torsion", "p_parity", "kbar_divisibility"},
                      path);
  ManifoldSide s;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) schema_error(path + ".name", "expected a string");
    s.name = j.at("name").get<std::string>();
  }
  s.b1 = json_to_count(require(j, "b1", path), path + ".b1");
  if (j.contains("h1_torsion")) s.h1_torsion = json_to_vector(j.at("h1_torsion"), path + ".h1_torsion");
  s.b2_plus = json_to_count(require(j, "b2_plus", path), path + ".b2_plus");
  s.b2_minus = json_to_count(require(j, "b2_minus", path), path + ".b2_minus");
  s.k_squared = json_to_int(require(j, "K_squared", path), path + ".K_squared");
  s.k_dot_b = json_to_int(require(j, "K_dot_B", path), path + ".K_dot_B");
  s.b_squared = json_to_int(require(j, "B_squared", path), path + ".B_squared");
  s.genus = json_to_count(require(j, "genus", path), path + ".genus");
  s.k = j.contains("k") ? json_to_int(j.at("k"), path + ".k") : Int(1);
  const std::size_t two_g = 2 * static_cast<std::size_t>(s.genus);
  s.embedding_free = j.contains("embedding_free")
                         ? json_to_matrix(j.at("embedding_free"), path + ".embedding_free", two_g)
                         : IntMatrix(static_cast<std::size_t>(s.b1), two_g);
  if (j.contains("embedding_torsion")) {
    const Json& et = j.at("embedding_torsion");
    const std::string ep = path + ".embedding_torsion";
    if (!et.is_array()) schema_error(ep, "expected an array of {modulus, row}");
    for (std::size_t i = 0; i < et.size(); ++i) {
      const std::string ip = ep + "[" + std::to_string(i) + "]";
      if (!et[i].is_object()) schema_error(ip, "expected an object");
      reject_unknown_keys(et[i], {"modulus", "row"}, ip);
      s.embedding_torsion.push_back(TorsionEmbeddingRow{json_to_int(require(et[i], "modulus", ip), ip + ".modulus"),
                                                        json_to_vector(require(et[i], "row", ip), ip + ".row")});
    }
  }
  if (j.contains("p_parity")) {
    const Json& pp = j.at("p_parity");
    const std::string v = pp.is_string() ? pp.get<std::string>() : std::string();
    if (v == "even") s.p_parity = Parity::even;
    else if (v == "odd") s.p_parity = Parity::odd;
    else if (v == "unknown") s.p_parity = Parity::unknown;
    else schema_error(path + ".p_parity", "expected \"even\", \"odd\" or \"unknown\"");
  }
  if (j.contains("kbar_divisibility")) {
    const Json& kd = j.at("kbar_divisibility");
    if (kd.is_string() && kd.get<std::string>() == "unknown") s.kbar_divisibility.reset();
    else s.kbar_divisibility = json_to_int(kd, path + ".kbar_divisibility");
  }
  return s;
}

inline Json problem_to_json(const FibreSumProblem& p) {
  Json j;
  j["M"] = side_to_json(p.m);
  j["N"] = side_to_json(p.n);
  j["gluing"] = Json{{"a", vector_to_json(p.gluing.a)}};
  if (!p.t_defaulted) j["t"] = vector_to_json(p.t);
  return j;
}

/// Parses and fully validates a problem document. An explicit t overrides
/// the document's "t".
inline FibreSumProblem parse_problem(const Json& doc, const std::optional<IntVector>& t_override = std::nullopt) {
  using namespace detail;
  if (!doc.is_object()) schema_error("document", "expected an object");
  reject_unknown_keys(doc, {"M", "N", "gluing", "t"}, "document");
  ManifoldSide m = parse_side(require(doc, "M", "document"), "M");
  ManifoldSide n = parse_side(require(doc, "N", "document"), "N");
  if (m.name.empty()) m.name = "M";
  if (n.name.empty()) n.name = "N";
  const Json& gl = require(doc, "gluing", "document");
  if (!gl.is_object()) schema_error("gluing", "expected an object {\"a\": [...]}");
  reject_unknown_keys(gl, {"a"}, "gluing");
  IntVector a = json_to_vector(require(gl, "a", "gluing"), "gluing.a");
  std::optional<IntVector> t = t_override;
  if (!t && doc.contains("t")) t = json_to_vector(doc.at("t"), "t");
  return make_problem(std::move(m), std::move(n), std::move(a), std::move(t));
}

inline FibreSumProblem parse_problem(const std::string& text, const std::optional<IntVector>& t_override = std::nullopt) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("document: malformed JSON (") + e.what() + ")");
  }
  return parse_problem(doc, t_override);
}

inline FibreSumProblem parse_problem(const char* text, const std::optional<IntVector>& t_override = std::nullopt) {
  return parse_problem(std::string(text), t_override);
}

}  // namespace fsum
