#pragma once

// JSON wire format. Objects use nlohmann::json's default std::map storage,
// so keys are always emitted sorted.

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "localh/corpus.hpp"

namespace localh {

using json = nlohmann::json;

class SchemaError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace io_detail {

inline const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing \"" + key + "\"");
  return *it;
}

inline std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  const auto s = j.get<std::string>();
  if (s.empty()) throw SchemaError(where + ": empty string");
  return s;
}

inline std::vector<std::string> strings_of(const json& j, const std::string& where, bool unique = true) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of strings");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& x : j) {
    out.push_back(string_of(x, where));
    if (unique && !seen.insert(out.back()).second) throw SchemaError(where + ": repeated \"" + out.back() + "\"");
  }
  return out;
}

inline void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw SchemaError(where + ": unexpected key \"" + it.key() + "\"");
  }
}

inline void subset_check(const std::vector<std::string>& xs, const std::set<std::string>& universe,
                         const std::string& where) {
  for (const auto& x : xs)
    if (!universe.count(x)) throw SchemaError(where + ": undeclared \"" + x + "\"");
}

inline std::vector<VertexSpec> vertices_of(const json& j, const std::set<std::string>& simplex) {
  if (!j.is_array() || j.empty()) throw SchemaError("vertices: expected a nonempty array");
  std::vector<VertexSpec> out;
  std::set<std::string> ids;
  for (const auto& v : j) {
    if (!v.is_object()) throw SchemaError("vertices: expected objects");
    only_keys(v, {"id", "carrier"}, "vertices[]");
    VertexSpec vs{string_of(require(v, "id", "vertices[]"), "vertices[].id"),
                  strings_of(require(v, "carrier", "vertices[]"), "vertices[].carrier")};
    if (vs.carrier.empty()) throw SchemaError("vertex \"" + vs.id + "\": empty carrier");
    subset_check(vs.carrier, simplex, "vertex \"" + vs.id + "\" carrier");
    if (!ids.insert(vs.id).second) throw SchemaError("vertices: duplicate id \"" + vs.id + "\"");
    out.push_back(std::move(vs));
  }
  return out;
}

}  // namespace io_detail

inline TriangulationSpec parse_triangulation(const json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw SchemaError("triangulation: expected an object");
  only_keys(j, {"$schema", "name", "simplex_vertices", "vertices", "facets", "face_carriers", "metadata"},
            "triangulation");
  TriangulationSpec s;
  s.name = string_of(require(j, "name", "triangulation"), "name");
  s.simplex_vertices = strings_of(require(j, "simplex_vertices", "triangulation"), "simplex_vertices");
  if (s.simplex_vertices.empty() || s.simplex_vertices.size() > 64)
    throw SchemaError("simplex_vertices: need 1..64 entries");
  const std::set<std::string> simplex(s.simplex_vertices.begin(), s.simplex_vertices.end());
  s.vertices = vertices_of(require(j, "vertices", "triangulation"), simplex);
  std::set<std::string> ids;
  for (const auto& v : s.vertices) ids.insert(v.id);
  const json& facets = require(j, "facets", "triangulation");
  if (!facets.is_array()) throw SchemaError("facets: expected an array");
  for (const auto& f : facets) {
    // duplicates inside a facet are reported by the complex builder
    auto labels = strings_of(f, "facets[]", false);
    subset_check(labels, ids, "facets[]");
    s.facets.push_back(std::move(labels));
  }
  if (auto it = j.find("face_carriers"); it != j.end()) {
    if (!it->is_array()) throw SchemaError("face_carriers: expected an array");
    for (const auto& fc : *it) {
      if (!fc.is_object()) throw SchemaError("face_carriers: expected objects");
      only_keys(fc, {"face", "carrier"}, "face_carriers[]");
      FaceCarrierSpec x{strings_of(require(fc, "face", "face_carriers[]"), "face_carriers[].face"),
                        strings_of(require(fc, "carrier", "face_carriers[]"), "face_carriers[].carrier")};
      subset_check(x.face, ids, "face_carriers[].face");
      subset_check(x.carrier, simplex, "face_carriers[].carrier");
      s.face_carriers.push_back(std::move(x));
    }
  }
  if (auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("metadata: expected an object");
    for (auto m = it->begin(); m != it->end(); ++m) {
      if (!m->is_array()) throw SchemaError("metadata: values must be integer arrays");
      std::vector<std::int64_t> xs;
      for (const auto& x : *m) {
        if (!x.is_number_integer()) throw SchemaError("metadata: values must be integer arrays");
        xs.push_back(x.get<std::int64_t>());
      }
      s.metadata[m.key()] = std::move(xs);
    }
  }
  return s;
}

inline StandaloneSpec parse_standalone(const json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw SchemaError("standalone face: expected an object");
  only_keys(j, {"$schema", "name", "simplex_vertices", "vertices", "e_carrier", "e_size"}, "standalone face");
  StandaloneSpec s;
  s.name = string_of(require(j, "name", "standalone face"), "name");
  s.simplex_vertices = strings_of(require(j, "simplex_vertices", "standalone face"), "simplex_vertices");
  if (s.simplex_vertices.empty() || s.simplex_vertices.size() > 64)
    throw SchemaError("simplex_vertices: need 1..64 entries");
  const std::set<std::string> simplex(s.simplex_vertices.begin(), s.simplex_vertices.end());
  s.vertices = vertices_of(require(j, "vertices", "standalone face"), simplex);
  if (s.vertices.size() > 16) throw SchemaError("vertices: at most 16 for a standalone face");
  if (auto it = j.find("e_carrier"); it != j.end()) {
    s.e_carrier = strings_of(*it, "e_carrier");
    subset_check(s.e_carrier, simplex, "e_carrier");
  }
  if (auto it = j.find("e_size"); it != j.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) throw SchemaError("e_size: expected a non-negative integer");
    s.e_size = it->get<int>();
  }
  if (s.e_size > static_cast<int>(s.simplex_vertices.size())) throw SchemaError("e_size exceeds the simplex size");
  return s;
}

inline bool is_standalone_json(const json& j) { return j.is_object() && !j.contains("facets"); }

/// Labels sorted lexicographically.
inline json face_json(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  return labels;
}

inline json to_json(const TriangulationSpec& s) {
  json j;
  j["name"] = s.name;
  j["simplex_vertices"] = s.simplex_vertices;
  j["vertices"] = json::array();
  for (const auto& v : s.vertices) j["vertices"].push_back({{"id", v.id}, {"carrier", v.carrier}});
  j["facets"] = s.facets;
  if (!s.face_carriers.empty()) {
    j["face_carriers"] = json::array();
    for (const auto& fc : s.face_carriers) j["face_carriers"].push_back({{"face", fc.face}, {"carrier", fc.carrier}});
  }
  if (!s.metadata.empty()) j["metadata"] = s.metadata;
  return j;
}

inline json to_json(const StandaloneSpec& s) {
  json j;
  j["name"] = s.name;
  j["simplex_vertices"] = s.simplex_vertices;
  j["vertices"] = json::array();
  for (const auto& v : s.vertices) j["vertices"].push_back({{"id", v.id}, {"carrier", v.carrier}});
  j["e_carrier"] = s.e_carrier;
  j["e_size"] = s.e_size;
  return j;
}

/// Canonical text: two-space indent, sorted keys, trailing newline.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

/// "-" reads stdin, "builtin:<name>" a builtin fixture, anything else a file.
inline json read_input(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) {
    const std::string name = source.substr(8);
    const auto& sa = standalone_names();
    if (std::find(sa.begin(), sa.end(), name) != sa.end()) return to_json(builtin_standalone(name));
    try {
      return to_json(builtin_corpus(name));
    } catch (const UnknownFixture& e) {
      throw SchemaError(e.what());
    }
  }
  std::string text;
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(source);
    if (!in) throw SchemaError("cannot read '" + source + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace localh
