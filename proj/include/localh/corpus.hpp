#pragma once

// Label-level description of a triangulation, its conversion to the
// id-based Triangulation, stellar subdivision, and the builtin fixtures.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "localh/local_module.hpp"

namespace localh {

class UnknownFixture : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct VertexSpec {
  std::string id;
  std::vector<std::string> carrier;
};

struct FaceCarrierSpec {
  std::vector<std::string> face;
  std::vector<std::string> carrier;
};

struct TriangulationSpec {
  std::string name;
  std::vector<std::string> simplex_vertices;
  std::vector<VertexSpec> vertices;
  std::vector<std::vector<std::string>> facets;
  std::vector<FaceCarrierSpec> face_carriers;
  std::map<std::string, std::vector<std::int64_t>> metadata;
};

namespace detail {

inline int index_of(const std::vector<std::string>& labels, const std::string& x, const char* what) {
  const auto it = std::find(labels.begin(), labels.end(), x);
  if (it == labels.end()) throw TriangulationError(std::string("undeclared ") + what + " '" + x + "'");
  return static_cast<int>(it - labels.begin());
}

inline VertexSet set_of(const std::vector<std::string>& labels, const std::vector<std::string>& xs, const char* what) {
  VertexSet s;
  for (const auto& x : xs) {
    const int i = index_of(labels, x, what);
    if (s.contains(i)) throw TriangulationError(std::string("repeated ") + what + " '" + x + "'");
    s.insert(i);
  }
  return s;
}

}  // namespace detail

inline Triangulation to_triangulation(const TriangulationSpec& spec, std::vector<std::string>* warnings = nullptr,
                                      std::size_t face_ceiling = kDefaultFaceCeiling) {
  if (spec.vertices.size() > 64) throw TriangulationError("at most 64 vertices are supported");
  std::vector<std::string> vlabels;
  std::vector<SimplexSet> carriers;
  for (const auto& v : spec.vertices) {
    if (std::find(vlabels.begin(), vlabels.end(), v.id) != vlabels.end())
      throw TriangulationError("duplicate vertex id '" + v.id + "'");
    vlabels.push_back(v.id);
  }
  {
    auto sorted = spec.simplex_vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw TriangulationError("duplicate simplex vertex");
  }
  for (const auto& v : spec.vertices) {
    if (v.carrier.empty()) throw TriangulationError("vertex '" + v.id + "' has an empty carrier");
    carriers.push_back(detail::set_of(spec.simplex_vertices, v.carrier, "simplex vertex"));
  }
  std::vector<std::vector<int>> facets;
  for (const auto& f : spec.facets) {
    std::vector<int> ids;
    for (const auto& x : f) ids.push_back(detail::index_of(vlabels, x, "vertex"));
    facets.push_back(std::move(ids));
  }
  SimplicialComplex c = build_complex(facets, warnings, face_ceiling);
  std::unordered_map<Face, SimplexSet> overrides;
  for (const auto& fc : spec.face_carriers) {
    const Face f = detail::set_of(vlabels, fc.face, "vertex");
    if (!c.contains(f)) throw TriangulationError("face carrier given for a non-face");
    overrides[f] = detail::set_of(spec.simplex_vertices, fc.carrier, "simplex vertex");
  }
  return Triangulation(spec.name, spec.simplex_vertices, vlabels, std::move(c),
                       CarrierMap(std::move(carriers), std::move(overrides)));
}

inline TriangulationSpec to_spec(const Triangulation& t) {
  TriangulationSpec s;
  s.name = t.name();
  s.simplex_vertices = t.simplex_labels();
  for (std::size_t w = 0; w < t.vertex_labels().size(); ++w)
    s.vertices.push_back({t.vertex_labels()[w], t.simplex_labels_of(t.sigma().vertex(static_cast<int>(w)))});
  for (Face f : t.complex().facets()) s.facets.push_back(t.labels_of(f));
  std::vector<std::pair<Face, SimplexSet>> ov(t.sigma().overrides().begin(), t.sigma().overrides().end());
  std::sort(ov.begin(), ov.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  for (const auto& [f, c] : ov) s.face_carriers.push_back({t.labels_of(f), t.simplex_labels_of(c)});
  return s;
}

/// Stellar subdivision at G: facets F ⊇ G are replaced by (F ∖ g) ∪ {z}
/// for g ∈ G, with σ(z) = σ(G). Face-carrier overrides are dropped.
inline TriangulationSpec stellar_subdivision(const TriangulationSpec& spec, const std::vector<std::string>& g,
                                             const std::string& new_vertex, const std::string& name) {
  const Triangulation t = to_triangulation(spec);
  const Face gf = t.face_of(g);
  if (!t.complex().contains(gf) || gf.empty()) throw TriangulationError("stellar subdivision needs a nonempty face");
  TriangulationSpec out;
  out.name = name;
  out.simplex_vertices = spec.simplex_vertices;
  out.vertices = spec.vertices;
  out.vertices.push_back({new_vertex, t.simplex_labels_of(t.carrier(gf))});
  for (Face f : t.complex().facets()) {
    if (!gf.subset_of(f)) {
      out.facets.push_back(t.labels_of(f));
      continue;
    }
    for (int x : gf.elements()) {
      Face rest = f;
      rest.erase(x);
      auto labels = t.labels_of(rest);
      labels.push_back(new_vertex);
      out.facets.push_back(std::move(labels));
    }
  }
  return out;
}

inline TriangulationSpec triforce_spec() {
  TriangulationSpec s;
  s.name = "triforce";
  s.simplex_vertices = {"u", "v", "w"};
  s.vertices = {{"a", {"v", "w"}}, {"b", {"u", "w"}}, {"c", {"u", "v"}},
                {"u", {"u"}},      {"v", {"v"}},      {"w", {"w"}}};
  s.facets = {{"a", "b", "c"}, {"u", "b", "c"}, {"v", "a", "c"}, {"w", "a", "b"}};
  return s;
}

inline TriangulationSpec trivial_spec(int n) {
  if (n < 1 || n > 8) throw UnknownFixture("trivial-n needs 1 ≤ n ≤ 8");
  TriangulationSpec s;
  s.name = "trivial-" + std::to_string(n);
  std::vector<std::string> all;
  for (int i = 1; i <= n; ++i) {
    const std::string v = "v" + std::to_string(i);
    s.simplex_vertices.push_back(v);
    s.vertices.push_back({v, {v}});
    all.push_back(v);
  }
  s.facets = {all};
  return s;
}

/// Triforce without its central facet: Γ_V is an annulus.
inline TriangulationSpec triforce_annulus_spec() {
  TriangulationSpec s = triforce_spec();
  s.name = "triforce-annulus";
  s.facets.erase(s.facets.begin());
  return s;
}

/// Carrier-map data where the face {a1,a2,x} has carrier V but its vertex
/// carriers fit in {v1,v2}, whose preimage is only one-dimensional.
inline TriangulationSpec non_quasi_geometric_spec() {
  TriangulationSpec s;
  s.name = "non-quasi-geometric";
  s.simplex_vertices = {"v1", "v2", "v3"};
  s.vertices = {{"a1", {"v1"}}, {"a2", {"v2"}}, {"a3", {"v3"}}, {"x", {"v1", "v2"}}};
  s.facets = {{"a1", "a2", "x"}, {"a1", "a2", "a3"}};
  s.face_carriers = {{{"a1", "a2", "x"}, {"v1", "v2", "v3"}}};
  return s;
}

/// Builtin names forming the validated corpus, in a fixed order.
inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "triforce",
      "trivial-1",
      "trivial-2",
      "trivial-3",
      "trivial-4",
      "stellar-interior-2simplex",
      "stellar-edge-2simplex",
      "stellar-interior-3simplex",
      "stellar-facet-3simplex",
      "stellar-edge-3simplex",
      "triforce-starred-center",
      "triforce-starred-edge",
      "iterated-2simplex",
      "iterated-3simplex",
  };
  return names;
}

/// Fixtures outside the corpus: they fail validation on purpose.
inline const std::vector<std::string>& invalid_fixture_names() {
  static const std::vector<std::string> names = {"triforce-annulus", "non-quasi-geometric"};
  return names;
}

inline TriangulationSpec builtin_corpus(const std::string& name) {
  if (name == "triforce") return triforce_spec();
  if (name.rfind("trivial-", 0) == 0) {
    const std::string tail = name.substr(8);
    if (tail.empty() || tail.size() > 1 || tail[0] < '1' || tail[0] > '8') throw UnknownFixture("unknown builtin '" + name + "'");
    return trivial_spec(tail[0] - '0');
  }
  if (name == "stellar-interior-2simplex") {
    auto s = stellar_subdivision(trivial_spec(3), {"v1", "v2", "v3"}, "z", name);
    s.metadata["ell_empty"] = local_h_incexc(to_triangulation(s), Face{});
    return s;
  }
  if (name == "stellar-edge-2simplex") return stellar_subdivision(trivial_spec(3), {"v1", "v2"}, "z", name);
  if (name == "stellar-interior-3simplex")
    return stellar_subdivision(trivial_spec(4), {"v1", "v2", "v3", "v4"}, "z", name);
  if (name == "stellar-facet-3simplex") return stellar_subdivision(trivial_spec(4), {"v1", "v2", "v3"}, "z", name);
  if (name == "stellar-edge-3simplex") return stellar_subdivision(trivial_spec(4), {"v1", "v2"}, "z", name);
  if (name == "triforce-starred-center") return stellar_subdivision(triforce_spec(), {"a", "b", "c"}, "z", name);
  if (name == "triforce-starred-edge") return stellar_subdivision(triforce_spec(), {"a", "b"}, "z", name);
  if (name == "iterated-2simplex") {
    auto s = stellar_subdivision(trivial_spec(3), {"v1", "v2", "v3"}, "z", name);
    return stellar_subdivision(s, {"v1", "z"}, "y", name);
  }
  if (name == "iterated-3simplex") {
    auto s = stellar_subdivision(trivial_spec(4), {"v1", "v2"}, "z", name);
    return stellar_subdivision(s, {"v3", "z"}, "y", name);
  }
  if (name == "triforce-annulus") return triforce_annulus_spec();
  if (name == "non-quasi-geometric") return non_quasi_geometric_spec();
  throw UnknownFixture("unknown builtin '" + name + "'");
}

/// Label-level standalone face: vertex carriers inside a simplex, plus σ(E)
/// and |E| for the ambient face E.
struct StandaloneSpec {
  std::string name;
  std::vector<std::string> simplex_vertices;
  std::vector<VertexSpec> vertices;
  std::vector<std::string> e_carrier;
  int e_size = 0;
};

inline StandaloneFace to_standalone(const StandaloneSpec& spec) {
  StandaloneFace sf;
  sf.name = spec.name;
  sf.simplex_labels = spec.simplex_vertices;
  for (const auto& v : spec.vertices) {
    if (std::find(sf.vertex_labels.begin(), sf.vertex_labels.end(), v.id) != sf.vertex_labels.end())
      throw TriangulationError("duplicate vertex id '" + v.id + "'");
    sf.vertex_labels.push_back(v.id);
    sf.carriers.push_back(detail::set_of(spec.simplex_vertices, v.carrier, "simplex vertex"));
  }
  sf.e_carrier = detail::set_of(spec.simplex_vertices, spec.e_carrier, "simplex vertex");
  sf.e_size = spec.e_size;
  return sf;
}

namespace detail {

inline StandaloneSpec six_vertex_face(std::string name, const std::vector<std::vector<int>>& carriers) {
  StandaloneSpec s;
  s.name = std::move(name);
  for (int i = 1; i <= 6; ++i) s.simplex_vertices.push_back("v" + std::to_string(i));
  for (std::size_t w = 0; w < carriers.size(); ++w) {
    VertexSpec v{"w" + std::to_string(w + 1), {}};
    for (int i : carriers[w]) v.carrier.push_back("v" + std::to_string(i));
    s.vertices.push_back(std::move(v));
  }
  return s;
}

}  // namespace detail

inline const std::vector<std::string>& standalone_names() {
  static const std::vector<std::string> names = {"standalone-balanced-6", "standalone-cone-6", "standalone-point"};
  return names;
}

inline StandaloneSpec builtin_standalone(const std::string& name) {
  if (name == "standalone-balanced-6")
    return detail::six_vertex_face(name, {{1, 3, 6}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}, {3, 4, 5}, {3, 5, 6}});
  if (name == "standalone-cone-6")
    return detail::six_vertex_face(name, {{1}, {2}, {3}, {1, 4, 5}, {2, 4, 6}, {3, 5, 6}});
  if (name == "standalone-point") {
    StandaloneSpec s;
    s.name = name;
    s.simplex_vertices = {"v1", "v2"};
    s.vertices = {{"w", {"v1", "v2"}}};
    return s;
  }
  throw UnknownFixture("unknown standalone builtin '" + name + "'");
}

}  // namespace localh
