#pragma once

// Triangulations of a simplex: a complex Γ together with a carrier map
// σ: Γ → 2^V, plus the axioms a homology triangulation must satisfy.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "localh/complex.hpp"
#include "localh/homology.hpp"
#include "localh/parallel.hpp"

namespace localh {

using SimplexSet = VertexSet;

class TriangulationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// σ on vertices, optional per-face overrides; every other face gets the
/// union of its vertex carriers.
class CarrierMap {
public:
  CarrierMap() = default;
  CarrierMap(std::vector<SimplexSet> vertex_carriers, std::unordered_map<Face, SimplexSet> overrides = {})
      : vertex_(std::move(vertex_carriers)), overrides_(std::move(overrides)) {}

  SimplexSet operator()(Face f) const {
    if (f.empty()) return {};
    if (auto it = overrides_.find(f); it != overrides_.end()) return it->second;
    return union_of_vertices(f);
  }

  SimplexSet union_of_vertices(Face f) const {
    SimplexSet s;
    for (int w : f.elements()) s = s | vertex_.at(static_cast<std::size_t>(w));
    return s;
  }

  SimplexSet vertex(int w) const { return vertex_.at(static_cast<std::size_t>(w)); }
  const std::vector<SimplexSet>& vertex_carriers() const { return vertex_; }
  const std::unordered_map<Face, SimplexSet>& overrides() const { return overrides_; }

private:
  std::vector<SimplexSet> vertex_;
  std::unordered_map<Face, SimplexSet> overrides_;
};

class Triangulation {
public:
  Triangulation(std::string name, std::vector<std::string> simplex_labels,
                std::vector<std::string> vertex_labels, SimplicialComplex complex, CarrierMap sigma)
      : name_(std::move(name)),
        simplex_labels_(std::move(simplex_labels)),
        vertex_labels_(std::move(vertex_labels)),
        complex_(std::move(complex)),
        sigma_(std::move(sigma)) {
    if (simplex_labels_.empty() || simplex_labels_.size() > 64)
      throw TriangulationError("simplex must have between 1 and 64 vertices");
    if (sigma_.vertex_carriers().size() != vertex_labels_.size())
      throw TriangulationError("one carrier per vertex required");
  }

  const std::string& name() const { return name_; }
  const SimplicialComplex& complex() const { return complex_; }
  const CarrierMap& sigma() const { return sigma_; }
  int n() const { return static_cast<int>(simplex_labels_.size()); }
  SimplexSet simplex() const { return SimplexSet::range(n()); }
  const std::vector<std::string>& simplex_labels() const { return simplex_labels_; }
  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }

  SimplexSet carrier(Face f) const { return sigma_(f); }
  bool is_interior(Face f) const { return carrier(f) == simplex(); }

  int vertex_id(const std::string& label) const {
    for (std::size_t i = 0; i < vertex_labels_.size(); ++i)
      if (vertex_labels_[i] == label) return static_cast<int>(i);
    throw TriangulationError("unknown vertex label '" + label + "'");
  }
  int simplex_id(const std::string& label) const {
    for (std::size_t i = 0; i < simplex_labels_.size(); ++i)
      if (simplex_labels_[i] == label) return static_cast<int>(i);
    throw TriangulationError("unknown simplex vertex '" + label + "'");
  }
  Face face_of(const std::vector<std::string>& labels) const {
    Face f;
    for (const auto& l : labels) f.insert(vertex_id(l));
    return f;
  }
  SimplexSet simplex_set_of(const std::vector<std::string>& labels) const {
    SimplexSet s;
    for (const auto& l : labels) s.insert(simplex_id(l));
    return s;
  }
  std::vector<std::string> labels_of(Face f) const {
    std::vector<std::string> out;
    for (int v : f.elements()) out.push_back(vertex_labels_.at(static_cast<std::size_t>(v)));
    return out;
  }
  std::vector<std::string> simplex_labels_of(SimplexSet s) const {
    std::vector<std::string> out;
    for (int v : s.elements()) out.push_back(simplex_labels_.at(static_cast<std::size_t>(v)));
    return out;
  }

private:
  std::string name_;
  std::vector<std::string> simplex_labels_;
  std::vector<std::string> vertex_labels_;
  SimplicialComplex complex_;
  CarrierMap sigma_;
};

/// Problems with σ itself (monotonicity, containment in V, unique vertex
/// per simplex corner, dimension). Empty when the carrier map is sound.
inline std::vector<std::string> carrier_map_problems(const Triangulation& t) {
  std::vector<std::string> out;
  const auto& c = t.complex();
  const SimplexSet all = t.simplex();
  if (c.dim() != t.n() - 1)
    out.push_back("dim Γ = " + std::to_string(c.dim()) + " but the simplex has dimension " +
                  std::to_string(t.n() - 1));
  if (c.vertices() != VertexSet::range(static_cast<int>(t.vertex_labels().size())))
    out.push_back("declared vertices do not match the vertices used by facets");
  for (const auto& [f, s] : t.sigma().overrides())
    if (!c.contains(f)) out.push_back("carrier override for a non-face");
  for (Face f : c.faces()) {
    const SimplexSet s = t.carrier(f);
    if (!s.subset_of(all)) out.push_back("carrier outside the simplex");
    if (!t.sigma().union_of_vertices(f).subset_of(s))
      out.push_back("carrier smaller than the union of its vertex carriers");
    if (!f.empty() && s.empty()) out.push_back("empty carrier on a nonempty face");
    for (int v : f.elements()) {
      const Face g = f - Face::singleton(v);
      if (!t.carrier(g).subset_of(s)) out.push_back("carrier map is not monotone");
    }
  }
  for (int v = 0; v < t.n(); ++v) {
    int count = 0;
    for (int w : c.vertices().elements())
      if (t.carrier(Face::singleton(w)) == SimplexSet::singleton(v)) ++count;
    if (count != 1)
      out.push_back("simplex vertex " + t.simplex_labels()[static_cast<std::size_t>(v)] + " is the carrier of " +
                    std::to_string(count) + " vertices (expected exactly 1)");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Γ_U = σ^{-1}(2^U).
inline SimplicialComplex restriction_gamma_u(const Triangulation& t, SimplexSet u) {
  return t.complex().subcomplex([&](Face f) { return t.carrier(f).subset_of(u); });
}

struct InteriorFaces {
  std::vector<Face> all;      ///< F ∈ lk(E) with F ⊔ E interior, canonical order
  std::vector<Face> minimal;  ///< minimal generators of the interior ideal
};

inline InteriorFaces interior_faces(const Triangulation& t, Face e) {
  const SimplicialComplex lk = link(t.complex(), e);
  InteriorFaces out;
  for (Face f : lk.faces())
    if (t.is_interior(f | e)) out.all.push_back(f);
  for (Face f : out.all) {
    bool minimal = true;
    for (Face g : out.all)
      if (g != f && g.subset_of(f)) {
        minimal = false;
        break;
      }
    if (minimal) out.minimal.push_back(f);
  }
  return out;
}

enum class ValidationMode { fast, full };

struct Violation {
  std::string kind;
  SimplexSet u;
  std::optional<Face> face;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

namespace detail {

inline std::string betti_string(const ReducedHomology& h) {
  std::string s = "(";
  for (std::size_t i = 0; i < h.shifted.size(); ++i) {
    if (i != 0) s += ",";
    s += std::to_string(h.shifted[i]);
  }
  return s + ") in degrees -1..";
}

inline void validate_u(const Triangulation& t, SimplexSet u, ValidationMode mode, HomologyCache& cache,
                       std::vector<Violation>& out) {
  const int ball_dim = u.size() - 1;
  const SimplicialComplex gu = restriction_gamma_u(t, u);
  auto add = [&](std::string kind, std::optional<Face> f, std::string detail) {
    out.push_back({std::move(kind), u, f, std::move(detail)});
  };
  if (gu.dim() != ball_dim || !gu.is_pure()) {
    add("dimension", std::nullopt,
        "Γ_U has dimension " + std::to_string(gu.dim()) + (gu.is_pure() ? "" : " and is not pure") +
            ", expected a pure complex of dimension " + std::to_string(ball_dim));
    return;
  }
  const auto hu = cache.get(gu);
  if (!hu.acyclic()) add("ball-homology", std::nullopt, "Γ_U has nontrivial reduced homology " + betti_string(hu));

  const SimplicialComplex boundary = gu.subcomplex([&](Face f) { return t.carrier(f) != u; });
  const auto hb = cache.get(boundary);
  if (!hb.is_sphere(ball_dim - 1))
    add("boundary-sphere", std::nullopt,
        "∂Γ_U is not a homology " + std::to_string(ball_dim - 1) + "-sphere: " + betti_string(hb));

  // ridges: two facets inside, one on the boundary
  for (Face r : gu.faces_of_size(ball_dim)) {
    int count = 0;
    for (Face f : gu.facets())
      if (r.subset_of(f)) ++count;
    const bool interior = t.carrier(r) == u;
    if (count != (interior ? 2 : 1))
      add("interior-faces", r,
          std::string(interior ? "interior" : "boundary") + " ridge lies in " + std::to_string(count) +
              " facets of Γ_U");
  }
  if (mode == ValidationMode::fast) return;

  for (Face f : gu.faces()) {
    if (f.empty()) continue;
    const auto h = cache.get(link(gu, f));
    if (t.carrier(f) == u) {
      if (!h.is_sphere(ball_dim - f.size()))
        add("interior-link", f, "link of an interior face is not a homology sphere: " + betti_string(h));
    } else {
      if (!h.acyclic()) add("boundary-link", f, "link of a boundary face is not acyclic: " + betti_string(h));
      const auto hb_link = cache.get(link(boundary, f));
      if (!hb_link.is_sphere(ball_dim - 1 - f.size()))
        add("boundary-sphere-link", f,
            "link inside ∂Γ_U is not a homology sphere: " + betti_string(hb_link));
    }
  }
}

}  // namespace detail

/// Checks the homology-triangulation axioms for every nonempty U ⊆ V.
/// fast: Γ_U acyclic of the right dimension, ∂Γ_U := {F : σ(F) ⊊ U} has the
/// homology of a (|U|-2)-sphere, and interior ridges are exactly those
/// carried by U. full: additionally every link condition of the homology
/// ball definition, with ∂Γ_U as the boundary.
inline ValidationReport validate_homology_triangulation(const Triangulation& t,
                                                        ValidationMode mode = ValidationMode::full,
                                                        std::uint64_t characteristic = 0) {
  ValidationReport report;
  for (auto& p : carrier_map_problems(t)) report.violations.push_back({"carrier-map", {}, std::nullopt, p});
  if (!report.violations.empty()) {
    report.ok = false;
    return report;
  }
  std::vector<SimplexSet> subsets;
  t.simplex().for_each_subset([&](SimplexSet u) {
    if (!u.empty()) subsets.push_back(u);
  });
  std::sort(subsets.begin(), subsets.end(), canonical_less);
  HomologyCache cache(characteristic);
  std::vector<std::vector<Violation>> per_u(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) { detail::validate_u(t, subsets[i], mode, cache, per_u[i]); });
  for (auto& v : per_u)
    for (auto& x : v) report.violations.push_back(std::move(x));
  report.ok = report.violations.empty();
  return report;
}

struct QuasiGeometricResult {
  bool ok = true;
  std::optional<Face> witness_face;
  std::optional<SimplexSet> witness_u;
};

/// True iff every face F satisfies dim Γ_{U_F} ≥ dim F, U_F the union of the
/// carriers of the vertices of F. On failure the first offending face (in
/// canonical order) is returned.
inline QuasiGeometricResult is_quasi_geometric(const Triangulation& t) {
  std::map<std::uint64_t, int> dim_cache;
  for (Face f : t.complex().faces()) {
    if (f.empty()) continue;
    const SimplexSet u = t.sigma().union_of_vertices(f);
    auto it = dim_cache.find(u.bits());
    if (it == dim_cache.end()) it = dim_cache.emplace(u.bits(), restriction_gamma_u(t, u).dim()).first;
    if (it->second < f.size() - 1) return {false, f, u};
  }
  return {};
}

}  // namespace localh
