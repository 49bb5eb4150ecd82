#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "localh/face.hpp"

namespace localh {

/// Face enumeration aborts beyond this many faces.
inline constexpr std::size_t kDefaultFaceCeiling = 5000;

inline constexpr int kMaxVertexId = 63;

class ComplexError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A finite simplicial complex on vertex ids 0..63, stored by its facets with
/// the full (downward closed) face list enumerated once at construction.
/// Faces are kept in canonical order: by size, then lexicographically.
/// Immutable, so safe to share between threads.
class SimplicialComplex {
public:
  /// The complex {∅}.
  SimplicialComplex() : SimplicialComplex(std::vector<Face>{}) {}

  explicit SimplicialComplex(const std::vector<Face>& generators,
                             std::size_t face_ceiling = kDefaultFaceCeiling) {
    std::unordered_set<Face> seen;
    seen.insert(Face{});
    for (Face g : generators) {
      if (seen.contains(g)) continue;
      g.for_each_subset([&](Face s) {
        if (seen.insert(s).second && seen.size() > face_ceiling)
          throw ComplexError("complex exceeds the face ceiling of " + std::to_string(face_ceiling) +
                             " faces");
      });
    }
    faces_.assign(seen.begin(), seen.end());
    std::sort(faces_.begin(), faces_.end(), canonical_less);
    index_ = std::move(seen);
    for (Face f : faces_) {
      vertices_ = vertices_ | f;
      dim_ = std::max(dim_, f.size() - 1);
    }
    // a face is a facet when no face one larger contains it
    std::unordered_set<Face> covered;
    for (Face f : faces_)
      for (int v : f.elements()) covered.insert(f - Face::singleton(v));
    for (Face f : faces_)
      if (!covered.contains(f)) facets_.push_back(f);
  }

  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Face>& facets() const { return facets_; }
  VertexSet vertices() const { return vertices_; }
  int dim() const { return dim_; }
  std::size_t num_faces() const { return faces_.size(); }
  bool contains(Face f) const { return index_.contains(f); }
  bool is_pure() const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [this](Face f) { return f.size() - 1 == dim_; });
  }

  std::vector<Face> faces_of_size(int k) const {
    std::vector<Face> out;
    for (Face f : faces_)
      if (f.size() == k) out.push_back(f);
    return out;
  }

  /// f_{-1}, f_0, ..., f_dim.
  std::vector<std::int64_t> f_vector() const {
    std::vector<std::int64_t> f(static_cast<std::size_t>(dim_ + 2), 0);
    for (Face g : faces_) ++f[static_cast<std::size_t>(g.size())];
    return f;
  }

  /// Order-independent identity of the complex (its sorted facet list).
  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (Face f : facets_) {
      h ^= f.bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return h;
  }

  bool operator==(const SimplicialComplex& o) const { return facets_ == o.facets_; }

  /// The subcomplex of faces satisfying a downward-closed predicate.
  template <class Pred>
  SimplicialComplex subcomplex(Pred&& keep) const {
    std::vector<Face> kept;
    for (Face f : faces_)
      if (keep(f)) kept.push_back(f);
    return SimplicialComplex(kept);
  }

private:
  std::vector<Face> faces_;
  std::vector<Face> facets_;
  std::unordered_set<Face> index_;
  VertexSet vertices_;
  int dim_ = -1;
};

/// Builds a complex from facet vertex lists. Duplicate ids inside a facet are
/// an error; facets contained in other facets are absorbed with a warning.
inline SimplicialComplex build_complex(const std::vector<std::vector<int>>& facets,
                                       std::vector<std::string>* warnings = nullptr,
                                       std::size_t face_ceiling = kDefaultFaceCeiling) {
  std::vector<Face> gens;
  gens.reserve(facets.size());
  for (const auto& f : facets) {
    Face s;
    for (int v : f) {
      if (v < 0 || v > kMaxVertexId)
        throw ComplexError("vertex id " + std::to_string(v) + " outside 0..63");
      if (s.contains(v)) throw ComplexError("duplicate vertex id " + std::to_string(v) + " in facet");
      s.insert(v);
    }
    gens.push_back(s);
  }
  SimplicialComplex c(gens, face_ceiling);
  if (warnings != nullptr) {
    for (Face g : gens)
      if (std::find(c.facets().begin(), c.facets().end(), g) == c.facets().end())
        warnings->push_back("non-maximal facet absorbed");
  }
  return c;
}

class NotAFace : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// lk(F) = {G : G ∩ F = ∅, G ∪ F ∈ c}.
inline SimplicialComplex link(const SimplicialComplex& c, Face f) {
  if (!c.contains(f)) throw NotAFace("link: not a face of the complex");
  std::vector<Face> gens;
  for (Face g : c.facets())
    if (f.subset_of(g)) gens.push_back(g - f);
  return SimplicialComplex(gens);
}

/// Closed star of F: all faces G with G ∪ F ∈ c (the join of 2^F and lk(F)).
inline SimplicialComplex closed_star(const SimplicialComplex& c, Face f) {
  if (!c.contains(f)) throw NotAFace("closed_star: not a face of the complex");
  std::vector<Face> gens;
  for (Face g : c.facets())
    if (f.subset_of(g)) gens.push_back(g);
  if (gens.empty()) gens.push_back(f);
  return SimplicialComplex(gens);
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// h_j = sum_i (-1)^{j-i} C(d-i, j-i) f_{i-1}, j = 0..d, d = dim + 1.
inline std::vector<std::int64_t> h_vector(const SimplicialComplex& c) {
  const auto f = c.f_vector();
  const std::int64_t d = c.dim() + 1;
  std::vector<std::int64_t> h(static_cast<std::size_t>(d + 1), 0);
  for (std::int64_t j = 0; j <= d; ++j)
    for (std::int64_t i = 0; i <= j; ++i) {
      const std::int64_t term = binomial(d - i, j - i) * f[static_cast<std::size_t>(i)];
      h[static_cast<std::size_t>(j)] += ((j - i) % 2 == 0) ? term : -term;
    }
  return h;
}

}  // namespace localh
