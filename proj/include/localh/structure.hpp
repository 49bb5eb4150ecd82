#pragma once

// Combinatorics of interior faces (apexes, base directions, interior
// partitions), internal edge graphs, and the audit that cross-checks them
// against computed local face modules.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "localh/local_module.hpp"

namespace localh {

inline constexpr int kMaxPartitionFace = 16;

struct InteriorPartition {
  Face f1;
  Face f2;
};

struct FaceStructure {
  Face face;
  Face apexes;
  std::map<int, SimplexSet> base_directions;  ///< V_w for each apex w
  bool pyramid = false;
  bool u_pyramid = false;
  std::vector<InteriorPartition> partitions;  ///< |F1| ≤ |F2|; on ties F1 holds the smaller first element

  std::optional<int> min_part() const {
    std::optional<int> best;
    for (const auto& p : partitions)
      if (!best || p.f1.size() < *best) best = p.f1.size();
    return best;
  }
};

inline FaceStructure face_structure(const CarrierContext& ctx, Face f) {
  if (!ctx.interior(f)) throw PreconditionError("F ⊔ E is not interior");
  if (f.size() > kMaxPartitionFace)
    throw PreconditionError("face has more than " + std::to_string(kMaxPartitionFace) + " vertices");
  FaceStructure out;
  out.face = f;
  for (int w : f.elements()) {
    Face rest = f;
    rest.erase(w);
    if (ctx.interior(rest)) continue;
    out.apexes.insert(w);
    const SimplexSet vw = ctx.missing_of(rest);
    out.base_directions.emplace(w, vw);
    if (vw.size() == 1) out.u_pyramid = true;
  }
  out.pyramid = !out.apexes.empty();
  const Face free = f - out.apexes;
  const auto verts = free.elements();
  free.for_each_subset([&](Face f1) {
    const Face f2 = free - f1;
    if (f1.size() > f2.size()) return;
    if (f1.size() == f2.size() && !f1.empty() && !f1.contains(verts.front())) return;
    if (ctx.interior(f1 | out.apexes) && ctx.interior(f2 | out.apexes)) out.partitions.push_back({f1, f2});
  });
  std::sort(out.partitions.begin(), out.partitions.end(), [](const InteriorPartition& a, const InteriorPartition& b) {
    if (a.f1 != b.f1) return canonical_less(a.f1, b.f1);
    return canonical_less(a.f2, b.f2);
  });
  return out;
}

inline FaceStructure face_structure(const Triangulation& t, Face e, Face f) {
  const LocalFrame fr = LocalFrame::of(t, e);
  if (!fr.link.contains(f)) throw NotAFace("F is not a face of lk(E)");
  return face_structure(CarrierContext::of(t, fr), f);
}

enum class ComponentShape { tree, unicyclic, violating };

inline const char* shape_name(ComponentShape s) {
  switch (s) {
    case ComponentShape::tree: return "tree";
    case ComponentShape::unicyclic: return "unicyclic";
    default: return "violating";
  }
}

struct EdgeComponent {
  VertexSet vertices;
  std::vector<Face> edges;
  ComponentShape shape = ComponentShape::tree;
  bool four_cycle = false;
};

struct InternalEdgeGraph {
  VertexSet vertices;
  std::vector<Face> edges;
  std::map<int, int> codim;  ///< n - |σ({v} ⊔ E)|
  std::vector<EdgeComponent> components;

  bool has_four_cycle() const {
    return std::any_of(components.begin(), components.end(), [](const EdgeComponent& c) { return c.four_cycle; });
  }
  bool all_allowed() const {
    return std::none_of(components.begin(), components.end(),
                        [](const EdgeComponent& c) { return c.shape == ComponentShape::violating; });
  }
};

inline InternalEdgeGraph internal_edge_graph(const CarrierContext& ctx, const SimplicialComplex& delta) {
  InternalEdgeGraph g;
  g.vertices = delta.vertices();
  for (int v : g.vertices.elements()) g.codim[v] = ctx.missing_of(Face::singleton(v)).size();
  for (Face e : delta.faces_of_size(2))
    if (ctx.interior(e)) g.edges.push_back(e);
  std::map<int, VertexSet> nbr;
  for (Face e : g.edges) {
    const auto p = e.elements();
    nbr[p[0]].insert(p[1]);
    nbr[p[1]].insert(p[0]);
  }
  VertexSet seen;
  for (int start : g.vertices.elements()) {
    if (seen.contains(start)) continue;
    EdgeComponent comp;
    std::vector<int> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.vertices.insert(v);
      for (int w : nbr[v].elements())
        if (!seen.contains(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
    }
    for (Face e : g.edges)
      if (e.subset_of(comp.vertices)) comp.edges.push_back(e);
    const int nv = comp.vertices.size();
    const int ne = static_cast<int>(comp.edges.size());
    int deep = 0;
    bool all_one = true;
    for (int v : comp.vertices.elements()) {
      if (g.codim[v] > 1) ++deep;
      if (g.codim[v] != 1) all_one = false;
    }
    if (ne == nv - 1 && deep <= 1)
      comp.shape = ComponentShape::tree;
    else if (ne == nv && all_one)
      comp.shape = ComponentShape::unicyclic;
    else
      comp.shape = ComponentShape::violating;
    // a 4-cycle exists iff two vertices share two neighbours
    const auto cv = comp.vertices.elements();
    for (std::size_t i = 0; i < cv.size() && !comp.four_cycle; ++i)
      for (std::size_t j = i + 1; j < cv.size(); ++j)
        if ((nbr[cv[i]] & nbr[cv[j]]).size() >= 2) {
          comp.four_cycle = true;
          break;
        }
    g.components.push_back(std::move(comp));
  }
  return g;
}

inline InternalEdgeGraph internal_edge_graph(const Triangulation& t, Face e, const SimplicialComplex& delta) {
  const LocalFrame fr = LocalFrame::of(t, e);
  for (Face f : delta.faces())
    if (!fr.link.contains(f)) throw PreconditionError("Δ is not a subcomplex of lk(E)");
  return internal_edge_graph(CarrierContext::of(t, fr), delta);
}

struct Witness {
  Face face;
  std::string kind;
  int degree = 0;
};

struct AuditEntry {
  std::string check;
  std::optional<Face> face;  ///< nullopt: the whole link
  bool ok = true;
  std::string detail;
};

struct AnalysisReport {
  Face e;
  std::vector<std::int64_t> ell;
  bool vanishing = false;
  std::vector<Witness> witnesses;
  std::vector<AuditEntry> audits;
  std::vector<FaceStructure> faces;

  bool contradiction() const {
    return std::any_of(audits.begin(), audits.end(), [](const AuditEntry& a) { return !a.ok; });
  }
  std::string verdict() const {
    if (contradiction()) return "contradiction";
    return vanishing ? "vanishing" : "nonvanishing";
  }
};

/// Runs every structural check that applies to (Γ,E). Failed checks are
/// recorded as audits with ok = false rather than thrown.
template <class F>
AnalysisReport vanishing_structure_audit(const F& field, const Triangulation& t, Face e, const SpecialLsop<F>& lsop) {
  const LocalFrame fr = LocalFrame::of(t, e);
  require_usable_lsop(lsop, fr);
  const CarrierContext ctx = CarrierContext::of(t, fr);
  const std::size_t nv = t.vertex_labels().size();
  const FaceRing<F> ring(field, fr.link, nv);
  AnalysisReport rep;
  rep.e = e;
  rep.ell = local_module(field, t, e, lsop, fr.d).ell();
  rep.vanishing = std::all_of(rep.ell.begin(), rep.ell.end(), [](std::int64_t x) { return x == 0; });
  auto ell_at = [&](int m) -> std::int64_t {
    return m >= 0 && m < static_cast<int>(rep.ell.size()) ? rep.ell[static_cast<std::size_t>(m)] : 0;
  };

  for (Face f : interior_faces(t, e).all) {
    if (f.size() > kMaxPartitionFace) {
      rep.audits.push_back({"face-size", f, true, "skipped: more than 16 vertices"});
      continue;
    }
    FaceStructure fs = face_structure(ctx, f);
    const auto best = fs.min_part();
    if (best && *best <= 2 && !fs.u_pyramid) {
      const int deg = *best + fs.apexes.size();
      rep.witnesses.push_back({f, "interior-partition", deg});
      const bool ok = ell_at(deg) >= 1;
      rep.audits.push_back({"partition-nonvanishing", f, ok,
                            "ℓ_" + std::to_string(deg) + " = " + std::to_string(ell_at(deg))});
    }
    if (fs.apexes == f && !fs.u_pyramid) {
      const int deg = f.size();
      const bool survives = !ring.ideal_span(lsop.forms, deg).contains(ring.monomial(Monomial::of_face(f, nv)));
      rep.witnesses.push_back({f, "apex-monomial", deg});
      rep.audits.push_back({"apex-monomial", f, survives, survives ? "x^F ∉ (θ)" : "x^F ∈ (θ)"});
    }
    if (fs.apexes.empty() && best && *best <= 2) {
      bool smaller = false;
      f.for_each_subset([&](Face g) {
        if (g.size() < *best && ctx.interior(g)) smaller = true;
      });
      if (!smaller) {
        const SimplicialComplex simplex(std::vector<Face>{f});
        const FaceRing<F> fring(field, simplex, nv);
        const auto rm = restricted_quotient(fring, lsop.forms, ctx, *best);
        const bool ok = rm.dims[static_cast<std::size_t>(*best)] >= 1;
        rep.witnesses.push_back({f, "restricted-face", *best});
        rep.audits.push_back({"restricted-nonvanishing", f, ok,
                              "dim (L|_F)_" + std::to_string(*best) + " = " +
                                  std::to_string(rm.dims[static_cast<std::size_t>(*best)])});
      }
    }
    rep.faces.push_back(std::move(fs));
  }

  // edge-graph and degree-one bounds on lk(E) and on each of its faces
  const int codim_e = t.n() - t.carrier(e).size();
  auto examine = [&](const SimplicialComplex& delta, std::optional<Face> label) {
    int interior_vertices = 0;
    for (int v : delta.vertices().elements())
      if (ctx.interior(Face::singleton(v))) ++interior_vertices;
    if (codim_e == 1) {
      const FaceRing<F> dring(field, delta, nv);
      const auto rm = restricted_quotient(dring, lsop.forms, ctx, 1);
      const bool ok = rm.dims[1] >= interior_vertices - 1;
      rep.audits.push_back({"codim-one-bound", label, ok,
                            "dim (L|)_1 = " + std::to_string(rm.dims[1]) + ", interior vertices = " +
                                std::to_string(interior_vertices)});
      if (interior_vertices >= 2) rep.witnesses.push_back({label.value_or(Face{}), "codim-one-bound", 1});
    }
    if (codim_e >= 2 && interior_vertices == 0) {
      const FaceRing<F> dring(field, delta, nv);
      const auto rm = restricted_quotient(dring, lsop.forms, ctx, 2);
      if (rm.dims[2] != 0) return;
      const auto g = internal_edge_graph(ctx, delta);
      std::string shapes;
      for (const auto& c : g.components) shapes += std::string(shapes.empty() ? "" : ",") + shape_name(c.shape);
      rep.audits.push_back({"edge-graph-shape", label, g.all_allowed(), "components: " + shapes});
      if (label) rep.audits.push_back({"edge-graph-four-cycle", label, !g.has_four_cycle(),
                                       g.has_four_cycle() ? "4-cycle present" : "no 4-cycle"});
    }
  };
  examine(fr.link, std::nullopt);
  for (Face f : fr.link.faces())
    if (f.size() >= 2) examine(SimplicialComplex(std::vector<Face>{f}), f);
  return rep;
}

}  // namespace localh
