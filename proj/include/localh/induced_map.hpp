#pragma once

// φ: L(Γ,E) → L(Γ,E') for E ⊆ E'. Restrict θ to the closed star of E'∖E,
// intersect the span with the degree-one part of k[lk(E')] to get ζ, and
// substitute x^u ↦ r_u for u ∈ E'∖E.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "localh/local_module.hpp"

namespace localh {

/// L_m presented by greedy interior-monomial representatives modulo (θ)_m.
template <class F>
struct ModuleSlice {
  QuotientSpace<F> quotient;
  std::vector<std::size_t> reps;  ///< basis indices of the representatives
};

template <class F>
ModuleSlice<F> module_slice(const FaceRing<F>& ring, const std::vector<LinearForm<F>>& forms,
                            const CarrierContext& ctx, int m) {
  const F& field = ring.field();
  ModuleSlice<F> out{QuotientSpace<F>(field, ring.dim(m)), {}};
  for (const auto& row : ring.ideal_span(forms, m).basis()) out.quotient.add_relation(row);
  for (std::size_t i : interior_indices(ring.basis(m), ctx))
    if (out.quotient.add_representative({{i, field.one()}})) out.reps.push_back(i);
  return out;
}

template <class F>
struct InducedMap {
  Face e;
  Face e2;
  Face star_dir;                                  ///< E' ∖ E
  SimplicialComplex star;                         ///< closed star of E'∖E in lk(E)
  std::vector<LinearForm<F>> restricted;          ///< θ'_i
  SpecialLsop<F> target;                          ///< ζ
  std::vector<int> tied;                          ///< ζ_i = θ'_{tied[i]} for i < b'
  std::map<int, LinearForm<F>> substitution;      ///< u ∈ E'∖E ↦ r_u
  std::vector<Matrix<F>> matrices;                ///< L_m → L'_m in representative coordinates
  std::vector<std::int64_t> source_dims;
  std::vector<std::int64_t> target_dims;
  std::vector<std::vector<Monomial>> source_reps;
  std::vector<std::vector<Monomial>> target_reps;
  std::uint64_t seed = 0;
  int d = 0;
  int d2 = 0;
  bool relations_checked = false;                 ///< non-face relations of Star verified
};

namespace detail {

template <class F>
LinearForm<F> combine(const F& field, const std::vector<LinearForm<F>>& forms,
                      const std::vector<typename F::Element>& c) {
  SparseVec<typename F::Element> acc;
  for (std::size_t i = 0; i < forms.size(); ++i) acc = axpy(field, acc, c[i], forms[i].coeffs);
  return {acc};
}

template <class F>
Matrix<F> form_rows(const F& field, const std::vector<LinearForm<F>>& forms, std::size_t nvars) {
  std::vector<SparseVec<typename F::Element>> rows;
  for (const auto& f : forms) rows.push_back(f.coeffs);
  return Matrix<F>::from_rows(field, nvars, rows);
}

/// φ applied to a degree-1 monomial x^w, as a linear form on lk(E').
template <class F>
std::optional<LinearForm<F>> image_of_vertex(const F& field, const InducedMap<F>& map, VertexSet target_verts, int w) {
  if (auto it = map.substitution.find(w); it != map.substitution.end()) return it->second;
  if (target_verts.contains(w)) return LinearForm<F>{{{static_cast<std::size_t>(w), field.one()}}};
  return std::nullopt;  // outside the star: killed
}

/// Product of images of the vertices of α (with multiplicity) in k[lk(E')]_{|α|}.
template <class F>
SparseVec<typename F::Element> image_of_monomial(const FaceRing<F>& target_ring, const InducedMap<F>& map,
                                                 const Monomial& alpha) {
  const F& field = target_ring.field();
  const VertexSet verts = target_ring.complex().vertices();
  if (!map.star.contains(alpha.support())) return {};
  SparseVec<typename F::Element> acc{{0, field.one()}};
  int deg = 0;
  for (std::size_t w = 0; w < alpha.exp.size(); ++w) {
    for (int r = 0; r < alpha.exp[w]; ++r) {
      auto img = image_of_vertex(field, map, verts, static_cast<int>(w));
      if (!img) return {};
      acc = target_ring.multiply(*img, acc, deg);
      ++deg;
    }
  }
  return acc;
}

}  // namespace detail

/// Builds φ and its matrices in degrees 0..m_max. Any step contradicting the
/// construction (dependent ζ_i, wrong intersection dimension, φ(L) ⊄ L',
/// θ not killed) raises InvariantViolation.
template <class F>
InducedMap<F> induced_map(const F& field, const Triangulation& t, Face e, Face e2, const SpecialLsop<F>& lsop,
                          std::uint64_t seed, int m_max, std::int64_t bound = kDefaultCoefficientBound) {
  if (!e.subset_of(e2)) throw PreconditionError("E is not contained in E'");
  if (!t.complex().contains(e2)) throw NotAFace("E' is not a face of Γ");
  const std::size_t nv = t.vertex_labels().size();
  const LocalFrame fr = LocalFrame::of(t, e);
  const LocalFrame fr2 = LocalFrame::of(t, e2);
  require_usable_lsop(lsop, fr);

  InducedMap<F> map;
  map.e = e;
  map.e2 = e2;
  map.star_dir = e2 - e;
  map.seed = seed;
  map.d = fr.d;
  map.d2 = fr2.d;
  map.star = closed_star(fr.link, map.star_dir);
  const VertexSet star_verts = map.star.vertices();
  const VertexSet target_verts = fr2.link.vertices();
  for (const auto& th : lsop.forms) map.restricted.push_back(th.restricted_to(star_verts));

  // (ζ)_1 = k[lk(E')]_1 ∩ (θ')_1
  std::vector<SparseVec<typename F::Element>> units;
  for (int w : target_verts.elements()) units.push_back({{static_cast<std::size_t>(w), field.one()}});
  const Matrix<F> inter =
      intersect_rowspaces(detail::form_rows(field, map.restricted, nv), Matrix<F>::from_rows(field, nv, units));
  if (static_cast<int>(inter.rows()) != fr2.d)
    throw InvariantViolation("degree-one intersection has dimension " + std::to_string(inter.rows()) + ", expected " +
                             std::to_string(fr2.d));
  RowEchelon<F> span(field, nv);
  for (const auto& r : inter.row_data()) span.insert(r);

  SpecialLsop<F> z;
  z.b = fr2.b;
  z.missing = fr2.missing;
  z.supports = special_supports(t, fr2);
  z.seed = seed;
  z.bound = bound;
  z.attempts = 1;
  RowEchelon<F> chosen(field, nv);
  for (int i = 0; i < fr2.b; ++i) {
    const int v = fr2.missing[static_cast<std::size_t>(i)];
    const auto it = std::find(fr.missing.begin(), fr.missing.end(), v);
    if (it == fr.missing.end()) throw InvariantViolation("σ(E) ⊄ σ(E')");
    const int j = static_cast<int>(it - fr.missing.begin());
    LinearForm<F> zeta = map.restricted[static_cast<std::size_t>(j)];
    if (!zeta.support().subset_of(target_verts)) throw InvariantViolation("θ'_j not supported on lk(E')");
    if (!span.contains(zeta.coeffs)) throw InvariantViolation("θ'_j outside the degree-one intersection");
    if (!chosen.insert(zeta.coeffs))
      throw InvariantViolation("restrictions θ_j|lk(E') are linearly dependent");
    map.tied.push_back(j);
    z.forms.push_back(std::move(zeta));
  }
  SeededRng rng = SeededRng(seed).split("zeta");
  const auto basis = inter.row_data();
  int guard = 0;
  while (static_cast<int>(z.forms.size()) < fr2.d) {
    if (++guard > 64 * (fr2.d + 1)) throw InvariantViolation("could not extend ζ to a basis");
    SparseVec<typename F::Element> v;
    for (const auto& r : basis) v = axpy(field, v, field.from_int(rng.nonzero(bound)), r);
    if (chosen.insert(v)) z.forms.push_back({v});
  }
  if (!verify_lsop(field, z.forms, fr2.link)) throw InvariantViolation("ζ fails condition (*) on lk(E')");
  z.verified = true;
  map.target = z;

  // substitution x^u ↦ r_u = x^u - Σ c_i θ'_i with c chosen to clear E'∖E
  const auto dir = map.star_dir.elements();
  Matrix<F> sys(field, dir.size(), map.restricted.size());
  for (std::size_t r = 0; r < dir.size(); ++r)
    for (std::size_t i = 0; i < map.restricted.size(); ++i)
      sys.set(r, i, map.restricted[i].coefficient(field, dir[r]));
  for (std::size_t r = 0; r < dir.size(); ++r) {
    std::vector<typename F::Element> rhs(dir.size(), field.zero());
    rhs[r] = field.one();
    const auto c = solve(sys, rhs);
    if (!c) throw InvariantViolation("x^u is not congruent to a form on lk(E')");
    LinearForm<F> r_u = detail::combine(field, map.restricted, *c);
    r_u.coeffs = axpy(field, SparseVec<typename F::Element>{{static_cast<std::size_t>(dir[r]), field.one()}},
                      field.neg(field.one()), r_u.coeffs);
    if (!r_u.support().subset_of(target_verts)) throw InvariantViolation("substitution leaves lk(E')");
    map.substitution.emplace(dir[r], std::move(r_u));
  }

  // φ kills θ: φ(θ_i) ∈ (ζ)_1
  for (const auto& th : lsop.forms) {
    SparseVec<typename F::Element> img;
    for (const auto& [w, c] : th.coeffs)
      if (auto f = detail::image_of_vertex(field, map, target_verts, static_cast<int>(w)))
        img = axpy(field, img, c, f->coeffs);
    if (!span.contains(img)) throw InvariantViolation("φ(θ_i) is not in (ζ)");
  }

  const FaceRing<F> src_ring(field, fr.link, nv);
  const FaceRing<F> dst_ring(field, fr2.link, nv);
  const CarrierContext src_ctx = CarrierContext::of(t, fr);
  const CarrierContext dst_ctx = CarrierContext::of(t, fr2);

  // minimal non-faces of Star among its vertices must map to 0 in k[lk(E')]/(ζ)
  if (star_verts.size() <= 16) {
    const int top = map.star.dim() + 2;
    star_verts.for_each_subset([&](VertexSet n) {
      if (n.size() < 2 || n.size() > top || map.star.contains(n)) return;
      for (int x : n.elements()) {
        VertexSet smaller = n;
        smaller.erase(x);
        if (!map.star.contains(smaller)) return;
      }
      SparseVec<typename F::Element> acc{{0, field.one()}};
      int deg = 0;
      for (int w : n.elements()) {
        auto img = detail::image_of_vertex(field, map, target_verts, w);
        acc = dst_ring.multiply(*img, acc, deg++);
      }
      if (!dst_ring.ideal_span(map.target.forms, deg).contains(acc))
        throw InvariantViolation("φ does not kill a non-face of the star");
    });
    map.relations_checked = true;
  }

  for (int m = 0; m <= m_max; ++m) {
    const ModuleSlice<F> src = module_slice(src_ring, lsop.forms, src_ctx, m);
    const ModuleSlice<F> dst = module_slice(dst_ring, map.target.forms, dst_ctx, m);
    Matrix<F> mat(field, dst.reps.size(), src.reps.size());
    for (std::size_t c = 0; c < src.reps.size(); ++c) {
      const auto img = detail::image_of_monomial(dst_ring, map, src_ring.basis(m).monomials[src.reps[c]]);
      const auto coords = dst.quotient.coordinates(img);
      if (!coords) throw InvariantViolation("φ(L) ⊄ L' in degree " + std::to_string(m));
      for (std::size_t r = 0; r < coords->size(); ++r)
        if (!field.is_zero((*coords)[r])) mat.set(r, c, (*coords)[r]);
    }
    map.matrices.push_back(std::move(mat));
    map.source_dims.push_back(static_cast<std::int64_t>(src.reps.size()));
    map.target_dims.push_back(static_cast<std::int64_t>(dst.reps.size()));
    std::vector<Monomial> sr, tr;
    for (auto i : src.reps) sr.push_back(src_ring.basis(m).monomials[i]);
    for (auto i : dst.reps) tr.push_back(dst_ring.basis(m).monomials[i]);
    map.source_reps.push_back(std::move(sr));
    map.target_reps.push_back(std::move(tr));
  }
  return map;
}

struct MonotonicityResult {
  bool surjective = true;
  bool ell_monotone = true;
  bool source_symmetric = true;
  std::vector<std::size_t> ranks;
  std::vector<std::int64_t> ell;
  std::vector<std::int64_t> ell2;
  bool ok() const { return surjective && ell_monotone && source_symmetric; }
};

/// Requires σ(E) = σ(E'); checks every φ_m is onto and ℓ ≥ ℓ' on 0..d'.
template <class F>
MonotonicityResult check_monotonicity(const Triangulation& t, const InducedMap<F>& map) {
  if (t.carrier(map.e) != t.carrier(map.e2)) throw PreconditionError("σ(E) ≠ σ(E')");
  MonotonicityResult out;
  for (std::size_t m = 0; m < map.matrices.size(); ++m) {
    const std::size_t r = rank(map.matrices[m]);
    out.ranks.push_back(r);
    if (static_cast<std::int64_t>(r) != map.target_dims[m]) out.surjective = false;
  }
  out.ell.assign(static_cast<std::size_t>(map.d + 1), 0);
  out.ell2.assign(static_cast<std::size_t>(map.d2 + 1), 0);
  for (std::size_t m = 0; m < map.source_dims.size(); ++m) {
    if (static_cast<int>(m) <= map.d) out.ell[m] = map.source_dims[m];
    if (static_cast<int>(m) <= map.d2) out.ell2[m] = map.target_dims[m];
  }
  for (int i = 0; i <= map.d; ++i)
    if (out.ell[static_cast<std::size_t>(i)] != out.ell[static_cast<std::size_t>(map.d - i)]) out.source_symmetric = false;
  for (int i = 0; i <= map.d2; ++i)
    if (out.ell[static_cast<std::size_t>(i)] < out.ell2[static_cast<std::size_t>(i)]) out.ell_monotone = false;
  return out;
}

template <class F>
bool same_span(const F& field, const std::vector<LinearForm<F>>& a, const std::vector<LinearForm<F>>& b,
               std::size_t nv) {
  RowEchelon<F> ea(field, nv), eb(field, nv);
  for (const auto& f : a) ea.insert(f.coeffs);
  for (const auto& f : b) eb.insert(f.coeffs);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& f : b)
    if (!ea.contains(f.coeffs)) return false;
  return true;
}

struct CompositionResult {
  bool spans_agree = true;     ///< (ζ'') = (ζ') in degree one
  bool composes = true;        ///< φ'' = φ'∘φ in every degree
  bool seed_invariant = true;  ///< φ unchanged under a second ζ extension seed
  bool ok() const { return spans_agree && composes && seed_invariant; }
};

template <class F>
CompositionResult check_functor_composition(const F& field, const Triangulation& t, Face e, Face e2, Face e3,
                                            const SpecialLsop<F>& lsop, std::uint64_t seed_a, std::uint64_t seed_b,
                                            int m_max) {
  if (!e.subset_of(e2) || !e2.subset_of(e3)) throw PreconditionError("faces do not form a chain");
  const std::size_t nv = t.vertex_labels().size();
  CompositionResult out;
  const auto phi = induced_map(field, t, e, e2, lsop, seed_a, m_max);
  const auto phi2 = induced_map(field, t, e2, e3, phi.target, seed_a, m_max);
  const auto phi3 = induced_map(field, t, e, e3, lsop, seed_a, m_max);
  out.spans_agree = same_span(field, phi2.target.forms, phi3.target.forms, nv);
  if (out.spans_agree) {
    for (int m = 0; m <= m_max; ++m) {
      const auto& a = phi2.matrices[static_cast<std::size_t>(m)];
      const auto& b = phi.matrices[static_cast<std::size_t>(m)];
      const auto& c = phi3.matrices[static_cast<std::size_t>(m)];
      const bool empty = a.cols() == 0 || b.rows() == 0;
      if (empty ? !c.is_zero() : !(a * b == c)) out.composes = false;
    }
  } else {
    out.composes = false;
  }
  const auto again = induced_map(field, t, e, e2, lsop, seed_b, m_max);
  for (int m = 0; m <= m_max; ++m)
    if (!(again.matrices[static_cast<std::size_t>(m)] == phi.matrices[static_cast<std::size_t>(m)]))
      out.seed_invariant = false;
  return out;
}

}  // namespace localh
