#pragma once

// The local face module L(Γ,E): the image of the interior ideal I in the
// Artinian reduction k[lk_Γ(E)]/(θ). Everything is computed degree by degree
// as ranks of explicit subspaces of k[lk_Γ(E)]_m; no normal forms needed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "localh/errors.hpp"
#include "localh/lsop.hpp"

namespace localh {

/// σ(X ⊔ E) for X in the working complex, together with the frame data
/// that ties the first b forms to missing simplex vertices.
struct CarrierContext {
  std::function<SimplexSet(Face)> with_e;
  int n = 0;
  int b = 0;
  std::vector<int> missing;

  static CarrierContext of(const Triangulation& t, const LocalFrame& fr) {
    const Face e = fr.e;
    return {[&t, e](Face x) { return t.carrier(x | e); }, t.n(), fr.b, fr.missing};
  }

  bool interior(Face x) const { return with_e(x) == SimplexSet::range(n); }
  SimplexSet missing_of(Face x) const { return with_e(x).complement(n); }
};

/// Indices of degree-m monomials with interior support: a basis of I_m.
inline std::vector<std::size_t> interior_indices(const MonomialBasis& basis, const CarrierContext& ctx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (ctx.interior(basis.monomials[i].support())) out.push_back(i);
  return out;
}

/// J_m = Σ_i θ_i·I_{m-1} + Σ_{j<b} θ_j·span{x^β : σ(supp β ⊔ E) ⊇ {v_j}^c}_{m-1},
/// the degree-m part of the ideal generated by θ_i x^F (F ⊔ E interior) and
/// θ_j x^G (σ(G ⊔ E) = {v_j}^c).
template <class F>
RowEchelon<F> j_span(const FaceRing<F>& ring, const std::vector<LinearForm<F>>& forms, const CarrierContext& ctx,
                     int m) {
  const F& field = ring.field();
  RowEchelon<F> ech(field, ring.dim(m));
  if (m == 0) return ech;
  const auto& prev = ring.basis(m - 1);
  for (std::size_t i = 0; i < prev.size(); ++i) {
    const SimplexSet miss = ctx.missing_of(prev.monomials[i].support());
    const SparseVec<typename F::Element> mono{{i, field.one()}};
    if (miss.empty()) {
      for (const auto& theta : forms) ech.insert(ring.multiply(theta, mono, m - 1));
    } else if (miss.size() == 1) {
      for (int j = 0; j < ctx.b; ++j)
        if (miss.contains(ctx.missing[static_cast<std::size_t>(j)]))
          ech.insert(ring.multiply(forms[static_cast<std::size_t>(j)], mono, m - 1));
    }
  }
  return ech;
}

struct LocalDegree {
  int degree = 0;
  std::size_t ring_dim = 0;      ///< dim R_m
  std::size_t theta_dim = 0;     ///< dim (θR)_m
  std::size_t interior_dim = 0;  ///< dim I_m
  std::size_t sum_dim = 0;       ///< dim (I + θR)_m
  std::int64_t ell = 0;          ///< dim L_m
};

struct LocalModule {
  Face e;
  int d = 0;
  std::vector<LocalDegree> degrees;
  std::vector<std::vector<Monomial>> representatives;  ///< monomial basis of L_m, if requested

  /// (ℓ_0, ..., ℓ_d).
  std::vector<std::int64_t> ell() const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(d + 1), 0);
    for (const auto& deg : degrees)
      if (deg.degree <= d) out[static_cast<std::size_t>(deg.degree)] = deg.ell;
    return out;
  }
  bool vanishes_above_d() const {
    return std::all_of(degrees.begin(), degrees.end(),
                       [this](const LocalDegree& g) { return g.degree <= d || g.ell == 0; });
  }
};

template <class F>
void require_usable_lsop(const SpecialLsop<F>& lsop, const LocalFrame& fr) {
  if (!lsop.verified) throw PreconditionError("l.s.o.p. has not been verified");
  if (static_cast<int>(lsop.forms.size()) != fr.d || lsop.b != fr.b)
    throw PreconditionError("l.s.o.p. does not belong to this face");
}

template <class F>
LocalModule local_module(const F& field, const Triangulation& t, Face e, const SpecialLsop<F>& lsop, int m_max,
                         bool with_representatives = false) {
  if (!t.complex().contains(e)) throw NotAFace("E is not a face of Γ");
  const LocalFrame fr = LocalFrame::of(t, e);
  require_usable_lsop(lsop, fr);
  const CarrierContext ctx = CarrierContext::of(t, fr);
  const FaceRing<F> ring(field, fr.link, t.vertex_labels().size());
  LocalModule out;
  out.e = e;
  out.d = fr.d;
  for (int m = 0; m <= m_max; ++m) {
    LocalDegree deg;
    deg.degree = m;
    deg.ring_dim = ring.dim(m);
    const auto& basis = ring.basis(m);
    const auto interior = interior_indices(basis, ctx);
    deg.interior_dim = interior.size();
    QuotientSpace<F> quotient(field, deg.ring_dim);
    for (const auto& row : ring.ideal_span(lsop.forms, m).basis()) quotient.add_relation(row);
    deg.theta_dim = quotient.relation_dim();
    std::vector<Monomial> reps;
    for (std::size_t i : interior)
      if (quotient.add_representative({{i, field.one()}})) reps.push_back(basis.monomials[i]);
    deg.sum_dim = deg.theta_dim + quotient.dim();
    deg.ell = static_cast<std::int64_t>(quotient.dim());
    out.degrees.push_back(deg);
    if (with_representatives) out.representatives.push_back(std::move(reps));
  }
  return out;
}

/// ℓ(Γ,E) = Σ_{U ⊇ σ(E)} (-1)^{|V|-|U|} h(lk_{Γ_U}(E)); purely combinatorial.
inline std::vector<std::int64_t> local_h_incexc(const Triangulation& t, Face e) {
  if (!t.complex().contains(e)) throw NotAFace("E is not a face of Γ");
  const int d = t.n() - e.size();
  std::vector<std::int64_t> ell(static_cast<std::size_t>(std::max(d, 0) + 1), 0);
  const SimplexSet base = t.carrier(e);
  const SimplexSet free = t.simplex() - base;
  free.for_each_subset([&](SimplexSet extra) {
    const SimplexSet u = base | extra;
    const SimplicialComplex gu = restriction_gamma_u(t, u);
    const auto h = h_vector(link(gu, e));
    const bool negative = (t.n() - u.size()) % 2 != 0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (j >= ell.size()) {
        if (h[j] != 0) throw InvariantViolation("h-vector longer than d+1 in the alternating sum");
        continue;
      }
      ell[j] += negative ? -h[j] : h[j];
    }
  });
  return ell;
}

struct PresentationDegree {
  int degree = 0;
  std::size_t j_dim = 0;       ///< dim J_m
  std::size_t kernel_dim = 0;  ///< dim ker(I_m → (R/θR)_m) = dim I_m ∩ (θR)_m
  bool contained = false;      ///< J_m ⊆ I_m ∩ (θR)_m
};

/// Builds J from its explicit generators and checks, degree by degree, that
/// it is exactly the kernel of I → R/θR. A mismatch raises InvariantViolation.
template <class F>
std::vector<PresentationDegree> presentation_J(const F& field, const Triangulation& t, Face e,
                                               const SpecialLsop<F>& lsop, int m_max) {
  if (!t.complex().contains(e)) throw NotAFace("E is not a face of Γ");
  const LocalFrame fr = LocalFrame::of(t, e);
  require_usable_lsop(lsop, fr);
  const CarrierContext ctx = CarrierContext::of(t, fr);
  const FaceRing<F> ring(field, fr.link, t.vertex_labels().size());
  std::vector<PresentationDegree> out;
  for (int m = 0; m <= m_max; ++m) {
    PresentationDegree p;
    p.degree = m;
    const auto theta = ring.ideal_span(lsop.forms, m);
    const auto interior = interior_indices(ring.basis(m), ctx);
    RowEchelon<F> sum = theta;
    for (std::size_t i : interior) sum.insert({{i, field.one()}});
    p.kernel_dim = interior.size() + theta.rank() - sum.rank();
    const auto j = j_span(ring, lsop.forms, ctx, m);
    p.j_dim = j.rank();
    p.contained = true;
    for (const auto& row : j.basis()) {
      // inside I: every support interior
      for (const auto& [idx, c] : row)
        if (!ctx.interior(ring.basis(m).monomials[idx].support())) p.contained = false;
      if (!theta.contains(row)) p.contained = false;
    }
    if (!p.contained || p.j_dim != p.kernel_dim)
      throw InvariantViolation("J differs from ker(I → R/θR) in degree " + std::to_string(m) + ": dim J = " +
                               std::to_string(p.j_dim) + ", dim kernel = " + std::to_string(p.kernel_dim));
    out.push_back(p);
  }
  return out;
}

struct RestrictedModule {
  std::vector<std::int64_t> dims;  ///< dim (I|_Δ / J|_Δ)_m, m = 0..m_max
  std::vector<std::size_t> i_dims;
  std::vector<std::size_t> j_dims;

  bool is_zero() const {
    return std::all_of(dims.begin(), dims.end(), [](std::int64_t x) { return x == 0; });
  }
};

/// I|_Δ / J|_Δ computed inside k[Δ] with the restricted forms.
template <class F>
RestrictedModule restricted_quotient(const FaceRing<F>& ring, const std::vector<LinearForm<F>>& forms,
                                     const CarrierContext& ctx, int m_max) {
  const F& field = ring.field();
  const VertexSet verts = ring.complex().vertices();
  std::vector<LinearForm<F>> restricted;
  for (const auto& th : forms) restricted.push_back(th.restricted_to(verts));
  RestrictedModule out;
  for (int m = 0; m <= m_max; ++m) {
    const auto interior = interior_indices(ring.basis(m), ctx);
    const auto j = j_span(ring, restricted, ctx, m);
    for (const auto& row : j.basis())
      for (const auto& [idx, c] : row)
        if (!ctx.interior(ring.basis(m).monomials[idx].support()))
          throw InvariantViolation("restricted J leaves the restricted interior ideal");
    out.i_dims.push_back(interior.size());
    out.j_dims.push_back(j.rank());
    out.dims.push_back(static_cast<std::int64_t>(interior.size()) - static_cast<std::int64_t>(j.rank()));
    (void)field;
  }
  return out;
}

template <class F>
RestrictedModule restrict_module(const F& field, const Triangulation& t, Face e, const SimplicialComplex& delta,
                                 const SpecialLsop<F>& lsop, int m_max) {
  if (!t.complex().contains(e)) throw NotAFace("E is not a face of Γ");
  const LocalFrame fr = LocalFrame::of(t, e);
  require_usable_lsop(lsop, fr);
  for (Face f : delta.faces())
    if (!fr.link.contains(f)) throw PreconditionError("Δ is not a subcomplex of lk_Γ(E)");
  const FaceRing<F> ring(field, delta, t.vertex_labels().size());
  return restricted_quotient(ring, lsop.forms, CarrierContext::of(t, fr), m_max);
}

/// A face described only by the carriers of its vertices, inside a simplex
/// of size n, relative to a face E known only through σ(E) and |E|.
struct StandaloneFace {
  std::string name;
  std::vector<std::string> simplex_labels;
  std::vector<std::string> vertex_labels;
  std::vector<SimplexSet> carriers;
  SimplexSet e_carrier;
  int e_size = 0;

  int n() const { return static_cast<int>(simplex_labels.size()); }
  Face face() const { return Face::range(static_cast<int>(carriers.size())); }
  SimplexSet carrier_with_e(Face x) const {
    SimplexSet s = e_carrier;
    for (int w : x.elements()) s = s | carriers.at(static_cast<std::size_t>(w));
    return s;
  }
  CarrierContext context() const {
    CarrierContext ctx;
    ctx.with_e = [this](Face x) { return carrier_with_e(x); };
    ctx.n = n();
    ctx.missing = e_carrier.complement(n()).elements();
    ctx.b = static_cast<int>(ctx.missing.size());
    return ctx;
  }
};

struct StandaloneResult {
  RestrictedModule module;
  std::uint64_t seed_a = 0;
  std::uint64_t seed_b = 0;
  int attempts = 0;
};

/// Forms with supports {w ∈ F : v_i ∈ σ(w)} (i < b) or all of F (i ≥ b) and
/// random nonzero coefficients.
template <class F>
std::vector<LinearForm<F>> standalone_forms(const F& field, const StandaloneFace& sf, std::uint64_t seed,
                                            std::int64_t bound) {
  const CarrierContext ctx = sf.context();
  const int d = sf.n() - sf.e_size;
  SeededRng rng = SeededRng(seed).split("standalone");
  std::vector<LinearForm<F>> forms;
  for (int i = 0; i < d; ++i) {
    LinearForm<F> th;
    for (int w = 0; w < static_cast<int>(sf.carriers.size()); ++w) {
      const bool in_support =
          i >= ctx.b || sf.carriers[static_cast<std::size_t>(w)].contains(ctx.missing[static_cast<std::size_t>(i)]);
      if (!in_support) continue;
      auto c = field.from_int(rng.nonzero(bound));
      if (field.is_zero(c)) c = field.one();
      th.coeffs.emplace_back(static_cast<std::size_t>(w), c);
    }
    forms.push_back(std::move(th));
  }
  return forms;
}

/// L(Γ,E)|_F for a face given only by vertex carriers, with generic forms.
/// Two independently seeded computations must agree; on disagreement both
/// seeds are redrawn, up to `retries` times.
template <class F>
StandaloneResult restricted_standalone(const F& field, const StandaloneFace& sf, std::uint64_t seed, int m_max,
                                       std::int64_t bound = kDefaultCoefficientBound, int retries = 8) {
  if (sf.carriers.empty() || sf.carriers.size() > 16) throw PreconditionError("standalone face needs 1..16 vertices");
  if (sf.e_size < 0 || sf.e_size > sf.n()) throw PreconditionError("invalid |E|");
  const SimplicialComplex simplex(std::vector<Face>{sf.face()});
  const FaceRing<F> ring(field, simplex, sf.carriers.size());
  const CarrierContext ctx = sf.context();
  SeededRng root(seed);
  for (int attempt = 1; attempt <= retries; ++attempt) {
    SeededRng draw = root.split(static_cast<std::uint64_t>(attempt));
    const std::uint64_t sa = draw.split("a").next();
    const std::uint64_t sb = draw.split("b").next();
    auto run = [&](std::uint64_t s) {
      auto forms = standalone_forms(field, sf, s, bound);
      return restricted_quotient(ring, forms, ctx, m_max);
    };
    RestrictedModule a = run(sa);
    RestrictedModule b = run(sb);
    if (a.dims == b.dims) return {std::move(a), sa, sb, attempt};
  }
  throw LsopError("standalone restricted module: independent seeds kept disagreeing");
}

}  // namespace localh
