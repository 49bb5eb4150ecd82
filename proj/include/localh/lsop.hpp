#pragma once

// Linear systems of parameters for k[lk_Γ(E)]: the special support pattern,
// Hall's condition on supports, seeded construction and verification.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "localh/face_ring.hpp"
#include "localh/rng.hpp"
#include "localh/triangulation.hpp"

namespace localh {

inline constexpr std::int64_t kDefaultCoefficientBound = 997;
inline constexpr int kDefaultLsopRetries = 32;

class LsopError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The indexing of an l.s.o.p. for k[lk_Γ(E)]: d = n - |E| forms, the first
/// b = n - |σ(E)| of them tied to the simplex vertices missing from σ(E),
/// in simplex order.
struct LocalFrame {
  Face e;
  SimplicialComplex link;
  int d = 0;
  int b = 0;
  std::vector<int> missing;  ///< simplex vertex of form i, for i < b

  static LocalFrame of(const Triangulation& t, Face e) {
    LocalFrame fr;
    fr.e = e;
    fr.link = localh::link(t.complex(), e);
    fr.d = t.n() - e.size();
    fr.missing = t.carrier(e).complement(t.n()).elements();
    fr.b = static_cast<int>(fr.missing.size());
    if (fr.b > fr.d) throw TriangulationError("carrier of E is too small for its size (not quasi-geometric)");
    return fr;
  }

  /// Simplex vertices indexed by a set S of form indices.
  SimplexSet simplex_part(VertexSet s) const {
    SimplexSet out;
    for (int i : s.elements())
      if (i < b) out.insert(missing[static_cast<std::size_t>(i)]);
    return out;
  }
};

/// S_i = {w ∈ lk(E) : v_i ∈ σ(w)} for i < b, all link vertices otherwise.
inline std::vector<VertexSet> special_supports(const Triangulation& t, const LocalFrame& fr) {
  std::vector<VertexSet> out(static_cast<std::size_t>(fr.d));
  const VertexSet verts = fr.link.vertices();
  for (int i = 0; i < fr.d; ++i) {
    if (i < fr.b) {
      for (int w : verts.elements())
        if (t.carrier(Face::singleton(w)).contains(fr.missing[static_cast<std::size_t>(i)]))
          out[static_cast<std::size_t>(i)].insert(w);
    } else {
      out[static_cast<std::size_t>(i)] = verts;
    }
  }
  return out;
}

inline std::vector<VertexSet> special_supports(const Triangulation& t, Face e) {
  return special_supports(t, LocalFrame::of(t, e));
}

struct MarriageResult {
  bool ok = true;
  std::optional<Face> witness;  ///< a face F with |{i : S_i ∩ F ≠ ∅}| < |F|
};

/// Checks |{i : S_i ∩ F ≠ ∅}| ≥ |F| for every face F. Per facet this is
/// Hall's condition for matching its vertices to distinct supports, so each
/// facet is tested by augmenting paths; a failure yields the Hall violator
/// (vertices reachable from an unmatched vertex by alternating paths).
inline MarriageResult marriage_check(const std::vector<VertexSet>& supports, const SimplicialComplex& delta) {
  const std::size_t k = supports.size();
  for (Face facet : delta.facets()) {
    const auto verts = facet.elements();
    std::vector<int> match_form(k, -1);  // form -> position in verts
    std::vector<int> match_vert(verts.size(), -1);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t p) -> bool {
      for (std::size_t i = 0; i < k; ++i) {
        if (!supports[i].contains(verts[p]) || seen[i]) continue;
        seen[i] = 1;
        if (match_form[i] < 0 || augment(static_cast<std::size_t>(match_form[i]))) {
          match_form[i] = static_cast<int>(p);
          match_vert[p] = static_cast<int>(i);
          return true;
        }
      }
      return false;
    };
    for (std::size_t p = 0; p < verts.size(); ++p) {
      seen.assign(k, 0);
      if (augment(p)) continue;
      // alternating reachability from the unmatched vertex p
      Face violator = Face::singleton(verts[p]);
      std::vector<std::size_t> stack{p};
      std::vector<char> visited_form(k, 0);
      while (!stack.empty()) {
        const std::size_t q = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < k; ++i) {
          if (!supports[i].contains(verts[q]) || visited_form[i]) continue;
          visited_form[i] = 1;
          const int r = match_form[i];
          if (r >= 0 && !violator.contains(verts[static_cast<std::size_t>(r)])) {
            violator.insert(verts[static_cast<std::size_t>(r)]);
            stack.push_back(static_cast<std::size_t>(r));
          }
        }
      }
      return {false, violator};
    }
  }
  return {};
}

/// Condition (*): on every facet F the restrictions θ_i|_F span a space of
/// dimension |F| (and there are exactly dim+1 forms).
template <class F>
bool verify_lsop(const F& field, const std::vector<LinearForm<F>>& forms, const SimplicialComplex& delta) {
  if (static_cast<int>(forms.size()) != delta.dim() + 1) return false;
  for (Face facet : delta.facets()) {
    const auto verts = facet.elements();
    Matrix<F> m(field, forms.size(), verts.size());
    for (std::size_t i = 0; i < forms.size(); ++i)
      for (std::size_t j = 0; j < verts.size(); ++j) m.set(i, j, forms[i].coefficient(field, verts[j]));
    if (rank(m) != verts.size()) return false;
  }
  return true;
}

template <class F>
struct SpecialLsop {
  std::vector<LinearForm<F>> forms;
  int b = 0;
  std::vector<int> missing;
  std::vector<VertexSet> supports;
  std::uint64_t seed = 0;
  std::int64_t bound = kDefaultCoefficientBound;
  int attempts = 0;
  bool verified = false;
};

/// Draws θ_i with support exactly S_i and coefficients uniform among the
/// nonzero integers in [-bound, bound], retrying until condition (*) holds.
template <class F>
SpecialLsop<F> sample_lsop(const F& field, const Triangulation& t, const LocalFrame& fr, std::uint64_t seed,
                           std::int64_t bound = kDefaultCoefficientBound, int retries = kDefaultLsopRetries) {
  const auto supports = special_supports(t, fr);
  const auto hall = marriage_check(supports, fr.link);
  if (!hall.ok) throw LsopError("support pattern violates the marriage condition");
  SeededRng root = SeededRng(seed).split("lsop");
  for (int attempt = 1; attempt <= retries; ++attempt) {
    SeededRng rng = root.split(static_cast<std::uint64_t>(attempt));
    SpecialLsop<F> out;
    out.b = fr.b;
    out.missing = fr.missing;
    out.supports = supports;
    out.seed = seed;
    out.bound = bound;
    out.attempts = attempt;
    for (VertexSet s : supports) {
      LinearForm<F> theta;
      for (int w : s.elements()) {
        auto c = field.from_int(rng.nonzero(bound));
        if (field.is_zero(c)) c = field.one();
        theta.coeffs.emplace_back(static_cast<std::size_t>(w), c);
      }
      out.forms.push_back(std::move(theta));
    }
    if (verify_lsop(field, out.forms, fr.link)) {
      out.verified = true;
      return out;
    }
  }
  throw LsopError("no l.s.o.p. verified within " + std::to_string(retries) +
                  " draws (coefficient bound too small or characteristic too small)");
}

/// True when the forms obey the special support constraint of the frame.
template <class F>
bool respects_special_supports(const SpecialLsop<F>& lsop, const Triangulation& t, const LocalFrame& fr) {
  const auto supports = special_supports(t, fr);
  for (int i = 0; i < fr.b; ++i)
    if (!lsop.forms[static_cast<std::size_t>(i)].support().subset_of(supports[static_cast<std::size_t>(i)]))
      return false;
  return true;
}

/// dim (k[Δ]/(θ))_m for m = 0..m_max.
template <class F>
std::vector<std::int64_t> quotient_dims(const FaceRing<F>& ring, const std::vector<LinearForm<F>>& forms,
                                        int m_max) {
  std::vector<std::int64_t> out;
  for (int m = 0; m <= m_max; ++m)
    out.push_back(static_cast<std::int64_t>(ring.dim(m)) -
                  static_cast<std::int64_t>(ring.ideal_span(forms, m).rank()));
  return out;
}

/// Membership x^α ∈ I_S ⇔ σ(supp α ⊔ E)^c ⊆ S, S a set of form indices.
inline bool in_ideal_s(const Triangulation& t, const LocalFrame& fr, VertexSet s, Face support) {
  const SimplexSet missing = t.carrier(support | fr.e).complement(t.n());
  return missing.subset_of(fr.simplex_part(s));
}

/// Degree-m slice of I_S: membership flags over the degree-m monomial basis.
struct IdealSlice {
  VertexSet s;
  int degree = 0;
  std::vector<bool> member;

  std::size_t dim() const { return static_cast<std::size_t>(std::count(member.begin(), member.end(), true)); }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < member.size(); ++i)
      if (member[i]) out.push_back(i);
    return out;
  }
};

inline IdealSlice ideal_slice_IS(const Triangulation& t, const LocalFrame& fr, const MonomialBasis& basis,
                                 VertexSet s) {
  IdealSlice out{s, basis.degree, std::vector<bool>(basis.size(), false)};
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.member[i] = in_ideal_s(t, fr, s, basis.monomials[i].support());
  return out;
}

}  // namespace localh
