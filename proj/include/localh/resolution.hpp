#pragma once

// The resolution 0 → T_d → ... → T_1 → T_0 → L → 0 with
// T_k = ⊕_{|S|=k} I_S[-k] and differential ⊕_j (-1)^j θ_{i_j} on I_S.
// Verified degree by degree as explicit matrices.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "localh/local_module.hpp"

namespace localh {

/// k-subsets of {0..d-1} in lexicographic order of sorted index tuples.
inline std::vector<VertexSet> subsets_of_size(int d, int k) {
  std::vector<VertexSet> out;
  VertexSet::range(d).for_each_subset([&](VertexSet s) {
    if (s.size() == k) out.push_back(s);
  });
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

/// One summand I_S of T_k in a fixed degree: indices into the degree-(m-k)
/// monomial basis.
struct ResolutionBlock {
  VertexSet s;
  std::vector<std::size_t> monomials;
};

template <class F>
struct ResolutionDegree {
  int degree = 0;
  std::vector<std::vector<ResolutionBlock>> terms;  ///< terms[k], k = 0..d
  std::vector<Matrix<F>> differentials;             ///< differentials[k]: T_k → T_{k-1}, k = 1..d (index 0 unused)
  std::size_t interior_dim = 0;                     ///< dim I_m
  std::size_t kernel_dim = 0;                       ///< dim I_m ∩ (θR)_m
  std::int64_t ell = 0;

  std::size_t term_dim(int k) const {
    std::size_t n = 0;
    for (const auto& b : terms.at(static_cast<std::size_t>(k))) n += b.monomials.size();
    return n;
  }
};

template <class F>
struct ResolutionComplex {
  Face e;
  int d = 0;
  int b = 0;
  std::vector<std::vector<VertexSet>> subsets;  ///< subsets[k]
  std::vector<ResolutionDegree<F>> degrees;

  /// Sign pattern of d_k: entry (row S', column S) is ±(i+1) when the
  /// component I_S → I_{S'} is ±θ_i, 0 otherwise.
  std::vector<std::vector<int>> sign_pattern(int k) const {
    const auto& src = subsets.at(static_cast<std::size_t>(k));
    const auto& dst = subsets.at(static_cast<std::size_t>(k - 1));
    std::vector<std::vector<int>> out(dst.size(), std::vector<int>(src.size(), 0));
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto idx = src[c].elements();
      for (std::size_t j = 0; j < idx.size(); ++j) {
        VertexSet t = src[c];
        t.erase(idx[j]);
        const auto r = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), t) - dst.begin());
        out[r][c] = (j % 2 == 0 ? 1 : -1) * (idx[j] + 1);
      }
    }
    return out;
  }
};

template <class F>
ResolutionComplex<F> build_resolution(const F& field, const Triangulation& t, Face e, const SpecialLsop<F>& lsop,
                                      int m_max) {
  if (!t.complex().contains(e)) throw NotAFace("E is not a face of Γ");
  const LocalFrame fr = LocalFrame::of(t, e);
  require_usable_lsop(lsop, fr);
  const FaceRing<F> ring(field, fr.link, t.vertex_labels().size());
  const CarrierContext ctx = CarrierContext::of(t, fr);
  ResolutionComplex<F> res;
  res.e = e;
  res.d = fr.d;
  res.b = fr.b;
  for (int k = 0; k <= fr.d; ++k) res.subsets.push_back(subsets_of_size(fr.d, k));

  for (int m = 0; m <= m_max; ++m) {
    ResolutionDegree<F> deg;
    deg.degree = m;
    for (int k = 0; k <= fr.d; ++k) {
      std::vector<ResolutionBlock> blocks;
      for (VertexSet s : res.subsets[static_cast<std::size_t>(k)]) {
        ResolutionBlock blk{s, {}};
        if (m - k >= 0) blk.monomials = ideal_slice_IS(t, fr, ring.basis(m - k), s).indices();
        blocks.push_back(std::move(blk));
      }
      deg.terms.push_back(std::move(blocks));
    }
    deg.differentials.emplace_back(field, 0, 0);
    for (int k = 1; k <= fr.d; ++k) {
      const auto& src = deg.terms[static_cast<std::size_t>(k)];
      const auto& dst = deg.terms[static_cast<std::size_t>(k - 1)];
      // offsets and slice positions of the target blocks
      std::vector<std::size_t> offset;
      std::vector<std::map<std::size_t, std::size_t>> pos(dst.size());
      std::size_t rows = 0;
      for (std::size_t r = 0; r < dst.size(); ++r) {
        offset.push_back(rows);
        for (std::size_t i = 0; i < dst[r].monomials.size(); ++i) pos[r][dst[r].monomials[i]] = i;
        rows += dst[r].monomials.size();
      }
      Matrix<F> mat(field, rows, deg.term_dim(k));
      std::size_t col = 0;
      for (const auto& blk : src) {
        const auto idx = blk.s.elements();
        for (std::size_t mono : blk.monomials) {
          for (std::size_t j = 0; j < idx.size(); ++j) {
            VertexSet target = blk.s;
            target.erase(idx[j]);
            const auto r = static_cast<std::size_t>(
                std::find_if(dst.begin(), dst.end(), [&](const ResolutionBlock& x) { return x.s == target; }) -
                dst.begin());
            auto img = ring.multiply(lsop.forms[static_cast<std::size_t>(idx[j])],
                                     {{mono, field.one()}}, m - k);
            for (auto& [i, x] : img) {
              auto it = pos[r].find(i);
              if (it == pos[r].end())
                throw InvariantViolation("θ·I_S leaves I_{S∖i} in degree " + std::to_string(m));
              mat.set(offset[r] + it->second, col, j % 2 == 0 ? x : field.neg(x));
            }
          }
          ++col;
        }
      }
      deg.differentials.push_back(std::move(mat));
    }
    const auto theta = ring.ideal_span(lsop.forms, m);
    RowEchelon<F> sum = theta;
    const auto interior = interior_indices(ring.basis(m), ctx);
    for (std::size_t i : interior) sum.insert({{i, field.one()}});
    deg.interior_dim = interior.size();
    deg.kernel_dim = interior.size() + theta.rank() - sum.rank();
    deg.ell = static_cast<std::int64_t>(sum.rank() - theta.rank());
    res.degrees.push_back(std::move(deg));
  }
  return res;
}

struct ExactnessFailure {
  int position = 0;  ///< k for T_k; -1 for L
  int degree = 0;
  std::string kind;
  std::string detail;
};

struct ExactnessReport {
  bool exact = true;
  int max_degree = 0;
  std::vector<ExactnessFailure> failures;
  std::vector<std::vector<std::size_t>> term_dims;  ///< per degree: dim T_0..T_d
  std::vector<std::vector<std::size_t>> ranks;      ///< per degree: rank d_1..d_d
  std::vector<std::int64_t> ell;                    ///< per degree
};

/// Per degree: d_{k-1} d_k = 0, dim ker d_k = rank d_{k+1}, d_d injective,
/// rank d_1 = dim I∩θR (im d_1 ⊆ θR by construction), ℓ_m = Σ (-1)^k dim T_k.
template <class F>
ExactnessReport verify_exactness(const ResolutionComplex<F>& res) {
  ExactnessReport rep;
  rep.max_degree = res.degrees.empty() ? -1 : res.degrees.back().degree;
  for (const auto& deg : res.degrees) {
    const int m = deg.degree;
    auto fail = [&](int pos, std::string kind, std::string detail) {
      rep.exact = false;
      rep.failures.push_back({pos, m, std::move(kind), std::move(detail)});
    };
    std::vector<std::size_t> dims;
    for (int k = 0; k <= res.d; ++k) dims.push_back(deg.term_dim(k));
    rep.term_dims.push_back(dims);
    rep.ell.push_back(deg.ell);

    std::vector<std::size_t> ranks(static_cast<std::size_t>(res.d + 2), 0);  // ranks[k] = rank d_k
    for (int k = 1; k <= res.d; ++k) ranks[static_cast<std::size_t>(k)] = rank(deg.differentials[static_cast<std::size_t>(k)]);
    rep.ranks.emplace_back(ranks.begin() + 1, ranks.begin() + 1 + res.d);
    for (int k = 2; k <= res.d; ++k) {
      const auto& a = deg.differentials[static_cast<std::size_t>(k - 1)];
      const auto& b = deg.differentials[static_cast<std::size_t>(k)];
      if (a.cols() == 0 || b.cols() == 0) continue;
      if (!(a * b).is_zero()) fail(k - 1, "composition", "d_" + std::to_string(k - 1) + "∘d_" + std::to_string(k) + " ≠ 0");
    }
    // position 0: kernel of I → L is I ∩ θR
    if (res.d >= 1 && ranks[1] != deg.kernel_dim)
      fail(0, "homology", "rank d_1 = " + std::to_string(ranks[1]) + " but dim I∩θR = " + std::to_string(deg.kernel_dim));
    if (res.d == 0 && deg.kernel_dim != 0) fail(0, "homology", "I∩θR ≠ 0 with no forms");
    for (int k = 1; k <= res.d; ++k) {
      const std::size_t kernel = dims[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k)];
      const std::size_t incoming = k < res.d ? ranks[static_cast<std::size_t>(k + 1)] : 0;
      if (kernel != incoming)
        fail(k, "homology", "dim ker d_" + std::to_string(k) + " = " + std::to_string(kernel) + ", rank in = " +
                                std::to_string(incoming));
    }
    std::int64_t alt = 0;
    for (int k = 0; k <= res.d; ++k)
      alt += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(dims[static_cast<std::size_t>(k)]);
    if (alt != deg.ell) fail(-1, "euler", "Σ(-1)^k dim T_k = " + std::to_string(alt) + ", ℓ = " + std::to_string(deg.ell));
  }
  return rep;
}

}  // namespace localh
