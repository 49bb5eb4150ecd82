#pragma once

// Graded pieces of a face ring k[Δ]. A degree-m element is a sparse vector
// over the monomial basis of k[Δ]_m (monomials whose support is a face).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "localh/complex.hpp"
#include "localh/linalg.hpp"

namespace localh {

/// Exponent vector over the ambient vertex ids.
struct Monomial {
  std::vector<std::uint8_t> exp;

  int degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  Face support() const {
    Face f;
    for (std::size_t i = 0; i < exp.size(); ++i)
      if (exp[i] != 0) f.insert(static_cast<int>(i));
    return f;
  }
  Monomial times_var(int v) const {
    Monomial m = *this;
    ++m.exp.at(static_cast<std::size_t>(v));
    return m;
  }
  static Monomial of_face(Face f, std::size_t nvars) {
    Monomial m{std::vector<std::uint8_t>(nvars, 0)};
    for (int v : f.elements()) m.exp.at(static_cast<std::size_t>(v)) = 1;
    return m;
  }
  bool operator==(const Monomial&) const = default;
  /// Basis order: lexicographically larger exponent vectors first.
  bool operator<(const Monomial& o) const { return exp > o.exp; }
};

/// All degree-m monomials of k[Δ], sorted by Monomial::operator<.
struct MonomialBasis {
  int degree = 0;
  std::vector<Monomial> monomials;
  std::map<std::vector<std::uint8_t>, std::size_t> index;

  std::size_t size() const { return monomials.size(); }
  std::optional<std::size_t> find(const Monomial& m) const {
    auto it = index.find(m.exp);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline MonomialBasis graded_basis(const SimplicialComplex& delta, int m, std::size_t nvars) {
  MonomialBasis b;
  b.degree = m;
  if (m < 0) return b;
  if (m == 0) {
    b.monomials.push_back({std::vector<std::uint8_t>(nvars, 0)});
  } else {
    for (Face f : delta.faces()) {
      if (f.empty() || f.size() > m) continue;
      const auto verts = f.elements();
      // distribute the m - |F| extra exponents over the support
      std::vector<int> extra(verts.size(), 0);
      const int spare = m - f.size();
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == verts.size()) {
          extra[i] = left;
          Monomial mono{std::vector<std::uint8_t>(nvars, 0)};
          for (std::size_t k = 0; k < verts.size(); ++k)
            mono.exp[static_cast<std::size_t>(verts[k])] = static_cast<std::uint8_t>(1 + extra[k]);
          b.monomials.push_back(std::move(mono));
          return;
        }
        for (int x = 0; x <= left; ++x) {
          extra[i] = x;
          rec(i + 1, left - x);
        }
      };
      rec(0, spare);
    }
  }
  std::sort(b.monomials.begin(), b.monomials.end());
  for (std::size_t i = 0; i < b.monomials.size(); ++i) b.index.emplace(b.monomials[i].exp, i);
  return b;
}

/// A degree-one element sum_w c_w x_w, stored sparsely by vertex id.
template <class F>
struct LinearForm {
  SparseVec<typename F::Element> coeffs;

  Face support() const {
    Face s;
    for (const auto& [v, c] : coeffs) s.insert(static_cast<int>(v));
    return s;
  }
  typename F::Element coefficient(const F& field, int v) const {
    for (const auto& [w, c] : coeffs)
      if (static_cast<int>(w) == v) return c;
    return field.zero();
  }
  /// θ|_Δ: drop the variables outside the given vertex set.
  LinearForm restricted_to(VertexSet keep) const {
    LinearForm out;
    for (const auto& e : coeffs)
      if (keep.contains(static_cast<int>(e.first))) out.coeffs.push_back(e);
    return out;
  }
};

/// k[Δ] with memoized graded bases.
template <class F>
class FaceRing {
public:
  using Element = typename F::Element;
  using Vec = SparseVec<Element>;

  FaceRing(F field, SimplicialComplex delta, std::size_t nvars)
      : field_(std::move(field)), delta_(std::move(delta)), nvars_(nvars),
        cache_(std::make_shared<Cache>()) {}

  const F& field() const { return field_; }
  const SimplicialComplex& complex() const { return delta_; }
  std::size_t nvars() const { return nvars_; }

  const MonomialBasis& basis(int m) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->bases.find(m);
    if (it == cache_->bases.end())
      it = cache_->bases.emplace(m, std::make_unique<MonomialBasis>(graded_basis(delta_, m, nvars_))).first;
    return *it->second;
  }

  std::size_t dim(int m) const { return basis(m).size(); }

  /// x^α as a vector; zero when the support is a non-face.
  Vec monomial(const Monomial& mono) const {
    const auto& b = basis(mono.degree());
    if (auto i = b.find(mono)) return {{*i, field_.one()}};
    return {};
  }

  /// θ · p for p of degree m; products with non-face support vanish.
  Vec multiply(const LinearForm<F>& theta, const Vec& p, int m) const {
    const auto& src = basis(m);
    const auto& dst = basis(m + 1);
    std::map<std::size_t, Element> acc;
    for (const auto& [i, a] : p) {
      const Monomial& mono = src.monomials.at(i);
      for (const auto& [v, c] : theta.coeffs) {
        auto j = dst.find(mono.times_var(static_cast<int>(v)));
        if (!j) continue;
        auto [it, fresh] = acc.try_emplace(*j, field_.mul(a, c));
        if (!fresh) it->second = field_.add(it->second, field_.mul(a, c));
      }
    }
    Vec out;
    for (auto& [j, x] : acc)
      if (!field_.is_zero(x)) out.emplace_back(j, std::move(x));
    return out;
  }

  /// Matrix of multiplication by θ from degree m to degree m+1
  /// (rows index basis(m+1), columns index basis(m)).
  Matrix<F> mult_map(const LinearForm<F>& theta, int m) const {
    const auto& src = basis(m);
    Matrix<F> out(field_, dim(m + 1), src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
      for (const auto& [j, x] : multiply(theta, {{i, field_.one()}}, m)) out.set(j, i, x);
    return out;
  }

  /// Span of θ_1·R_{m-1} + ... + θ_d·R_{m-1}, i.e. (θ)_m.
  RowEchelon<F> ideal_span(const std::vector<LinearForm<F>>& forms, int m) const {
    RowEchelon<F> ech(field_, dim(m));
    if (m == 0) return ech;
    const auto& prev = basis(m - 1);
    for (const auto& theta : forms)
      for (std::size_t i = 0; i < prev.size(); ++i) ech.insert(multiply(theta, {{i, field_.one()}}, m - 1));
    return ech;
  }

private:
  struct Cache {
    std::mutex mu;
    std::map<int, std::unique_ptr<MonomialBasis>> bases;
  };

  F field_;
  SimplicialComplex delta_;
  std::size_t nvars_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace localh
