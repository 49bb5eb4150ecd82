#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "localh/complex.hpp"
#include "localh/field.hpp"
#include "localh/linalg.hpp"

namespace localh {

/// Reduced Betti numbers including degree -1: entry i is dim H̃_{i-1}.
/// The complex {∅} has H̃_{-1} = k; every nonempty complex has H̃_{-1} = 0.
struct ReducedHomology {
  std::vector<std::size_t> shifted;

  std::size_t at(int degree) const {
    const auto i = static_cast<std::size_t>(degree + 1);
    return (degree < -1 || i >= shifted.size()) ? 0 : shifted[i];
  }
  bool acyclic() const {
    for (auto b : shifted)
      if (b != 0) return false;
    return true;
  }
  /// Homology of a sphere of the given dimension (dimension -1 is {∅}).
  bool is_sphere(int dim) const {
    if (dim < -1 || dim + 1 >= static_cast<int>(shifted.size())) return false;
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      const std::size_t want = (static_cast<int>(i) - 1 == dim) ? 1 : 0;
      if (shifted[i] != want) return false;
    }
    return true;
  }
};

namespace detail {

template <class F>
ReducedHomology reduced_homology_over(const SimplicialComplex& c, const F& field) {
  const int top = c.dim();
  // chain groups C_{-1} .. C_top, indexed by face size 0 .. top+1
  std::vector<std::vector<Face>> by_size(static_cast<std::size_t>(top + 2));
  for (Face f : c.faces()) by_size[static_cast<std::size_t>(f.size())].push_back(f);
  std::vector<std::unordered_map<Face, std::size_t>> index(by_size.size());
  for (std::size_t k = 0; k < by_size.size(); ++k)
    for (std::size_t i = 0; i < by_size[k].size(); ++i) index[k][by_size[k][i]] = i;

  // rank of the boundary from size-k chains to size-(k-1) chains
  std::vector<std::size_t> boundary_rank(by_size.size() + 1, 0);
  for (std::size_t k = 1; k < by_size.size(); ++k) {
    RowEchelon<F> ech(field, by_size[k - 1].size());
    for (Face f : by_size[k]) {
      SparseVec<typename F::Element> col;
      int sign_pos = 0;
      for (int v : f.elements()) {
        const auto j = index[k - 1].at(f - Face::singleton(v));
        col.emplace_back(j, (sign_pos % 2 == 0) ? field.one() : field.neg(field.one()));
        ++sign_pos;
      }
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.insert(col);
    }
    boundary_rank[k] = ech.rank();
  }
  ReducedHomology h;
  h.shifted.resize(by_size.size());
  for (std::size_t k = 0; k < by_size.size(); ++k)
    h.shifted[k] = by_size[k].size() - boundary_rank[k] - boundary_rank[k + 1];
  return h;
}

}  // namespace detail

/// Reduced homology over Q (characteristic 0) or F_p.
inline ReducedHomology reduced_homology(const SimplicialComplex& c, std::uint64_t characteristic = 0) {
  if (characteristic == 0) return detail::reduced_homology_over(c, RationalField{});
  return detail::reduced_homology_over(c, PrimeField{characteristic});
}

/// Reduced Betti numbers in degrees 0..dim.
inline std::vector<std::size_t> reduced_betti(const SimplicialComplex& c,
                                              std::uint64_t characteristic = 0) {
  const auto h = reduced_homology(c, characteristic);
  if (h.shifted.size() <= 1) return {};
  return {h.shifted.begin() + 1, h.shifted.end()};
}

struct FacetListHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Thread-safe get-or-insert memo of reduced homology keyed by facet list.
class HomologyCache {
public:
  explicit HomologyCache(std::uint64_t characteristic = 0) : characteristic_(characteristic) {}

  ReducedHomology get(const SimplicialComplex& c) {
    std::vector<std::uint64_t> key;
    key.reserve(c.facets().size());
    for (Face f : c.facets()) key.push_back(f.bits());
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++hits_;
        return it->second;
      }
    }
    ReducedHomology h = reduced_homology(c, characteristic_);
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.try_emplace(key, std::move(h)).first->second;
  }

  std::size_t hits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return hits_;
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.size();
  }
  std::uint64_t characteristic() const { return characteristic_; }

private:
  std::uint64_t characteristic_;
  mutable std::mutex mu_;
  std::unordered_map<std::vector<std::uint64_t>, ReducedHomology, FacetListHash> memo_;
  std::size_t hits_ = 0;
};

}  // namespace localh
