#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace localh {

/// A finite set of small integer ids (< 64), used both for faces of a
/// complex (vertex ids) and for subsets of the ambient simplex.
class VertexSet {
public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static VertexSet of(std::initializer_list<int> ids) {
    VertexSet s;
    for (int i : ids) s.insert(i);
    return s;
  }
  static VertexSet of(const std::vector<int>& ids) {
    VertexSet s;
    for (int i : ids) s.insert(i);
    return s;
  }
  static constexpr VertexSet range(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr VertexSet singleton(int i) { return VertexSet(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int i) const { return ((bits_ >> i) & 1U) != 0; }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  void insert(int i) { bits_ |= std::uint64_t{1} << i; }
  void erase(int i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
  constexpr bool operator==(const VertexSet&) const = default;

  /// Complement inside {0, ..., n-1}.
  constexpr VertexSet complement(int n) const { return range(n) - *this; }

  /// Smallest element, -1 when empty.
  constexpr int first() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <class Fn>
  void for_each_subset(Fn&& fn) const {
    // all subsets, including empty and the set itself
    std::uint64_t s = 0;
    while (true) {
      fn(VertexSet(s));
      if (s == bits_) break;
      s = (s - bits_) & bits_;
    }
  }

private:
  std::uint64_t bits_ = 0;
};

/// Canonical total order: by size, then by sorted element tuple.
inline bool canonical_less(VertexSet a, VertexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements() < b.elements();
}

using Face = VertexSet;

}  // namespace localh

template <>
struct std::hash<localh::VertexSet> {
  std::size_t operator()(localh::VertexSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
