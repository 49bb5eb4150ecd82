#pragma once

#include <cstdint>
#include <string_view>

namespace localh {

/// SplitMix64 stream. split() derives an independent child stream from a
/// tag, so named sub-computations draw reproducibly regardless of the order
/// in which siblings consume randomness.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Uniform nonzero integer in [-bound, bound].
  std::int64_t nonzero(std::int64_t bound) {
    const std::int64_t k = uniform(1, 2 * bound);
    return k <= bound ? k : bound - k;
  }

  SeededRng split(std::uint64_t tag) const {
    SeededRng child(state_ ^ mix(tag + 0x632be59bd9b4e019ULL));
    child.next();
    return child;
  }
  SeededRng split(std::string_view tag) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    return split(h);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return z ^ (z >> 33);
  }

  std::uint64_t state_;
};

}  // namespace localh
