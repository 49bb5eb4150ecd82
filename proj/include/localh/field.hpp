#pragma once

// Exact coefficient fields. Every algorithm in the library is templated on a
// field policy object: it owns the description of the field (e.g. the prime)
// and performs element arithmetic, so elements themselves stay plain values.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace localh {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// The rationals. Elements are GMP fractions, always in lowest terms with a
/// positive denominator.
class RationalField {
public:
  using Element = Rational;

  static constexpr bool is_rational = true;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(v); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return a == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "q"; }
  std::string to_string(const Element& a) const { return a.str(); }
};

bool is_prime(std::uint64_t p);

/// Residues modulo a prime p < 2^32, stored in [0, p).
class PrimeField {
public:
  using Element = std::uint64_t;

  static constexpr bool is_rational = false;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 32) || !is_prime(p))
      throw std::invalid_argument("PrimeField: modulus must be a prime below 2^32, got " +
                                  std::to_string(p));
  }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<Element>(r);
  }

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, p_ - 2);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }

  std::uint64_t characteristic() const { return p_; }
  std::string name() const { return "fp:" + std::to_string(p_); }
  std::string to_string(Element a) const { return std::to_string(a); }

private:
  Element pow(Element base, std::uint64_t e) const {
    Element r = 1;
    base %= p_;
    while (e != 0) {
      if (e & 1U) r = mul(r, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return r;
  }

  std::uint64_t p_;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (p == q) return true;
    if (p % q == 0) return false;
  }
  for (std::uint64_t q = 17; q * q <= p; q += 2)
    if (p % q == 0) return false;
  return true;
}

/// Largest prime below 2^31; the default modulus for prime-field runs.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

}  // namespace localh
