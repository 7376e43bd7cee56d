#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace planesect {

using Int = mpz_class;
using Rat = mpq_class;

using Vec4 = std::array<Int, 4>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int pow_int(const Int& a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

/// Floor of the real cube root.
inline Int cbrt_floor(const Int& a) {
  if (a < 0) throw std::invalid_argument("cbrt_floor: negative input");
  Int r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3);
  return r;
}

/// gcd of the absolute values of a coordinate vector; 0 for the zero vector.
template <std::size_t N>
Int content_of(const std::array<Int, N>& v) {
  Int g = 0;
  for (const auto& c : v) g = gcd_int(g, c);
  return g;
}

inline Int content_of(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& c : v) g = gcd_int(g, c);
  return g;
}

/// Divides every entry by the content and flips signs so the first nonzero
/// entry is positive. Returns false for the zero vector.
template <std::size_t N>
bool canonicalize(std::array<Int, N>& v) {
  Int g = content_of(v);
  if (g == 0) return false;
  for (auto& c : v) c /= g;
  for (const auto& c : v) {
    if (c != 0) {
      if (c < 0)
        for (auto& e : v) e = -e;
      break;
    }
  }
  return true;
}

template <std::size_t N>
Int max_norm(const std::array<Int, N>& v) {
  Int m = 0;
  for (const auto& c : v)
    if (abs_int(c) > m) m = abs_int(c);
  return m;
}

template <std::size_t N>
Int dot(const std::array<Int, N>& a, const std::array<Int, N>& b) {
  Int s = 0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

/// FNV-1a over a string; used for stable content hashes in cache headers.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// splitmix64; the pinned generator for all seeded sampling so that reports
/// are reproducible across implementations.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = ~0ull - (~0ull % n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= lim);
    return x % n;
  }
};

}  // namespace planesect
