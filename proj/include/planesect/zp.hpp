#pragma once

// Arithmetic modulo a small odd prime (fits in 63 bits), used by the
// modular stage of univariate factorization.

#include <cstdint>
#include <stdexcept>

#include "planesect/upoly.hpp"

namespace planesect {

struct Zp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;  // 0 marks an unattached constant zero

  Zp() = default;
  Zp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

  static std::uint64_t resolve(const Zp& a, const Zp& b) {
    if (a.p && b.p && a.p != b.p) throw std::logic_error("Zp modulus mismatch");
    return a.p ? a.p : b.p;
  }

  friend Zp operator+(const Zp& a, const Zp& b) {
    std::uint64_t p = resolve(a, b);
    std::uint64_t s = a.v + b.v;
    if (s >= p) s -= p;
    return Zp{s, p};
  }
  friend Zp operator-(const Zp& a, const Zp& b) {
    std::uint64_t p = resolve(a, b);
    return Zp{a.v >= b.v ? a.v - b.v : a.v + p - b.v, p};
  }
  friend Zp operator*(const Zp& a, const Zp& b) {
    std::uint64_t p = resolve(a, b);
    return Zp{static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % p), p};
  }
  Zp operator-() const { return Zp{v == 0 ? 0 : p - v, p}; }
  friend bool operator==(const Zp& a, const Zp& b) { return a.v == b.v; }
};

inline Zp zp_pow(Zp base, Int e) {
  Zp acc{1, base.p};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

inline Zp zp_inv(const Zp& a) {
  if (a.v == 0) throw std::domain_error("Zp inverse of zero");
  return zp_pow(a, Int(a.p) - 2);
}

template <>
struct RingOps<Zp> {
  static Zp zero(const Zp& s) { return Zp{0, s.p}; }
  static Zp one(const Zp& s) { return Zp{1, s.p}; }
  static bool is_zero(const Zp& x) { return x.v == 0; }
  static Zp inv(const Zp& x) { return zp_inv(x); }
};

inline Poly<Zp> to_zp(const Poly<Int>& f, std::uint64_t p) {
  Poly<Zp> r;
  r.reserve(f.size());
  for (const auto& c : f) {
    Int m = c % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    r.push_back(Zp{m.get_ui(), p});
  }
  trim(r);
  return r;
}

/// x^e mod f, e an arbitrary-precision exponent.
inline Poly<Zp> zp_xpow_mod(Int e, const Poly<Zp>& f) {
  Zp sample = f.at(0);
  Poly<Zp> acc{RingOps<Zp>::one(sample)};
  Poly<Zp> base{RingOps<Zp>::zero(sample), RingOps<Zp>::one(sample)};
  base = pmod(base, f);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = pmod(pmul(acc, base), f);
    base = pmod(pmul(base, base), f);
    e >>= 1;
  }
  return acc;
}

inline Poly<Zp> zp_pow_mod(Poly<Zp> base, Int e, const Poly<Zp>& f) {
  Zp sample = f.at(0);
  Poly<Zp> acc{RingOps<Zp>::one(sample)};
  base = pmod(base, f);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = pmod(pmul(acc, base), f);
    base = pmod(pmul(base, base), f);
    e >>= 1;
  }
  return acc;
}

}  // namespace planesect
