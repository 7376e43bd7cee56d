#pragma once

// Bivariate polynomials in Q[t][s]: a vector of univariate rational
// polynomials in t indexed by the power of s. Sized for degree <= 5 work:
// pseudo-remainder gcd, exact division by constant-lc divisors, and
// evaluation/shift plumbing for the factorization code.

#include <optional>
#include <vector>

#include "planesect/upoly.hpp"

namespace planesect {

using BPoly = std::vector<Poly<Rat>>;  // [i] = coefficient of s^i

inline void btrim(BPoly& f) {
  while (!f.empty() && is_zero(f.back())) f.pop_back();
}

inline bool bis_zero(const BPoly& f) { return f.empty(); }

inline int bdeg_s(const BPoly& f) { return static_cast<int>(f.size()) - 1; }

inline int bdeg_total(const BPoly& f) {
  int d = -1;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!is_zero(f[i])) d = std::max(d, static_cast<int>(i) + static_cast<int>(deg(f[i])));
  return d;
}

inline BPoly badd(const BPoly& a, const BPoly& b) {
  BPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = padd(r[i], b[i]);
  btrim(r);
  return r;
}

inline BPoly bsub(const BPoly& a, const BPoly& b) {
  BPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = psub(r[i], b[i]);
  btrim(r);
  return r;
}

/// Multiply; if trunc_t >= 0, drop all t powers >= trunc_t.
inline BPoly bmul(const BPoly& a, const BPoly& b, int trunc_t = -1) {
  if (a.empty() || b.empty()) return {};
  BPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Poly<Rat> p = pmul(a[i], b[j]);
      if (trunc_t >= 0 && deg(p) >= trunc_t) p.resize(static_cast<std::size_t>(trunc_t)), trim(p);
      r[i + j] = padd(r[i + j], p);
    }
  btrim(r);
  return r;
}

inline BPoly bscale(const BPoly& a, const Poly<Rat>& k) {
  BPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = pmul(a[i], k);
  btrim(r);
  return r;
}

inline BPoly bderiv_s(const BPoly& f) {
  if (f.size() <= 1) return {};
  BPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) {
    r[i - 1] = f[i];
    for (auto& c : r[i - 1]) c *= Rat(static_cast<long>(i));
  }
  btrim(r);
  return r;
}

/// f(s, b) as a univariate polynomial in s.
inline Poly<Rat> beval_t(const BPoly& f, const Rat& b) {
  Poly<Rat> r(f.size(), Rat(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!is_zero(f[i])) r[i] = peval(f[i], b);
  trim(r);
  return r;
}

/// Substitute t -> t + b (exact shift of every coefficient).
inline BPoly bshift_t(const BPoly& f, const Rat& b) {
  BPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    // Horner in (t + b)
    Poly<Rat> acc;
    for (int k = deg(f[i]); k >= 0; --k) {
      acc = pmul(acc, Poly<Rat>{b, Rat(1)});
      if (f[i][static_cast<std::size_t>(k)] != 0)
        acc = padd(acc, Poly<Rat>{f[i][static_cast<std::size_t>(k)]});
    }
    r[i] = acc;
  }
  btrim(r);
  return r;
}

/// Content of f over Q[t]: monic gcd of the s-coefficients.
inline Poly<Rat> bcontent(const BPoly& f) {
  Poly<Rat> g;
  for (const auto& c : f) g = pgcd(g, c);
  return g;  // monic or zero
}

inline BPoly bprimitive(const BPoly& f) {
  Poly<Rat> g = bcontent(f);
  if (is_zero(g) || deg(g) == 0) return f;
  BPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = pdivrem(f[i], g).first;
  btrim(r);
  return r;
}

/// Pseudo-remainder of a by b in Q[t][s] (lc(b)^(da-db+1) * a mod b).
inline BPoly bprem(BPoly a, const BPoly& b) {
  btrim(a);
  int db = bdeg_s(b);
  if (db < 0) throw std::invalid_argument("bprem by zero");
  const Poly<Rat>& lb = b.back();
  while (bdeg_s(a) >= db) {
    int da = bdeg_s(a);
    // a = lb * a - lead(a) * s^(da-db) * b
    BPoly scaled = bscale(a, lb);
    Poly<Rat> la = a.back();
    BPoly shift(static_cast<std::size_t>(da - db + 1));
    shift.back() = Poly<Rat>{Rat(1)};
    BPoly sub = bmul(bscale(b, la), shift);
    a = bsub(scaled, sub);
    if (bdeg_s(a) == da) throw std::logic_error("bprem failed to reduce degree");
  }
  return a;
}

/// gcd in Q[t][s] (primitive PRS), returned primitive with monic content
/// handling; result defined up to a rational unit.
inline BPoly bgcd(BPoly a, BPoly b) {
  btrim(a);
  btrim(b);
  if (bis_zero(a)) return bprimitive(b);
  if (bis_zero(b)) return bprimitive(a);
  Poly<Rat> cont = pgcd(bcontent(a), bcontent(b));
  a = bprimitive(a);
  b = bprimitive(b);
  if (bdeg_s(a) < bdeg_s(b)) std::swap(a, b);
  while (!bis_zero(b)) {
    BPoly r = bprimitive(bprem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (deg(cont) > 0) a = bscale(a, cont);
  return a;
}

/// Exact quotient of a by b when it exists; requires lc_s(b) constant in t.
inline std::optional<BPoly> bdiv_exact(BPoly a, const BPoly& b) {
  btrim(a);
  int db = bdeg_s(b);
  if (db < 0) throw std::invalid_argument("division by zero");
  if (deg(b.back()) != 0) return std::nullopt;  // non-constant leading coefficient
  Rat lb = b.back()[0];
  BPoly q;
  if (bdeg_s(a) >= db) q.resize(static_cast<std::size_t>(bdeg_s(a) - db + 1));
  while (bdeg_s(a) >= db) {
    int da = bdeg_s(a);
    Poly<Rat> coef = a.back();
    for (auto& c : coef) c /= lb;
    q[static_cast<std::size_t>(da - db)] = coef;
    BPoly shift(static_cast<std::size_t>(da - db + 1));
    shift.back() = coef;
    a = bsub(a, bmul(shift, b));
    if (bdeg_s(a) == da) throw std::logic_error("bdiv_exact failed to reduce degree");
  }
  if (!bis_zero(a)) return std::nullopt;
  btrim(q);
  return q;
}

}  // namespace planesect
