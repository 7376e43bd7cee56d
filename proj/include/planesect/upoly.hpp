#pragma once

// Dense univariate polynomial arithmetic, generic over the coefficient ring.
// Coefficient index = degree; the zero polynomial is the empty vector.
// RingOps<T> supplies the ring interface (constants may need a sample
// element, e.g. to carry a modulus).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planesect/integers.hpp"

namespace planesect {

template <class T>
struct RingOps;  // zero(sample), one(sample), is_zero(x), inv(x)

template <>
struct RingOps<Int> {
  static Int zero(const Int&) { return Int(0); }
  static Int one(const Int&) { return Int(1); }
  static bool is_zero(const Int& x) { return x == 0; }
};

template <>
struct RingOps<Rat> {
  static Rat zero(const Rat&) { return Rat(0); }
  static Rat one(const Rat&) { return Rat(1); }
  static bool is_zero(const Rat& x) { return x == 0; }
  static Rat inv(const Rat& x) {
    if (x == 0) throw std::domain_error("division by zero");
    return Rat(1) / x;
  }
};

template <class T>
using Poly = std::vector<T>;

template <class T>
void trim(Poly<T>& p) {
  while (!p.empty() && RingOps<T>::is_zero(p.back())) p.pop_back();
}

template <class T>
bool is_zero(const Poly<T>& p) {
  for (const auto& c : p)
    if (!RingOps<T>::is_zero(c)) return false;
  return true;
}

template <class T>
long deg(const Poly<T>& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (!RingOps<T>::is_zero(p[i])) return static_cast<long>(i);
  return -1;
}

template <class T>
const T& lead(const Poly<T>& p) {
  long d = deg(p);
  if (d < 0) throw std::domain_error("lead of zero polynomial");
  return p[static_cast<std::size_t>(d)];
}

template <class T>
Poly<T> padd(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> r(std::max(a.size(), b.size()));
  const T* sample = !a.empty() ? &a[0] : (!b.empty() ? &b[0] : nullptr);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = a[i] + b[i];
    else if (i < a.size())
      r[i] = a[i];
    else
      r[i] = b[i];
  }
  (void)sample;
  trim(r);
  return r;
}

template <class T>
Poly<T> pneg(Poly<T> a) {
  for (auto& c : a) c = -c;
  return a;
}

template <class T>
Poly<T> psub(const Poly<T>& a, const Poly<T>& b) {
  return padd(a, pneg(b));
}

template <class T>
Poly<T> pmul(const Poly<T>& a, const Poly<T>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<T> r(a.size() + b.size() - 1, RingOps<T>::zero(a[0]));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  trim(r);
  return r;
}

template <class T>
Poly<T> pscale(Poly<T> a, const T& c) {
  for (auto& x : a) x = x * c;
  trim(a);
  return a;
}

template <class T>
T peval(const Poly<T>& p, const T& x) {
  if (p.empty()) return RingOps<T>::zero(x);
  T acc = RingOps<T>::zero(x);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

template <class T>
Poly<T> pderiv(const Poly<T>& p) {
  Poly<T> r;
  for (std::size_t i = 1; i < p.size(); ++i) {
    T c = p[i];
    for (std::size_t k = 1; k < i; ++k) c = c + p[i];
    r.push_back(c);
  }
  trim(r);
  return r;
}

/// Division with remainder over a field (or when lead(b) is invertible).
template <class T>
std::pair<Poly<T>, Poly<T>> pdivrem(Poly<T> a, const Poly<T>& b) {
  long db = deg(b);
  if (db < 0) throw std::domain_error("division by zero polynomial");
  T linv = RingOps<T>::inv(lead(b));
  trim(a);
  Poly<T> q;
  long da = deg(a);
  if (da >= db) q.assign(static_cast<std::size_t>(da - db + 1), RingOps<T>::zero(b[0]));
  while ((da = deg(a)) >= db) {
    T c = a[static_cast<std::size_t>(da)] * linv;
    q[static_cast<std::size_t>(da - db)] = c;
    for (long i = 0; i <= db; ++i)
      a[static_cast<std::size_t>(da - db + i)] =
          a[static_cast<std::size_t>(da - db + i)] - c * b[static_cast<std::size_t>(i)];
    trim(a);
  }
  trim(q);
  return {std::move(q), std::move(a)};
}

template <class T>
Poly<T> pmod(const Poly<T>& a, const Poly<T>& b) {
  return pdivrem(a, b).second;
}

template <class T>
Poly<T> monic(Poly<T> p) {
  long d = deg(p);
  if (d < 0) return p;
  T linv = RingOps<T>::inv(lead(p));
  return pscale(std::move(p), linv);
}

/// Monic gcd over a field.
template <class T>
Poly<T> pgcd(Poly<T> a, Poly<T> b) {
  trim(a);
  trim(b);
  while (!is_zero(b)) {
    Poly<T> r = pmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

/// Extended gcd over a field: returns (g, s, t) with s*a + t*b = g, g monic.
template <class T>
std::array<Poly<T>, 3> pxgcd(Poly<T> a, Poly<T> b) {
  trim(a);
  trim(b);
  if (is_zero(a) && is_zero(b)) throw std::domain_error("xgcd(0,0)");
  const T& sample = !a.empty() ? a[0] : b[0];
  Poly<T> r0 = a, r1 = b;
  Poly<T> s0{RingOps<T>::one(sample)}, s1{};
  Poly<T> t0{}, t1{RingOps<T>::one(sample)};
  while (!is_zero(r1)) {
    auto [q, r] = pdivrem(r0, r1);
    Poly<T> s2 = psub(s0, pmul(q, s1));
    Poly<T> t2 = psub(t0, pmul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  T linv = RingOps<T>::inv(lead(r0));
  return {pscale(std::move(r0), linv), pscale(std::move(s0), linv), pscale(std::move(t0), linv)};
}

// ---- Z[x] specifics ----

inline Int poly_content(const Poly<Int>& p) {
  Int g = 0;
  for (const auto& c : p) g = gcd_int(g, c);
  return g;
}

/// Primitive part with positive leading coefficient; zero stays zero.
inline Poly<Int> primitive_part(Poly<Int> p) {
  trim(p);
  Int g = poly_content(p);
  if (g == 0) return p;
  if (lead(p) < 0) g = -g;
  for (auto& c : p) {
    Int q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    c = q;
  }
  return p;
}

inline Poly<Rat> to_rat(const Poly<Int>& p) {
  Poly<Rat> r;
  r.reserve(p.size());
  for (const auto& c : p) r.emplace_back(c);
  return r;
}

/// Clears denominators and takes the primitive part.
inline Poly<Int> to_int_primitive(const Poly<Rat>& p) {
  Int l = 1;
  for (const auto& c : p) l = lcm_int(l, c.get_den());
  Poly<Int> r;
  r.reserve(p.size());
  for (const auto& c : p) {
    Rat s = c * Rat(l);
    s.canonicalize();
    r.push_back(s.get_num());
  }
  return primitive_part(std::move(r));
}

/// gcd in Z[x]: gcd of contents times primitive gcd (computed over Q).
inline Poly<Int> pgcd_int(const Poly<Int>& a, const Poly<Int>& b) {
  if (is_zero(a)) return primitive_part(b);
  if (is_zero(b)) return primitive_part(a);
  Int cg = gcd_int(poly_content(a), poly_content(b));
  Poly<Int> g = to_int_primitive(pgcd(to_rat(a), to_rat(b)));
  Poly<Int> r = g;
  for (auto& c : r) c *= cg;
  return r;
}

/// Exact division in Z[x]; throws if the division is not exact.
inline Poly<Int> pdiv_exact_int(const Poly<Int>& a, const Poly<Int>& b) {
  auto [q, r] = pdivrem(to_rat(a), to_rat(b));
  if (!is_zero(r)) throw std::domain_error("pdiv_exact_int: not divisible");
  Poly<Int> out;
  out.reserve(q.size());
  for (auto& c : q) {
    c.canonicalize();
    if (c.get_den() != 1) throw std::domain_error("pdiv_exact_int: non-integral quotient");
    out.push_back(c.get_num());
  }
  return out;
}

inline bool pdivides_int(const Poly<Int>& b, const Poly<Int>& a) {
  if (is_zero(b)) return is_zero(a);
  auto [q, r] = pdivrem(to_rat(a), to_rat(b));
  (void)q;
  return is_zero(r);
}

/// Squarefree part over Q, returned as a primitive integer polynomial.
inline Poly<Int> squarefree_part_int(const Poly<Int>& p) {
  if (deg(p) <= 0) return primitive_part(p);
  Poly<Int> g = pgcd_int(p, pderiv(p));
  if (deg(g) == 0) return primitive_part(p);
  return primitive_part(pdiv_exact_int(primitive_part(p), g));
}

/// Yun squarefree decomposition over Q of a primitive integer polynomial:
/// p = prod_i out[i].first^(out[i].second), factors squarefree and coprime.
inline std::vector<std::pair<Poly<Int>, int>> squarefree_decompose_int(Poly<Int> p) {
  std::vector<std::pair<Poly<Int>, int>> out;
  p = primitive_part(std::move(p));
  if (deg(p) <= 0) return out;
  Poly<Int> dp = pderiv(p);
  Poly<Int> a = pgcd_int(p, dp);
  Poly<Int> b = pdiv_exact_int(p, a);
  Poly<Int> c = pdiv_exact_int(dp, a);
  Poly<Int> d = psub(c, pderiv(b));
  int i = 1;
  while (deg(b) > 0) {
    Poly<Int> t = pgcd_int(b, d);
    if (deg(t) > 0) out.emplace_back(t, i);
    b = pdiv_exact_int(b, t);
    c = pdiv_exact_int(d, t);
    d = psub(c, pderiv(b));
    ++i;
  }
  return out;
}

// ---- Resultant over Z via Bareiss fraction-free elimination of the
// Sylvester matrix. Degrees here stay small (< 30). ----

inline Int resultant_int(const Poly<Int>& a, const Poly<Int>& b) {
  long da = deg(a), db = deg(b);
  if (da < 0 || db < 0) return 0;
  if (da == 0 && db == 0) return 1;
  if (da == 0) return pow_int(a[0], static_cast<unsigned long>(db));
  if (db == 0) return pow_int(b[0], static_cast<unsigned long>(da));
  const long n = da + db;
  std::vector<std::vector<Int>> m(static_cast<std::size_t>(n),
                                  std::vector<Int>(static_cast<std::size_t>(n), Int(0)));
  for (long r = 0; r < db; ++r)
    for (long k = 0; k <= da; ++k) m[r][r + k] = a[static_cast<std::size_t>(da - k)];
  for (long r = 0; r < da; ++r)
    for (long k = 0; k <= db; ++k) m[db + r][r + k] = b[static_cast<std::size_t>(db - k)];

  Int prev = 1;
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      long piv = -1;
      for (long r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        Int q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = q;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Int r = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
  return sign > 0 ? r : Int(-r);
}

/// Lagrange interpolation over Q through (xs[i], ys[i]).
inline Poly<Rat> interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  Poly<Rat> acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly<Rat> li{Rat(1)};
    Rat denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      li = pmul(li, Poly<Rat>{-xs[j], Rat(1)});
      denom *= xs[i] - xs[j];
    }
    li = pscale(std::move(li), Rat(ys[i] / denom));
    acc = padd(acc, li);
  }
  return acc;
}

inline std::string poly_to_string(const Poly<Int>& p, const char* var = "x") {
  if (is_zero(p)) return "0";
  std::string s;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    if (!s.empty()) s += p[i] > 0 ? " + " : " - ";
    else if (p[i] < 0) s += "-";
    Int a = abs_int(p[i]);
    if (a != 1 || i == 0) s += a.get_str();
    if (i > 0) {
      if (a != 1) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace planesect
