#pragma once

// Exact arithmetic in number fields Q[a]/(mod) with mod monic irreducible
// over Q, plus univariate polynomial algebra over such fields: gcd,
// factorization (Trager norms), and primitive-element field extensions.
// The rationals are the degree-1 field with mod = x (generator 0).

#include <stdexcept>
#include <string>
#include <vector>

#include "planesect/factor_univariate.hpp"
#include "planesect/upoly.hpp"

namespace planesect {

struct NField {
  Poly<Rat> mod;  // monic, irreducible over Q, degree >= 1
};

using FElem = Poly<Rat>;  // reduced representative, deg < deg(mod)

inline NField rational_field() { return NField{Poly<Rat>{Rat(0), Rat(1)}}; }

inline long field_degree(const NField& F) { return deg(F.mod); }

inline FElem f_red(const NField& F, Poly<Rat> a) { return pmod(std::move(a), F.mod); }

inline FElem f_const(const Rat& c) { return c == 0 ? FElem{} : FElem{c}; }

inline FElem f_gen(const NField& F) { return f_red(F, Poly<Rat>{Rat(0), Rat(1)}); }

inline bool f_is_zero(const FElem& a) { return is_zero(a); }

inline FElem f_add(const FElem& a, const FElem& b) { return padd(a, b); }
inline FElem f_sub(const FElem& a, const FElem& b) { return psub(a, b); }
inline FElem f_neg(FElem a) { return pneg(std::move(a)); }

inline FElem f_mul(const NField& F, const FElem& a, const FElem& b) {
  return f_red(F, pmul(a, b));
}

inline FElem f_inv(const NField& F, const FElem& a) {
  if (f_is_zero(a)) throw std::domain_error("field inverse of zero");
  auto [g, s, t] = pxgcd(a, F.mod);
  (void)t;
  if (deg(g) != 0) throw std::logic_error("modulus not irreducible: inverse failed");
  return f_red(F, s);
}

/// Evaluate a rational-coefficient polynomial at a field element.
inline FElem f_eval_qpoly(const NField& F, const Poly<Rat>& p, const FElem& x) {
  FElem acc;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = f_mul(F, acc, x);
    if (p[i] != 0) acc = f_add(acc, f_const(p[i]));
  }
  return acc;
}

inline std::string f_to_string(const FElem& a, const char* var = "a") {
  if (is_zero(a)) return "0";
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += a[i] > 0 ? " + " : " - ";
    else if (a[i] < 0) s += "-";
    Rat c = a[i] < 0 ? Rat(-a[i]) : a[i];
    if (c != 1 || i == 0) s += c.get_str();
    if (i > 0) {
      if (c != 1) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

// ---- univariate polynomials over a number field ----

using KPoly = std::vector<FElem>;

inline void kp_trim(KPoly& f) {
  while (!f.empty() && f_is_zero(f.back())) f.pop_back();
}

inline long kp_deg(const KPoly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (!f_is_zero(f[i])) return static_cast<long>(i);
  return -1;
}

inline bool kp_is_zero(const KPoly& f) { return kp_deg(f) < 0; }

inline KPoly kp_from_qpoly(const Poly<Rat>& p) {
  KPoly f(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) f[i] = f_const(p[i]);
  kp_trim(f);
  return f;
}

inline KPoly kp_add(const KPoly& a, const KPoly& b) {
  KPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f_add(r[i], b[i]);
  kp_trim(r);
  return r;
}

inline KPoly kp_sub(const KPoly& a, const KPoly& b) {
  KPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f_sub(r[i], b[i]);
  kp_trim(r);
  return r;
}

inline KPoly kp_mul(const NField& F, const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f_is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!f_is_zero(b[j])) r[i + j] = f_add(r[i + j], f_mul(F, a[i], b[j]));
  }
  kp_trim(r);
  return r;
}

inline KPoly kp_scale(const NField& F, KPoly a, const FElem& c) {
  for (auto& x : a) x = f_mul(F, x, c);
  kp_trim(a);
  return a;
}

inline KPoly kp_monic(const NField& F, KPoly f) {
  long d = kp_deg(f);
  if (d < 0) return f;
  return kp_scale(F, std::move(f), f_inv(F, f[static_cast<std::size_t>(d)]));
}

inline std::pair<KPoly, KPoly> kp_divrem(const NField& F, KPoly a, const KPoly& b) {
  long db = kp_deg(b);
  if (db < 0) throw std::domain_error("division by zero polynomial");
  FElem linv = f_inv(F, b[static_cast<std::size_t>(db)]);
  kp_trim(a);
  KPoly q;
  long da = kp_deg(a);
  if (da >= db) q.resize(static_cast<std::size_t>(da - db + 1));
  while ((da = kp_deg(a)) >= db) {
    FElem c = f_mul(F, a[static_cast<std::size_t>(da)], linv);
    q[static_cast<std::size_t>(da - db)] = c;
    for (long i = 0; i <= db; ++i)
      a[static_cast<std::size_t>(da - db + i)] = f_sub(
          a[static_cast<std::size_t>(da - db + i)], f_mul(F, c, b[static_cast<std::size_t>(i)]));
    kp_trim(a);
  }
  kp_trim(q);
  return {std::move(q), std::move(a)};
}

inline KPoly kp_mod(const NField& F, KPoly a, const KPoly& b) {
  return kp_divrem(F, std::move(a), b).second;
}

inline KPoly kp_gcd(const NField& F, KPoly a, KPoly b) {
  kp_trim(a);
  kp_trim(b);
  while (!kp_is_zero(b)) {
    KPoly r = kp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return kp_monic(F, std::move(a));
}

inline KPoly kp_deriv(const NField& F, const KPoly& f) {
  KPoly r;
  for (std::size_t i = 1; i < f.size(); ++i) {
    FElem c = f_mul(F, f[i], f_const(Rat(static_cast<long>(i))));
    r.push_back(c);
  }
  kp_trim(r);
  return r;
}

inline FElem kp_eval(const NField& F, const KPoly& f, const FElem& x) {
  FElem acc;
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = f_mul(F, acc, x);
    acc = f_add(acc, f[i]);
  }
  return f_red(F, acc);
}

/// Coefficient-wise image of a polynomial over F in a field G containing an
/// image of F's generator.
inline KPoly kp_embed(const NField& G, const KPoly& f, const FElem& alpha_img) {
  KPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f_eval_qpoly(G, f[i], alpha_img);
  kp_trim(r);
  return r;
}

// ---- norms and factorization ----

/// Exact determinant over Q (Gaussian elimination, destructive).
inline Rat det_q(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    Rat inv = Rat(1) / m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat fac = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= fac * m[k][j];
    }
  }
  return det;
}

/// Field norm N_{F/Q}(v): determinant of multiplication by v on the power
/// basis.
inline Rat f_norm(const NField& F, const FElem& v) {
  const std::size_t n = static_cast<std::size_t>(field_degree(F));
  if (f_is_zero(v)) return Rat(0);
  if (n == 1) return v[0];
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  FElem col = v;
  FElem gen = f_gen(F);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
    if (j + 1 < n) col = f_mul(F, col, gen);
  }
  return det_q(std::move(m));
}

/// Res_alpha(mod(alpha), f(x - s*alpha)) computed by evaluation and Lagrange
/// interpolation; monic of degree [F:Q] * deg f when f is monic.
inline Poly<Rat> norm_poly(const NField& F, const KPoly& f, long s) {
  long n = field_degree(F);
  long d = kp_deg(f);
  if (d < 0) return {};
  long D = n * d;
  std::vector<Rat> xs, ys;
  FElem shift = kp_deg(f) >= 0 ? f_red(F, pscale(f_gen(F), Rat(-s))) : FElem{};
  for (long c = 0; c <= D; ++c) {
    FElem at = f_add(f_const(Rat(c)), shift);  // c - s*alpha
    xs.emplace_back(c);
    ys.push_back(f_norm(F, kp_eval(F, f, at)));
  }
  Poly<Rat> N = interpolate(xs, ys);
  trim(N);
  return N;
}

/// Monic irreducible factors of a monic squarefree f over F (Trager).
inline std::vector<KPoly> k_factor_squarefree(const NField& F, const KPoly& f) {
  long d = kp_deg(f);
  if (d <= 0) return {};
  if (d == 1) return {f};
  if (field_degree(F) == 1) {
    Poly<Rat> q(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) q[i] = f.empty() || f[i].empty() ? Rat(0) : f[i][0];
    trim(q);
    std::vector<KPoly> out;
    for (const auto& [p, m] : factor_int(to_int_primitive(q))) {
      (void)m;
      out.push_back(kp_from_qpoly(monic(to_rat(p))));
    }
    return out;
  }
  long s = 0;
  Poly<Rat> N;
  for (long trial = 0;; ++trial) {
    s = (trial % 2 == 0) ? trial / 2 : -(trial / 2 + 1);
    N = norm_poly(F, f, s);
    if (deg(pgcd(N, pderiv(N))) == 0) break;
    if (trial > 100) throw std::logic_error("k_factor: no squarefree norm found");
  }
  auto nfacs = factor_int(to_int_primitive(N));
  if (nfacs.size() <= 1) return {f};
  std::vector<KPoly> out;
  long total = 0;
  FElem salpha = f_red(F, pscale(f_gen(F), Rat(s)));
  for (const auto& [Ni, m] : nfacs) {
    (void)m;
    // w(x) = Ni(x + s*alpha) over F, then gcd with f
    KPoly w;
    KPoly lin{salpha, f_const(Rat(1))};  // x + s*alpha
    for (std::size_t i = Ni.size(); i-- > 0;) {
      w = kp_mul(F, w, lin);
      if (Ni[i] != 0) w = kp_add(w, KPoly{f_const(Rat(Ni[i]))});
    }
    KPoly g = kp_gcd(F, f, w);
    if (kp_deg(g) >= 1) {
      total += kp_deg(g);
      out.push_back(std::move(g));
    }
  }
  if (total != d) throw std::logic_error("k_factor: factor degrees inconsistent");
  return out;
}

/// Full monic factorization over F (squarefree first, multiplicities by
/// repeated division).
inline std::vector<std::pair<KPoly, int>> k_factor(const NField& F, KPoly f) {
  std::vector<std::pair<KPoly, int>> out;
  f = kp_monic(F, std::move(f));
  if (kp_deg(f) <= 0) return out;
  KPoly sqf = kp_divrem(F, f, kp_gcd(F, f, kp_deriv(F, f))).first;
  for (auto& irr : k_factor_squarefree(F, kp_monic(F, std::move(sqf)))) {
    int mult = 0;
    KPoly w = f;
    while (true) {
      auto [q, r] = kp_divrem(F, w, irr);
      if (!kp_is_zero(r)) break;
      ++mult;
      w = std::move(q);
    }
    out.emplace_back(std::move(irr), mult);
  }
  return out;
}

// ---- primitive-element extension ----

struct FieldExtension {
  NField G;         // Q[gamma]/(mod)
  FElem alpha_img;  // image of F's generator in G
  FElem beta_img;   // image of the new root in G
};

/// Extend F by a root of nu (monic irreducible over F), flattened to a single
/// absolute extension via gamma = beta + s*alpha.
inline FieldExtension extend_field(const NField& F, const KPoly& nu) {
  long k = kp_deg(nu);
  if (k < 1) throw std::invalid_argument("extend_field: constant polynomial");
  long s = 0;
  Poly<Rat> N;
  for (long trial = 0;; ++trial) {
    s = (trial % 2 == 0) ? trial / 2 : -(trial / 2 + 1);
    N = norm_poly(F, nu, s);
    if (deg(pgcd(N, pderiv(N))) == 0) break;
    if (trial > 100) throw std::logic_error("extend_field: no squarefree norm found");
  }
  FieldExtension ext;
  ext.G.mod = monic(N);
  const NField& G = ext.G;
  // alpha_img: unique common root y of mod_F(y) and nu~(gamma - s*y, y), where
  // nu~ re-reads nu's coefficients as polynomials in y
  KPoly A = kp_from_qpoly(F.mod);
  KPoly B;
  KPoly lin{f_gen(G), f_const(Rat(-s))};  // gamma - s*y
  for (std::size_t i = nu.size(); i-- > 0;) {
    B = kp_mul(G, B, lin);
    if (!nu[i].empty()) B = kp_add(B, kp_from_qpoly(nu[i]));
  }
  KPoly d = kp_gcd(G, A, B);
  if (kp_deg(d) != 1) throw std::logic_error("extend_field: generator gcd not linear");
  ext.alpha_img = f_neg(d[0]);
  ext.beta_img = f_sub(f_gen(G), f_red(G, pscale(ext.alpha_img, Rat(s))));
  return ext;
}

}  // namespace planesect
