#pragma once

// Geometric genus of an irreducible plane curve of degree <= 5:
// g = (e-1)(e-2)/2 - sum m_p(m_p-1)/2 over all singular points including
// infinitely near ones. Singular points are located chart by chart via
// resultant elimination; conjugate orbits live in number fields and each
// orbit contributes [K:Q] times its representative's defect. Multiplicity
// sequences come from iterated local blow-ups (two charts per blow-up).

#include <string>
#include <utility>
#include <vector>

#include "planesect/algebraic.hpp"
#include "planesect/factor_ternary.hpp"

namespace planesect {

struct NotIrreducibleError : std::invalid_argument {
  NotIrreducibleError() : std::invalid_argument("form is not irreducible over Q") {}
};

struct SingularBranch {
  std::string locus;        // chart + point (or conjugacy class) descriptor
  std::vector<int> mults;   // multiplicity sequence, depth-first, trailing 1
  long orbit_size;          // [K:Q] of the field of definition
};

struct GenusResult {
  bool resolved;                        // false: blow-up depth cap exceeded
  long genus;                           // valid when resolved
  std::vector<SingularBranch> summary;
};

namespace detail_genus {

using QBiv = std::vector<std::vector<Rat>>;  // [i][j] = coeff of x^i y^j
using KBiv = std::vector<std::vector<FElem>>;

inline long qb_deg_x(const QBiv& f) {
  long d = -1;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (const auto& c : f[i])
      if (c != 0) {
        d = std::max(d, static_cast<long>(i));
        break;
      }
  return d;
}

inline long qb_deg_y(const QBiv& f) {
  long d = -1;
  for (const auto& row : f)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) d = std::max(d, static_cast<long>(j));
  return d;
}

inline void qb_set(QBiv& f, std::size_t i, std::size_t j, const Rat& c) {
  if (f.size() <= i) f.resize(i + 1);
  if (f[i].size() <= j) f[i].resize(j + 1, Rat(0));
  f[i][j] += c;
}

/// Dehomogenized chart of a ternary form: chart 0 sets r=1 (x=s, y=t),
/// chart 1 sets t=1 (x=s, y=r), chart 2 sets s=1 (x=t, y=r).
inline QBiv chart_of(const MPoly<3>& g, int chart) {
  QBiv f;
  for (const auto& [e, c] : g) {
    int i, j;
    if (chart == 0) i = e[0], j = e[1];
    else if (chart == 1) i = e[0], j = e[2];
    else i = e[1], j = e[2];
    qb_set(f, static_cast<std::size_t>(i), static_cast<std::size_t>(j), Rat(c));
  }
  return f;
}

inline QBiv qb_dx(const QBiv& f) {
  QBiv r;
  for (std::size_t i = 1; i < f.size(); ++i)
    for (std::size_t j = 0; j < f[i].size(); ++j)
      if (f[i][j] != 0) qb_set(r, i - 1, j, f[i][j] * Rat(static_cast<long>(i)));
  return r;
}

inline QBiv qb_dy(const QBiv& f) {
  QBiv r;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 1; j < f[i].size(); ++j)
      if (f[i][j] != 0) qb_set(r, i, j - 1, f[i][j] * Rat(static_cast<long>(j)));
  return r;
}

inline bool qb_is_zero(const QBiv& f) { return qb_deg_y(f) < 0; }

/// f(x0, y) over the field K.
inline KPoly qb_eval_x(const NField& K, const QBiv& f, const FElem& x0) {
  long dy = qb_deg_y(f);
  KPoly out(static_cast<std::size_t>(dy + 1));
  for (long j = 0; j <= dy; ++j) {
    FElem acc;
    for (std::size_t i = f.size(); i-- > 0;) {
      acc = f_mul(K, acc, x0);
      if (j < static_cast<long>(f[i].size()) && f[i][static_cast<std::size_t>(j)] != 0)
        acc = f_add(acc, f_const(f[i][static_cast<std::size_t>(j)]));
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  kp_trim(out);
  return out;
}

/// f(x, 0) over Q.
inline Poly<Rat> qb_at_y0(const QBiv& f) {
  Poly<Rat> p(f.size(), Rat(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].empty()) p[i] = f[i][0];
  trim(p);
  return p;
}

/// Res_y(a, b) as a polynomial in x, by Sylvester determinants at sample
/// points and Lagrange interpolation (formal y-degrees fixed).
inline Poly<Rat> res_y(const QBiv& a, const QBiv& b) {
  long da = qb_deg_y(a), db = qb_deg_y(b);
  if (da < 0 || db < 0) return {};
  if (da == 0 && db == 0) return Poly<Rat>{Rat(1)};
  long D = db * std::max(qb_deg_x(a), 0L) + da * std::max(qb_deg_x(b), 0L);
  auto coeffs_at = [](const QBiv& f, long dy, const Rat& x0) {
    std::vector<Rat> v(static_cast<std::size_t>(dy + 1), Rat(0));
    for (long j = 0; j <= dy; ++j) {
      Rat acc(0);
      for (std::size_t i = f.size(); i-- > 0;) {
        acc *= x0;
        if (j < static_cast<long>(f[i].size())) acc += f[i][static_cast<std::size_t>(j)];
      }
      v[static_cast<std::size_t>(j)] = acc;
    }
    return v;
  };
  std::vector<Rat> xs, ys;
  const long n = da + db;
  for (long c = 0; c <= D; ++c) {
    Rat x0(c);
    auto av = coeffs_at(a, da, x0);
    auto bv = coeffs_at(b, db, x0);
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n),
                                    std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    for (long r = 0; r < db; ++r)
      for (long k = 0; k <= da; ++k) m[r][r + k] = av[static_cast<std::size_t>(da - k)];
    for (long r = 0; r < da; ++r)
      for (long k = 0; k <= db; ++k) m[db + r][r + k] = bv[static_cast<std::size_t>(db - k)];
    xs.push_back(x0);
    ys.push_back(det_q(std::move(m)));
  }
  Poly<Rat> out = interpolate(xs, ys);
  trim(out);
  return out;
}

// ---- bivariate over a number field, for blow-ups ----

inline void kb_set(KBiv& f, std::size_t i, std::size_t j, const FElem& c) {
  if (f.size() <= i) f.resize(i + 1);
  if (f[i].size() <= j) f[i].resize(j + 1);
  f[i][j] = f_add(f[i][j], c);
}

inline KBiv kb_from_q(const QBiv& f) {
  KBiv r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i].resize(f[i].size());
    for (std::size_t j = 0; j < f[i].size(); ++j) r[i][j] = f_const(f[i][j]);
  }
  return r;
}

inline KBiv kb_embed(const NField& G, const KBiv& f, const FElem& alpha_img) {
  KBiv r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i].resize(f[i].size());
    for (std::size_t j = 0; j < f[i].size(); ++j) r[i][j] = f_eval_qpoly(G, f[i][j], alpha_img);
  }
  return r;
}

/// g(x + x0, y)
inline KBiv kb_shift_x(const NField& F, const KBiv& g, const FElem& x0) {
  KBiv acc;
  for (std::size_t i = g.size(); i-- > 0;) {
    // acc = acc * (x + x0) + row_i
    KBiv next;
    for (std::size_t a = 0; a < acc.size(); ++a)
      for (std::size_t j = 0; j < acc[a].size(); ++j) {
        if (f_is_zero(acc[a][j])) continue;
        kb_set(next, a + 1, j, acc[a][j]);
        kb_set(next, a, j, f_mul(F, acc[a][j], x0));
      }
    for (std::size_t j = 0; j < g[i].size(); ++j)
      if (!f_is_zero(g[i][j])) kb_set(next, 0, j, g[i][j]);
    acc = std::move(next);
  }
  return acc;
}

/// g(x, y + y0)
inline KBiv kb_shift_y(const NField& F, const KBiv& g, const FElem& y0) {
  std::size_t cols = 0;
  for (const auto& row : g) cols = std::max(cols, row.size());
  KBiv acc;
  for (std::size_t j = cols; j-- > 0;) {
    KBiv next;
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t b = 0; b < acc[i].size(); ++b) {
        if (f_is_zero(acc[i][b])) continue;
        kb_set(next, i, b + 1, acc[i][b]);
        kb_set(next, i, b, f_mul(F, acc[i][b], y0));
      }
    for (std::size_t i = 0; i < g.size(); ++i)
      if (j < g[i].size() && !f_is_zero(g[i][j])) kb_set(next, i, 0, g[i][j]);
    acc = std::move(next);
  }
  return acc;
}

inline int kb_mult_origin(const KBiv& g) {
  int m = -1;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j)
      if (!f_is_zero(g[i][j])) {
        int t = static_cast<int>(i + j);
        if (m < 0 || t < m) m = t;
      }
  return m;  // -1 for the zero polynomial
}

/// Strict transform under x = x, y = x*y': divide by x^m.
inline KBiv kb_blow1(const KBiv& g, int m) {
  KBiv r;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j)
      if (!f_is_zero(g[i][j]))
        kb_set(r, i + j - static_cast<std::size_t>(m), j, g[i][j]);
  return r;
}

/// Strict transform under x = x'*y, y = y: divide by y^m.
inline KBiv kb_blow2(const KBiv& g, int m) {
  KBiv r;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j)
      if (!f_is_zero(g[i][j]))
        kb_set(r, i, i + j - static_cast<std::size_t>(m), g[i][j]);
  return r;
}

struct DepthExceeded {};

/// Accumulate the defect of the point at the origin of g (curve over F) and
/// all its infinitely near points. Appends multiplicities >= 2 to seq.
inline void resolve(const NField& F, const KBiv& g, int depth, int cap, std::vector<int>& seq,
                    long& defect) {
  int m = kb_mult_origin(g);
  if (m <= 1) return;
  if (depth >= cap) throw DepthExceeded{};
  defect += field_degree(F) * static_cast<long>(m) * (m - 1) / 2;
  seq.push_back(m);
  // tangent cone tau(y) = sum_{i+j=m} c_{ij} y^j
  KPoly tau(static_cast<std::size_t>(m + 1));
  for (int j = 0; j <= m; ++j) {
    std::size_t i = static_cast<std::size_t>(m - j);
    if (i < g.size() && static_cast<std::size_t>(j) < g[i].size())
      tau[static_cast<std::size_t>(j)] = g[i][static_cast<std::size_t>(j)];
  }
  long dtau = kp_deg(tau);
  KBiv g1 = kb_blow1(g, m);
  if (dtau >= 1) {
    KPoly tm = kp_monic(F, tau);
    KPoly sqf = kp_divrem(F, tm, kp_gcd(F, tm, kp_deriv(F, tm))).first;
    for (const auto& nu : k_factor_squarefree(F, kp_monic(F, std::move(sqf)))) {
      if (kp_deg(nu) == 1) {
        resolve(F, kb_shift_y(F, g1, f_neg(nu[0])), depth + 1, cap, seq, defect);
      } else {
        FieldExtension ext = extend_field(F, nu);
        KBiv ge = kb_embed(ext.G, g1, ext.alpha_img);
        resolve(ext.G, kb_shift_y(ext.G, ge, ext.beta_img), depth + 1, cap, seq, defect);
      }
    }
  }
  if (dtau < m) {
    // tangent direction (0:1): second blow-up chart at its origin
    resolve(F, kb_blow2(g, m), depth + 1, cap, seq, defect);
  }
}

struct Orbit {
  NField field;
  KBiv curve;  // translated so the singular point is at the origin
  std::string locus;
};

inline std::string point_locus(const char* chart, const NField& K, const FElem& x0,
                               const FElem& y0) {
  std::string s = std::string("chart ") + chart + ": ";
  if (field_degree(K) > 1) s += "a: " + poly_to_string(to_int_primitive(K.mod)) + " = 0, ";
  s += "(x, y) = (" + f_to_string(x0) + ", " + f_to_string(y0) + ")";
  return s;
}

/// Singular orbits of the affine curve f in a full chart (all singular points
/// of f count).
inline void orbits_full_chart(const QBiv& f, const char* chart, std::vector<Orbit>& out) {
  long dy = qb_deg_y(f);
  if (dy <= 0) return;  // curve independent of y in this chart: smooth here
  QBiv fx = qb_dx(f), fy = qb_dy(f);
  Poly<Rat> r1 = res_y(f, fy);
  if (is_zero(r1)) throw std::logic_error("vanishing discriminant for irreducible curve");
  Poly<Rat> rx = r1;
  if (!qb_is_zero(fx)) {
    Poly<Rat> r2 = res_y(f, fx);
    if (is_zero(r2)) throw std::logic_error("vanishing resultant for irreducible curve");
    rx = pgcd(r1, r2);
  }
  if (deg(rx) < 1) return;
  for (const auto& [mu, mult] : factor_int(to_int_primitive(rx))) {
    (void)mult;
    NField K;
    FElem x0;
    if (deg(mu) == 1) {
      K = rational_field();
      x0 = f_const(Rat(-mu[0]) / Rat(mu[1]));
    } else {
      K.mod = monic(to_rat(mu));
      x0 = f_gen(K);
    }
    KPoly h = kp_gcd(K, qb_eval_x(K, f, x0), qb_eval_x(K, fy, x0));
    KPoly fx_at = qb_eval_x(K, fx, x0);
    if (!kp_is_zero(fx_at)) h = kp_gcd(K, h, fx_at);
    if (kp_deg(h) < 1) continue;
    KPoly sqf = kp_divrem(K, h, kp_gcd(K, h, kp_deriv(K, h))).first;
    for (const auto& nu : k_factor_squarefree(K, kp_monic(K, std::move(sqf)))) {
      if (kp_deg(nu) == 1) {
        FElem y0 = f_neg(nu[0]);
        KBiv curve = kb_shift_y(K, kb_shift_x(K, kb_from_q(f), x0), y0);
        out.push_back({K, std::move(curve), point_locus(chart, K, x0, y0)});
      } else {
        FieldExtension ext = extend_field(K, nu);
        FElem x0g = f_eval_qpoly(ext.G, x0, ext.alpha_img);
        KBiv curve = kb_shift_y(ext.G, kb_shift_x(ext.G, kb_from_q(f), x0g), ext.beta_img);
        out.push_back({ext.G, std::move(curve), point_locus(chart, ext.G, x0g, ext.beta_img)});
      }
    }
  }
}

/// Singular orbits on the restricted locus y = 0 of the chart curve f (used
/// for the line at infinity to avoid double counting).
inline void orbits_on_y0(const QBiv& f, const char* chart, std::vector<Orbit>& out) {
  Poly<Rat> p0 = qb_at_y0(f);
  Poly<Rat> p1 = qb_at_y0(qb_dx(f));
  Poly<Rat> p2 = qb_at_y0(qb_dy(f));
  Poly<Rat> g = pgcd(pgcd(p0, p1), p2);
  if (deg(g) < 1) return;
  for (const auto& [mu, mult] : factor_int(to_int_primitive(g))) {
    (void)mult;
    NField K;
    FElem x0;
    if (deg(mu) == 1) {
      K = rational_field();
      x0 = f_const(Rat(-mu[0]) / Rat(mu[1]));
    } else {
      K.mod = monic(to_rat(mu));
      x0 = f_gen(K);
    }
    KBiv curve = kb_shift_x(K, kb_from_q(f), x0);
    out.push_back({K, std::move(curve), point_locus(chart, K, x0, FElem{})});
  }
}

}  // namespace detail_genus

/// Geometric genus of an irreducible ternary form, with the singular-point
/// summary. resolved = false when the blow-up depth cap is exceeded.
inline GenusResult genus_of(const TernaryForm& C, int depth_cap = 12) {
  {
    auto facs = factor_ternary(C);
    if (facs.size() != 1 || facs[0].second != 1 || !(facs[0].first == C))
      throw NotIrreducibleError();
  }
  const long e = C.degree;
  GenusResult res{true, 0, {}};
  if (e == 1) return res;

  using namespace detail_genus;
  std::vector<Orbit> orbits;
  orbits_full_chart(chart_of(C.form, 0), "r=1", orbits);   // all affine points
  orbits_on_y0(chart_of(C.form, 1), "t=1, r=0", orbits);   // infinity, t != 0
  {
    // the point (1:0:0)
    QBiv f3 = chart_of(C.form, 2);
    bool sing = true;
    if (!f3.empty() && !f3[0].empty() && f3[0][0] != 0) sing = false;
    QBiv f3x = qb_dx(f3), f3y = qb_dy(f3);
    if (sing && !f3x.empty() && !f3x[0].empty() && f3x[0][0] != 0) sing = false;
    if (sing && !f3y.empty() && !f3y[0].empty() && f3y[0][0] != 0) sing = false;
    if (sing) {
      NField K = rational_field();
      orbits.push_back({K, kb_from_q(f3), "chart s=1: (x, y) = (0, 0)"});
    }
  }

  long defect = 0;
  for (const auto& orb : orbits) {
    std::vector<int> seq;
    try {
      resolve(orb.field, orb.curve, 0, depth_cap, seq, defect);
    } catch (const DepthExceeded&) {
      res.resolved = false;
      res.genus = -1;
      return res;
    }
    if (!seq.empty()) {
      seq.push_back(1);
      res.summary.push_back({orb.locus, std::move(seq), field_degree(orb.field)});
    }
  }
  long g = (e - 1) * (e - 2) / 2 - defect;
  res.genus = g < 0 ? 0 : g;
  return res;
}

}  // namespace planesect
