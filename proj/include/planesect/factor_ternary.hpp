#pragma once

// Factorization of ternary forms (plane-section curves) over Q, degree <= 5.
// Strategy: shear so the s^d coefficient is a nonzero constant, dehomogenize
// r = 1, take the squarefree part, factor the slice at a good t-value,
// Hensel-lift the local factors (t - b)-adically over Q, recombine by subset
// search, then restore homogeneity and the original coordinates.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planesect/bipoly.hpp"
#include "planesect/factor_univariate.hpp"
#include "planesect/multipoly.hpp"
#include "planesect/surface.hpp"

namespace planesect {

struct UnsupportedDegreeError : std::invalid_argument {
  UnsupportedDegreeError() : std::invalid_argument("ternary degree > 5 unsupported") {}
};

inline const std::array<std::string, 3> kTernaryVars = {"s", "t", "r"};

struct TernaryForm {
  MPoly<3> form;  // homogeneous, content 1, canonical sign
  int degree;

  bool operator==(const TernaryForm& o) const { return form == o.form; }
  bool operator<(const TernaryForm& o) const {
    if (degree != o.degree) return degree < o.degree;
    return form < o.form;
  }
};

/// Content-reduce and fix the sign: the lexicographically largest exponent
/// (highest s power first) gets a positive coefficient.
inline TernaryForm make_ternary(MPoly<3> f) {
  if (f.empty()) throw EmptyFormError();
  if (!mp_homogeneous(f)) throw NotHomogeneousError();
  int d = mp_degree(f);
  if (d < 1) throw std::invalid_argument("constant ternary form");
  f = mp_primitive(f);
  if (f.rbegin()->second < 0) f = mp_scale(f, Int(-1));
  return TernaryForm{std::move(f), d};
}

inline TernaryForm parse_ternary(const std::string& text) {
  return make_ternary(mp_parse<3>(text, kTernaryVars));
}

inline std::string ternary_to_string(const TernaryForm& f) {
  return mp_to_string(f.form, kTernaryVars);
}

namespace detail_fac3 {

/// G(s, t + a*s, r + b*s) as an exponent-map form.
inline MPoly<3> shear(const MPoly<3>& g, long a, long b) {
  std::array<std::array<Int, 3>, 3> m = {{{Int(1), Int(0), Int(0)},
                                          {Int(a), Int(1), Int(0)},
                                          {Int(b), Int(0), Int(1)}}};
  return mp_substitute<3>(g, m);
}

inline BPoly dehomogenize(const MPoly<3>& g) {
  BPoly f;
  for (const auto& [e, c] : g) {
    if (static_cast<std::size_t>(e[0]) >= f.size()) f.resize(static_cast<std::size_t>(e[0]) + 1);
    Poly<Rat>& row = f[static_cast<std::size_t>(e[0])];
    if (static_cast<std::size_t>(e[1]) >= row.size())
      row.resize(static_cast<std::size_t>(e[1]) + 1, Rat(0));
    row[static_cast<std::size_t>(e[1])] += Rat(c);
  }
  for (auto& row : f) trim(row);
  btrim(f);
  return f;
}

/// Homogenize a bivariate factor back to a ternary integer form.
inline MPoly<3> rehomogenize(const BPoly& f) {
  int e = bdeg_total(f);
  Int den = 1;
  for (const auto& row : f)
    for (const auto& c : row) den = lcm_int(den, c.get_den());
  MPoly<3> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t k = 0; k < f[i].size(); ++k) {
      if (f[i][k] == 0) continue;
      Rat scaled = f[i][k] * Rat(den);
      scaled.canonicalize();
      Expo<3> ex{static_cast<int>(i), static_cast<int>(k),
                 e - static_cast<int>(i) - static_cast<int>(k)};
      mp_add_term(out, ex, scaled.get_num());
    }
  return out;
}

/// Multifactor (t - b)-adic Hensel lift over Q to precision t^K. `F` must be
/// monic in s with squarefree monic slice u = F(s, 0) = prod u_monic[i].
inline std::vector<BPoly> lift_factors(const BPoly& F, const std::vector<Poly<Rat>>& u_monic,
                                       int K) {
  const std::size_t r = u_monic.size();
  std::vector<Poly<Rat>> vinv(r);
  for (std::size_t i = 0; i < r; ++i) {
    Poly<Rat> w{Rat(1)};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) w = pmod(pmul(w, u_monic[j]), u_monic[i]);
    auto [g, sc, tc] = pxgcd(w, u_monic[i]);
    (void)tc;
    if (deg(g) != 0) throw std::logic_error("lift_factors: slice factors not coprime");
    vinv[i] = sc;
  }
  std::vector<BPoly> gh(r);
  for (std::size_t i = 0; i < r; ++i) {
    gh[i].resize(u_monic[i].size());
    for (std::size_t j = 0; j < u_monic[i].size(); ++j)
      if (u_monic[i][j] != 0) gh[i][j] = Poly<Rat>{u_monic[i][j]};
  }
  for (int k = 1; k < K; ++k) {
    BPoly P = gh[0];
    for (std::size_t i = 1; i < r; ++i) P = bmul(P, gh[i], K);
    BPoly D = bsub(F, P);
    Poly<Rat> E;
    for (std::size_t i = 0; i < D.size(); ++i) {
      Rat c = static_cast<std::size_t>(k) < D[i].size() ? D[i][static_cast<std::size_t>(k)]
                                                        : Rat(0);
      if (c != 0) {
        if (E.size() <= i) E.resize(i + 1, Rat(0));
        E[i] = c;
      }
    }
    if (is_zero(E)) continue;
    for (std::size_t i = 0; i < r; ++i) {
      Poly<Rat> delta = pmod(pmul(E, vinv[i]), u_monic[i]);
      for (std::size_t j = 0; j < delta.size(); ++j) {
        if (delta[j] == 0) continue;
        if (gh[i].size() <= j) gh[i].resize(j + 1);
        if (gh[i][j].size() <= static_cast<std::size_t>(k))
          gh[i][j].resize(static_cast<std::size_t>(k) + 1, Rat(0));
        gh[i][j][static_cast<std::size_t>(k)] += delta[j];
      }
    }
  }
  return gh;
}

/// Irreducible factors (each once) of a squarefree f in Q[t][s] whose leading
/// s-coefficient is a nonzero constant. Factors are rational multiples of the
/// true primitive factors.
inline std::vector<BPoly> factor_squarefree_bivariate(const BPoly& fsf, int d) {
  // good slice: f(s, b0) squarefree
  Rat b0(0);
  for (long trial = 0;; ++trial) {
    long v = (trial % 2 == 0) ? trial / 2 : -(trial / 2 + 1);
    Poly<Rat> u = beval_t(fsf, Rat(v));
    if (deg(pgcd(u, pderiv(u))) == 0) {
      b0 = Rat(v);
      break;
    }
    if (trial > 200) throw std::logic_error("no squarefree slice found");
  }
  BPoly shifted = bshift_t(fsf, b0);
  Rat lc = shifted.back()[0];

  Poly<Rat> u = beval_t(shifted, Rat(0));
  auto ufacs = factor_int(to_int_primitive(u));
  std::vector<BPoly> irr_shifted;
  if (ufacs.size() <= 1) {
    irr_shifted.push_back(shifted);
  } else {
    std::vector<Poly<Rat>> u_monic;
    for (const auto& [p, m] : ufacs) {
      (void)m;
      u_monic.push_back(monic(to_rat(p)));
    }
    const int K = 2 * d + 2;
    BPoly F = shifted;
    for (auto& row : F)
      for (auto& c : row) c /= lc;
    auto gh = lift_factors(F, u_monic, K);

    std::vector<std::size_t> active(gh.size());
    for (std::size_t i = 0; i < gh.size(); ++i) active[i] = i;
    BPoly rem = shifted;
    std::size_t card = 1;
    while (2 * card <= active.size()) {
      Rat c_cur = rem.back()[0];
      // subsets of `active` of size `card`, lexicographic
      std::vector<std::size_t> idx(card);
      for (std::size_t i = 0; i < card; ++i) idx[i] = i;
      bool extracted = false;
      while (true) {
        BPoly cand{Poly<Rat>{c_cur}};
        for (std::size_t i : idx) cand = bmul(cand, gh[active[i]], 2 * d + 2);
        bool plausible = true;
        for (const auto& row : cand)
          if (deg(row) > d) plausible = false;
        if (plausible) {
          if (auto q = bdiv_exact(rem, cand)) {
            irr_shifted.push_back(cand);
            rem = std::move(*q);
            std::vector<std::size_t> next;
            for (std::size_t i = 0; i < active.size(); ++i)
              if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(active[i]);
            active = std::move(next);
            extracted = true;
            break;
          }
        }
        // advance combination
        std::size_t pos = card;
        while (pos-- > 0) {
          if (idx[pos] != active.size() - card + pos) {
            ++idx[pos];
            for (std::size_t j = pos + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
            break;
          }
          if (pos == 0) {
            pos = card + 1;  // exhausted marker
            break;
          }
        }
        if (pos == card + 1) break;
      }
      if (!extracted) ++card;
    }
    if (bdeg_s(rem) > 0) irr_shifted.push_back(rem);
  }
  std::vector<BPoly> out;
  out.reserve(irr_shifted.size());
  for (const auto& g : irr_shifted) out.push_back(bshift_t(g, Rat(-b0)));
  return out;
}

}  // namespace detail_fac3

/// Complete factorization over Q into irreducible ternary forms with
/// multiplicities, canonically ordered by (degree, coefficient map).
inline std::vector<std::pair<TernaryForm, int>> factor_ternary(const TernaryForm& G) {
  const int d = G.degree;
  if (d > 5) throw UnsupportedDegreeError();
  std::vector<std::pair<TernaryForm, int>> out;
  if (d == 1) {
    out.emplace_back(G, 1);
    return out;
  }

  // shear (a, b) with G(1, a, b) != 0, smallest |a| + |b| first
  long sa = 0, sb = 0;
  bool found = false;
  for (long ring = 0; !found; ++ring)
    for (long a = -ring; a <= ring && !found; ++a) {
      for (long babs : {ring - std::abs(a), std::abs(a) - ring}) {
        Int val = mp_eval(G.form, std::array<Int, 3>{Int(1), Int(a), Int(babs)});
        if (val != 0) {
          sa = a;
          sb = babs;
          found = true;
          break;
        }
        if (babs == 0) break;
      }
    }

  BPoly f = detail_fac3::dehomogenize(detail_fac3::shear(G.form, sa, sb));
  BPoly df = bderiv_s(f);
  BPoly g = bgcd(f, df);
  BPoly fsf = f;
  if (bdeg_s(g) > 0) {
    auto q = bdiv_exact(f, g);
    if (!q) throw std::logic_error("squarefree part division failed");
    fsf = std::move(*q);
  }

  auto irr = detail_fac3::factor_squarefree_bivariate(fsf, d);
  for (const auto& fi : irr) {
    int mult = 0;
    BPoly w = f;
    while (true) {
      auto q = bdiv_exact(w, fi);
      if (!q) break;
      ++mult;
      w = std::move(*q);
    }
    if (mult < 1) throw std::logic_error("factor does not divide input");
    MPoly<3> tern = detail_fac3::rehomogenize(fi);
    std::array<std::array<Int, 3>, 3> unshear = {{{Int(1), Int(0), Int(0)},
                                                  {Int(-sa), Int(1), Int(0)},
                                                  {Int(-sb), Int(0), Int(1)}}};
    out.emplace_back(make_ternary(mp_substitute<3>(tern, unshear)), mult);
  }
  std::sort(out.begin(), out.end());

  int total = 0;
  for (const auto& [c, m] : out) total += c.degree * m;
  if (total != d) throw std::logic_error("factor degrees do not sum to input degree");
  return out;
}

}  // namespace planesect
