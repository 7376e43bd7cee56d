#pragma once

// Factorization in Z[x]: squarefree split (Yun), modular factorization
// (distinct-degree + Cantor-Zassenhaus equal-degree splitting), quadratic
// Hensel lifting past the Landau-Mignotte bound, and subset recombination.
// Degrees here stay below ~30, so the subset search is cheap.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "planesect/upoly.hpp"
#include "planesect/zp.hpp"

namespace planesect {

namespace detail_fz {

inline const std::uint64_t kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,
                                        37,  41,  43,  47,  53,  59,  61,  67,  71,  73,
                                        79,  83,  89,  97,  101, 103, 107, 109, 113, 127,
                                        131, 137, 139, 149, 151, 157, 163, 167, 173, 179};

// Distinct-degree factorization of a monic squarefree f mod p:
// returns pairs (product of irreducible factors of degree d, d).
inline std::vector<std::pair<Poly<Zp>, long>> ddf(const Poly<Zp>& f) {
  std::vector<std::pair<Poly<Zp>, long>> out;
  Zp sample = f.at(0);
  Poly<Zp> fstar = f;
  Poly<Zp> h{RingOps<Zp>::zero(sample), RingOps<Zp>::one(sample)};  // x
  long d = 0;
  while (deg(fstar) > 0) {
    ++d;
    if (2 * d > deg(fstar)) {
      out.emplace_back(fstar, deg(fstar));
      break;
    }
    h = zp_pow_mod(std::move(h), Int(sample.p), fstar);
    Poly<Zp> hx = h;
    if (hx.size() < 2) hx.resize(2, RingOps<Zp>::zero(sample));
    hx[1] = hx[1] - RingOps<Zp>::one(sample);  // h - x
    trim(hx);
    Poly<Zp> g = pgcd(fstar, hx);
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      fstar = pdivrem(fstar, g).first;
      h = pmod(h, fstar);
    }
  }
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus) of monic squarefree f mod p
// whose irreducible factors all have degree d. Deterministic trial
// sequence driven by splitmix64.
inline void edf(const Poly<Zp>& f, long d, std::vector<Poly<Zp>>& out, SplitMix64& rng) {
  long n = deg(f);
  if (n == d) {
    out.push_back(monic(f));
    return;
  }
  Zp sample = f.at(0);
  Int e = (pow_int(Int(sample.p), static_cast<unsigned long>(d)) - 1) / 2;
  for (;;) {
    Poly<Zp> a;
    for (long i = 0; i < n; ++i) a.push_back(Zp{rng.below(sample.p), sample.p});
    trim(a);
    if (deg(a) < 1) continue;
    Poly<Zp> g = pgcd(f, a);
    if (deg(g) > 0 && deg(g) < n) {
      edf(g, d, out, rng);
      edf(pdivrem(f, g).first, d, out, rng);
      return;
    }
    Poly<Zp> b = zp_pow_mod(a, e, f);
    if (b.empty()) continue;
    b[0] = b[0] - RingOps<Zp>::one(sample);
    trim(b);
    g = pgcd(f, b);
    if (deg(g) > 0 && deg(g) < n) {
      edf(g, d, out, rng);
      edf(pdivrem(f, g).first, d, out, rng);
      return;
    }
  }
}

inline std::vector<Poly<Zp>> factor_mod_p(const Poly<Zp>& f) {
  std::vector<Poly<Zp>> out;
  SplitMix64 rng(0x9d5ul ^ f.at(0).p);
  for (auto& [g, d] : ddf(monic(f))) edf(g, d, out, rng);
  std::sort(out.begin(), out.end(), [](const Poly<Zp>& a, const Poly<Zp>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i].v != b[i].v) return a[i].v < b[i].v;
    return false;
  });
  return out;
}

// Symmetric representative of c mod m in (-m/2, m/2].
inline Int symmetric_mod(const Int& c, const Int& m) {
  Int r = c % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

inline Poly<Int> lift_to_int(const Poly<Zp>& f) {
  Poly<Int> r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(symmetric_mod(Int(c.v), Int(c.p)));
  trim(r);
  return r;
}

inline Poly<Int> mod_poly(const Poly<Int>& f, const Int& m) {
  Poly<Int> r;
  r.reserve(f.size());
  for (const auto& c : f) {
    Int x = c % m;
    if (x < 0) x += m;
    r.push_back(x);
  }
  trim(r);
  return r;
}

inline Poly<Int> sym_poly(const Poly<Int>& f, const Int& m) {
  Poly<Int> r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(symmetric_mod(c, m));
  trim(r);
  return r;
}

// One quadratic Hensel step: given f = g*h mod m with s*g + t*h = 1 mod m
// and h monic, produces the same data mod m^2 (h stays monic).
struct HenselPair {
  Poly<Int> g, h, s, t;
};

inline void hensel_step(const Poly<Int>& f, HenselPair& p, const Int& m) {
  Int m2 = m * m;
  auto mul = [&](const Poly<Int>& a, const Poly<Int>& b) { return mod_poly(pmul(a, b), m2); };
  auto add = [&](const Poly<Int>& a, const Poly<Int>& b) { return mod_poly(padd(a, b), m2); };
  auto sub = [&](const Poly<Int>& a, const Poly<Int>& b) { return mod_poly(psub(a, b), m2); };

  // division by a monic polynomial is valid over Z/m^2
  auto divrem_monic = [&](Poly<Int> a, const Poly<Int>& b) {
    long db = deg(b);
    Poly<Int> q;
    long da = deg(a);
    if (da >= db) q.assign(static_cast<std::size_t>(da - db + 1), Int(0));
    while ((da = deg(a)) >= db) {
      Int c = a[static_cast<std::size_t>(da)];
      q[static_cast<std::size_t>(da - db)] = c;
      for (long i = 0; i <= db; ++i) {
        auto& coef = a[static_cast<std::size_t>(da - db + i)];
        coef = (coef - c * b[static_cast<std::size_t>(i)]) % m2;
        if (coef < 0) coef += m2;
      }
      trim(a);
    }
    trim(q);
    return std::pair(mod_poly(q, m2), mod_poly(a, m2));
  };

  Poly<Int> e = sub(mod_poly(f, m2), mul(p.g, p.h));
  auto [q, r] = divrem_monic(mul(p.s, e), p.h);
  Poly<Int> g1 = add(p.g, add(mul(p.t, e), mul(q, p.g)));
  Poly<Int> h1 = add(p.h, r);

  Poly<Int> b = sub(add(mul(p.s, g1), mul(p.t, h1)), Poly<Int>{Int(1)});
  auto [c, d] = divrem_monic(mul(p.s, b), h1);
  Poly<Int> s1 = sub(p.s, d);
  Poly<Int> t1 = sub(p.t, add(mul(p.t, b), mul(c, g1)));
  p = {std::move(g1), std::move(h1), std::move(s1), std::move(t1)};
}

// Lift the modular factorization f = lc * prod(fact) from p to p^(2^k) >= bound,
// recursively splitting the factor list in two. f is primitive with
// lc(f) invertible mod p; factors are monic mod p. Returns monic factors mod m
// and the reached modulus m.
inline void hensel_tree(const Poly<Int>& f, std::vector<Poly<Zp>> facs, const Int& bound,
                        std::vector<Poly<Int>>& out, Int& reached) {
  std::uint64_t p = facs.at(0).at(0).p;
  if (facs.size() == 1) {
    Int m(static_cast<unsigned long>(p));
    while (m < bound) m = m * m;
    reached = m;
    // single factor: monic version of f mod m
    Int lcv = lead(f) % m;
    if (lcv < 0) lcv += m;
    Int linv;
    mpz_invert(linv.get_mpz_t(), lcv.get_mpz_t(), m.get_mpz_t());
    Poly<Int> g = mod_poly(f, m);
    for (auto& c : g) c = (c * linv) % m;
    out.push_back(mod_poly(g, m));
    return;
  }
  std::size_t half = facs.size() / 2;
  // attach lc(f) to the left group g; the right group h stays monic
  Poly<Zp> fz = to_zp(f, p);
  Poly<Zp> gz{lead(fz)};
  for (std::size_t i = 0; i < half; ++i) gz = pmul(gz, facs[i]);
  Poly<Zp> hz{Zp{1, p}};
  for (std::size_t i = half; i < facs.size(); ++i) hz = pmul(hz, facs[i]);
  auto [d, s, t] = pxgcd(gz, hz);
  if (deg(d) != 0) throw std::logic_error("hensel_tree: factors not coprime mod p");

  HenselPair pair{lift_to_int(gz), lift_to_int(hz), lift_to_int(s), lift_to_int(t)};
  for (auto& c : pair.g)
    if (c < 0) c += static_cast<long>(p);
  for (auto& c : pair.h)
    if (c < 0) c += static_cast<long>(p);
  for (auto& c : pair.s)
    if (c < 0) c += static_cast<long>(p);
  for (auto& c : pair.t)
    if (c < 0) c += static_cast<long>(p);

  Int m(static_cast<unsigned long>(p));
  while (m < bound) {
    hensel_step(f, pair, m);
    m = m * m;
  }
  reached = m;

  // recurse on both halves against their lifted products
  std::vector<Poly<Zp>> left(facs.begin(), facs.begin() + static_cast<long>(half));
  std::vector<Poly<Zp>> right(facs.begin() + static_cast<long>(half), facs.end());
  Int sub_reached;
  std::vector<Poly<Int>> lout, rout;
  hensel_tree(pair.g, left, bound, lout, sub_reached);
  hensel_tree(pair.h, right, bound, rout, sub_reached);
  for (auto& g : lout) out.push_back(mod_poly(g, m));
  for (auto& g : rout) out.push_back(mod_poly(g, m));
}

}  // namespace detail_fz

/// Landau-Mignotte style bound: any factor g of f (deg <= n) satisfies
/// ||g||_inf <= 2^n * ||f||_2 * |lc(f)|. We lift past twice that.
inline Int mignotte_bound(const Poly<Int>& f) {
  Int norm2sq = 0;
  for (const auto& c : f) norm2sq += c * c;
  Int s = sqrt(norm2sq) + 1;
  unsigned long n = static_cast<unsigned long>(deg(f));
  return pow_int(Int(2), n + 1) * s * abs_int(lead(f)) * 2 + 1;
}

/// Factor a squarefree primitive polynomial over Z into irreducible
/// primitive factors (Zassenhaus).
inline std::vector<Poly<Int>> factor_squarefree_int(const Poly<Int>& f) {
  using namespace detail_fz;
  long n = deg(f);
  if (n <= 0) return {};
  if (n == 1) return {primitive_part(f)};

  // choose a prime keeping f squarefree with full degree
  std::uint64_t p = 0;
  Poly<Zp> fz;
  for (std::uint64_t q : kPrimes) {
    if (lead(f) % static_cast<long>(q) == 0) continue;
    Poly<Zp> cand = to_zp(f, q);
    if (deg(cand) != n) continue;
    Poly<Zp> g = pgcd(cand, pderiv(cand));
    if (deg(g) == 0) {
      p = q;
      fz = std::move(cand);
      break;
    }
  }
  if (p == 0) throw std::logic_error("factor_squarefree_int: no good prime in table");

  std::vector<Poly<Zp>> mods = factor_mod_p(fz);
  if (mods.size() == 1) return {primitive_part(f)};

  Int bound = mignotte_bound(f);
  std::vector<Poly<Int>> lifted;
  Int m;
  hensel_tree(f, mods, bound, lifted, m);

  // subset recombination
  std::vector<Poly<Int>> result;
  Poly<Int> rem = f;
  std::vector<int> alive(lifted.size(), 1);
  std::size_t r = lifted.size();
  auto try_subsets = [&](std::size_t card) -> bool {
    // iterate subsets of given cardinality over alive indices
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (alive[i]) idx.push_back(i);
    if (card > idx.size()) return false;
    std::vector<std::size_t> c(card);
    for (std::size_t i = 0; i < card; ++i) c[i] = i;
    for (;;) {
      Poly<Int> prod{lead(rem)};
      for (std::size_t i = 0; i < card; ++i) prod = mod_poly(pmul(prod, lifted[idx[c[i]]]), m);
      Poly<Int> cand = primitive_part(sym_poly(prod, m));
      if (deg(cand) > 0 && pdivides_int(cand, rem)) {
        result.push_back(cand);
        rem = pdiv_exact_int(rem, cand);
        for (std::size_t i = 0; i < card; ++i) alive[idx[c[i]]] = 0;
        r -= card;
        return true;
      }
      // next combination
      std::size_t i = card;
      while (i-- > 0) {
        if (c[i] != i + idx.size() - card) {
          ++c[i];
          for (std::size_t j = i + 1; j < card; ++j) c[j] = c[j - 1] + 1;
          goto cont;
        }
      }
      return false;
    cont:;
    }
  };
  for (std::size_t card = 1; 2 * card <= r;) {
    if (!try_subsets(card)) ++card;
  }
  if (deg(rem) > 0) result.push_back(primitive_part(rem));
  std::sort(result.begin(), result.end());
  return result;
}

/// Full factorization over Q of an integer polynomial: content is dropped,
/// factors are primitive irreducible with positive leading coefficient.
inline std::vector<std::pair<Poly<Int>, int>> factor_int(const Poly<Int>& f) {
  std::vector<std::pair<Poly<Int>, int>> out;
  if (deg(f) <= 0) return out;
  for (auto& [sqf, mult] : squarefree_decompose_int(primitive_part(f)))
    for (auto& irr : factor_squarefree_int(sqf)) out.emplace_back(irr, mult);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace planesect
