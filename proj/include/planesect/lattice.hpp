#pragma once

// Effective covering of rational points by planes of small height: the
// rank-3 lattice {a in Z^4 : a.x = 0}, exact-rational LLL reduction, and a
// shortest-vector search in the sup norm. Also exhaustive enumeration and
// Moebius counting of planes of bounded height.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "planesect/integers.hpp"
#include "planesect/projective.hpp"

namespace planesect {

struct InvalidBoundError : std::invalid_argument {
  InvalidBoundError() : std::invalid_argument("bound must be >= 1") {}
};

/// Basis of the full rank-3 lattice orthogonal to a primitive point.
struct OrthogonalLatticeBasis {
  std::array<Vec4, 3> vectors;
  Int gram_det;
};

inline Int gram_determinant(const std::array<Vec4, 3>& v) {
  Int g00 = dot(v[0], v[0]), g01 = dot(v[0], v[1]), g02 = dot(v[0], v[2]);
  Int g11 = dot(v[1], v[1]), g12 = dot(v[1], v[2]), g22 = dot(v[2], v[2]);
  return g00 * (g11 * g22 - g12 * g12) - g01 * (g01 * g22 - g12 * g02) +
         g02 * (g01 * g12 - g11 * g02);
}

/// Kernel lattice of x by unimodular column reduction: builds U with
/// x.U = (1,0,0,0); columns 1..3 of U span {a : a.x = 0} exactly.
inline OrthogonalLatticeBasis orthogonal_lattice_basis(const PrimitivePoint& x) {
  // U as 4 columns
  std::array<Vec4, 4> cols;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) cols[i][j] = (i == j) ? 1 : 0;
  Vec4 v = x.coords;
  // fold entries 1..3 into entry 0 (or into the first nonzero entry)
  for (int j = 1; j < 4; ++j) {
    if (v[j] == 0) continue;
    if (v[0] == 0) {
      std::swap(v[0], v[j]);
      std::swap(cols[0], cols[j]);
      continue;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v[0].get_mpz_t(), v[j].get_mpz_t());
    Int a = v[0] / g, b = v[j] / g;
    Vec4 c0 = cols[0], cj = cols[j];
    for (int r = 0; r < 4; ++r) {
      cols[0][r] = s * c0[r] + t * cj[r];
      cols[j][r] = -b * c0[r] + a * cj[r];
    }
    v[0] = g;
    v[j] = 0;
  }
  // primitive x gives g = +/- 1; flip sign so x.U = e1 exactly
  if (v[0] < 0)
    for (int r = 0; r < 4; ++r) cols[0][r] = -cols[0][r];
  OrthogonalLatticeBasis out{{cols[1], cols[2], cols[3]}, Int(0)};
  out.gram_det = gram_determinant(out.vectors);
  return out;
}

namespace detail_lll {

struct GramSchmidt {
  std::array<std::array<Rat, 3>, 3> mu;  // mu[i][j], j < i
  std::array<Rat, 3> norm2;              // |b_i*|^2
};

inline GramSchmidt gram_schmidt(const std::array<Vec4, 3>& b) {
  GramSchmidt gs;
  std::array<std::array<Rat, 4>, 3> star;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 4; ++k) star[i][k] = Rat(b[i][k]);
    for (int j = 0; j < i; ++j) {
      Rat num(0);
      for (int k = 0; k < 4; ++k) num += Rat(b[i][k]) * star[j][k];
      gs.mu[i][j] = num / gs.norm2[j];
      for (int k = 0; k < 4; ++k) star[i][k] -= gs.mu[i][j] * star[j][k];
    }
    Rat n2(0);
    for (int k = 0; k < 4; ++k) n2 += star[i][k] * star[i][k];
    gs.norm2[i] = n2;
  }
  return gs;
}

inline Int round_rat(const Rat& r) {
  // nearest integer, ties toward zero
  Int num = r.get_num(), den = r.get_den();
  Int q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * rem > den) q += 1;
  return q;
}

}  // namespace detail_lll

/// Exact-rational LLL on the rank-3 kernel lattice. Preserves the lattice;
/// output is size-reduced and satisfies the Lovasz condition for delta.
inline OrthogonalLatticeBasis lll_reduce(const OrthogonalLatticeBasis& basis,
                                         const Rat& delta = Rat(3, 4)) {
  using namespace detail_lll;
  if (delta <= Rat(1, 4) || delta >= 1) throw std::invalid_argument("delta must be in (1/4, 1)");
  std::array<Vec4, 3> b = basis.vectors;
  GramSchmidt gs = gram_schmidt(b);
  int k = 1;
  while (k < 3) {
    for (int j = k - 1; j >= 0; --j) {
      Int r = round_rat(gs.mu[k][j]);
      if (r != 0) {
        for (int c = 0; c < 4; ++c) b[k][c] -= r * b[j][c];
        gs = gram_schmidt(b);
      }
    }
    Rat lhs = gs.norm2[k];
    Rat rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = gram_schmidt(b);
      k = std::max(k - 1, 1);
    }
  }
  OrthogonalLatticeBasis out{b, gram_determinant(b)};
  return out;
}

namespace detail_lll {

// All nonzero lattice vectors with squared Euclidean norm <= r2, via
// Fincke-Pohst enumeration with exact rational bounds.
inline std::vector<Vec4> enumerate_below(const std::array<Vec4, 3>& b, const GramSchmidt& gs,
                                         const Rat& r2) {
  std::vector<Vec4> out;
  auto bound = [](const Rat& q) -> Int {
    // floor(sqrt(q)) for q >= 0
    if (q < 0) return Int(-1);
    Int num = q.get_num(), den = q.get_den();
    Int scaled = num / den;
    Int r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    while ((r + 1) * (r + 1) * den <= num) r += 1;
    return r;
  };
  Int c2lim = bound(r2 / gs.norm2[2]);
  for (Int c2 = -c2lim; c2 <= c2lim; ++c2) {
    Rat rem1 = r2 - Rat(c2 * c2) * gs.norm2[2];
    Rat center1 = -gs.mu[2][1] * Rat(c2);
    Int w1 = bound(rem1 / gs.norm2[1]);
    Int lo1 = round_rat(center1) - w1 - 1, hi1 = round_rat(center1) + w1 + 1;
    for (Int c1 = lo1; c1 <= hi1; ++c1) {
      Rat d1 = Rat(c1) - center1;
      Rat used1 = d1 * d1 * gs.norm2[1];
      if (used1 > rem1) continue;
      Rat rem0 = rem1 - used1;
      Rat center0 = -gs.mu[2][0] * Rat(c2) - gs.mu[1][0] * Rat(c1);
      Int w0 = bound(rem0 / gs.norm2[0]);
      Int lo0 = round_rat(center0) - w0 - 1, hi0 = round_rat(center0) + w0 + 1;
      for (Int c0 = lo0; c0 <= hi0; ++c0) {
        if (c0 == 0 && c1 == 0 && c2 == 0) continue;
        Vec4 v;
        for (int k = 0; k < 4; ++k) v[k] = c0 * b[0][k] + c1 * b[1][k] + c2 * b[2][k];
        Int n2 = dot(v, v);
        if (Rat(n2) <= r2) out.push_back(v);
      }
    }
  }
  return out;
}

}  // namespace detail_lll

namespace detail_fast {

// Machine-word fast path for covering_plane. All basis updates are exact
// integer elementary operations (so the lattice is preserved); floating
// point only steers the reduction. The final enumeration is exact in
// 128-bit arithmetic, so the result is identical to the big-integer path.
// Any magnitude-guard failure reports false and the caller falls back.

using i64 = std::int64_t;
using i128 = __int128;

struct B3 {
  std::array<std::array<i64, 4>, 3> v;
};

inline i64 egcd64(i64 a, i64 b, i64& s, i64& t) {
  i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    i64 q = a / b;
    i64 tmp = a - q * b;
    a = b;
    b = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

inline bool kernel64(const std::array<i64, 4>& x, B3& out) {
  constexpr i64 kMax = i64(1) << 61;
  std::array<std::array<i64, 4>, 4> cols{};
  for (int i = 0; i < 4; ++i) cols[i][i] = 1;
  std::array<i64, 4> v = x;
  for (int j = 1; j < 4; ++j) {
    if (v[j] == 0) continue;
    if (v[0] == 0) {
      std::swap(v[0], v[j]);
      std::swap(cols[0], cols[j]);
      continue;
    }
    i64 s, t;
    i64 g = egcd64(v[0], v[j], s, t);
    i64 a = v[0] / g, b = v[j] / g;
    auto c0 = cols[0], cj = cols[j];
    for (int r = 0; r < 4; ++r) {
      i128 n0 = i128(s) * c0[r] + i128(t) * cj[r];
      i128 nj = -i128(b) * c0[r] + i128(a) * cj[r];
      if (n0 > kMax || n0 < -kMax || nj > kMax || nj < -kMax) return false;
      cols[0][r] = i64(n0);
      cols[j][r] = i64(nj);
    }
    v[0] = g;
    v[j] = 0;
  }
  if (v[0] < 0)
    for (int r = 0; r < 4; ++r) cols[0][r] = -cols[0][r];
  out.v = {cols[1], cols[2], cols[3]};
  return true;
}

inline i128 isqrt128(i128 n) {
  if (n <= 0) return 0;
  i128 r = i128(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline i128 floordiv(i128 a, i128 b) {
  // b > 0
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline i128 ceildiv(i128 a, i128 b) {
  i128 q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

// Exact nearest-integer pairwise reduction; each step strictly decreases a
// vector's norm, so this terminates. Shrinks the raw kernel basis enough
// that double-precision Gram-Schmidt in lll64 is well conditioned.
inline bool prereduce64(B3& b) {
  auto ip = [&](int i, int j) -> i128 {
    i128 s = 0;
    for (int c = 0; c < 4; ++c) s += i128(b.v[i][c]) * b.v[j][c];
    return s;
  };
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        i128 den = ip(j, j);
        if (den <= 0) return false;
        i128 q = floordiv(2 * ip(i, j) + den, 2 * den);
        if (q == 0) continue;
        for (int c = 0; c < 4; ++c) {
          i128 nv = i128(b.v[i][c]) - q * b.v[j][c];
          if (nv > (i128(1) << 62) || nv < -(i128(1) << 62)) return false;
          b.v[i][c] = i64(nv);
        }
        changed = true;
      }
    if (!changed) return true;
  }
  return true;
}

inline bool lll64(B3& b) {
  constexpr i64 kMax = i64(1) << 60;
  auto gram = [&](int i, int j) -> double {
    i128 s = 0;
    for (int c = 0; c < 4; ++c) s += i128(b.v[i][c]) * b.v[j][c];
    return double(s);
  };
  int k = 1, guard = 0;
  while (k < 3) {
    if (++guard > 400) return false;
    double mu[3][3], n2[3];
    {
      double g[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j) g[i][j] = g[j][i] = gram(i, j);
      for (int i = 0; i < 3; ++i) {
        n2[i] = g[i][i];
        for (int j = 0; j < i; ++j) {
          double num = g[i][j];
          for (int l = 0; l < j; ++l) num -= mu[i][l] * mu[j][l] * n2[l];
          if (!(n2[j] > 0)) return false;
          mu[i][j] = num / n2[j];
          n2[i] -= mu[i][j] * mu[i][j] * n2[j];
        }
      }
    }
    bool changed = false;
    for (int j = k - 1; j >= 0; --j) {
      double m = mu[k][j];
      if (m > 0.5 || m < -0.5) {
        i64 r = llround(m);
        for (int c = 0; c < 4; ++c) {
          i128 nv = i128(b.v[k][c]) - i128(r) * b.v[j][c];
          if (nv > kMax || nv < -kMax) return false;
          b.v[k][c] = i64(nv);
        }
        changed = true;
        break;  // recompute GS, then retry this k
      }
    }
    if (changed) continue;
    if (n2[k] >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) * n2[k - 1] * 0.999) {
      ++k;
    } else {
      std::swap(b.v[k], b.v[k - 1]);
      k = std::max(k - 1, 1);
    }
  }
  return true;
}

// Exact sup-norm-shortest vector of the lattice spanned by b, ties broken
// by lexicographically least canonical form. Mirrors the big-integer path.
inline bool shortest_sup64(const B3& b, std::array<i64, 4>& best_out) {
  constexpr i64 kEntMax = i64(1) << 14;
  for (auto& row : b.v)
    for (i64 e : row)
      if (e > kEntMax || e < -kEntMax) return false;
  i128 g[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) {
      i128 s = 0;
      for (int c = 0; c < 4; ++c) s += i128(b.v[i][c]) * b.v[j][c];
      g[i][j] = g[j][i] = s;
    }
  // integral Gram-Schmidt data: d0 = |b0|^2, lambda_ij = d_j * mu_ij
  i128 d0 = g[0][0];
  i128 l10 = g[1][0], l20 = g[2][0];
  i128 d1 = g[0][0] * g[1][1] - g[1][0] * g[1][0];
  i128 l21 = g[0][0] * g[2][1] - g[2][0] * g[1][0];
  i128 d2 = g[0][0] * (g[1][1] * g[2][2] - g[2][1] * g[2][1]) -
            g[1][0] * (g[1][0] * g[2][2] - g[2][1] * g[2][0]) +
            g[2][0] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  if (d0 <= 0 || d1 <= 0 || d2 <= 0) return false;
  i64 s0 = 0;
  for (auto& row : b.v) {
    i64 sup = 0;
    for (i64 e : row) sup = std::max(sup, e < 0 ? -e : e);
    if (s0 == 0 || sup < s0) s0 = sup;
  }
  i128 r2 = i128(4) * s0 * s0;
  // ||v||^2 <= r2  <=>  c2^2 d0 d2 + t1^2 + t0^2 d1 <= r2 d0 d1, where
  // t1 = c1 d1 + l21 c2 and t0 = c0 d0 + l10 c1 + l20 c2.
  i128 c2lim = isqrt128(floordiv(r2 * d1, d2));
  if (c2lim > (i128(1) << 20)) return false;
  bool have = false;
  i64 best_sup = 0;
  std::array<i64, 4> best{};
  for (i128 c2 = -c2lim; c2 <= c2lim; ++c2) {
    i128 a1 = r2 * d1 - c2 * c2 * d2;
    if (a1 < 0) continue;
    i128 r1 = d0 * a1;  // t1^2 <= r1
    i128 s1 = isqrt128(r1);
    i128 off1 = l21 * c2;
    i128 lo1 = ceildiv(-s1 - off1, d1), hi1 = floordiv(s1 - off1, d1);
    for (i128 c1 = lo1; c1 <= hi1; ++c1) {
      i128 t1 = c1 * d1 + off1;
      i128 r0 = r1 - t1 * t1;
      if (r0 < 0) continue;
      i128 q0 = floordiv(r0, d1);  // t0^2 <= r0/d1
      i128 s0b = isqrt128(q0);
      while ((s0b + 1) * (s0b + 1) * d1 <= r0) ++s0b;
      i128 off0 = l10 * c1 + l20 * c2;
      i128 lo0 = ceildiv(-s0b - off0, d0), hi0 = floordiv(s0b - off0, d0);
      for (i128 c0 = lo0; c0 <= hi0; ++c0) {
        if (c0 == 0 && c1 == 0 && c2 == 0) continue;
        std::array<i64, 4> v;
        i64 sup = 0;
        for (int c = 0; c < 4; ++c) {
          i128 e = c0 * b.v[0][c] + c1 * b.v[1][c] + c2 * b.v[2][c];
          v[c] = i64(e);
          i64 ae = v[c] < 0 ? -v[c] : v[c];
          sup = std::max(sup, ae);
        }
        if (sup > s0) continue;
        if (have && sup > best_sup) continue;
        std::array<i64, 4> canon = v;
        i64 gg = 0;
        for (i64 e : canon) gg = std::gcd(gg, e < 0 ? -e : e);
        for (auto& e : canon) e /= gg;
        for (i64 e : canon) {
          if (e > 0) break;
          if (e < 0) {
            for (auto& f : canon) f = -f;
            break;
          }
        }
        if (!have || sup < best_sup || (sup == best_sup && canon < best)) {
          have = true;
          best_sup = sup;
          best = canon;
        }
      }
    }
  }
  if (!have) return false;
  best_out = best;
  return true;
}

inline bool covering_fast(const PrimitivePoint& x, Vec4& out) {
  std::array<i64, 4> xi;
  for (int i = 0; i < 4; ++i) {
    if (!x.coords[i].fits_slong_p()) return false;
    long v = x.coords[i].get_si();
    if (v > (i64(1) << 20) || v < -(i64(1) << 20)) return false;
    xi[i] = v;
  }
  B3 b;
  if (!kernel64(xi, b)) return false;
  if (!prereduce64(b)) return false;
  if (!lll64(b)) return false;
  std::array<i64, 4> best;
  if (!shortest_sup64(b, best)) return false;
  for (int i = 0; i < 4; ++i) out[i] = best[i];
  return true;
}

}  // namespace detail_fast

/// Deterministic plane of small height through x: the sup-norm-shortest
/// vector of the orthogonal lattice, ties broken by lexicographically least
/// canonical form. Satisfies height <= 4 * height(x)^(1/3).
inline PrimitivePlane covering_plane_exact(const PrimitivePoint& x) {
  OrthogonalLatticeBasis red = lll_reduce(orthogonal_lattice_basis(x));
  detail_lll::GramSchmidt gs = detail_lll::gram_schmidt(red.vectors);
  Int s0 = max_norm(red.vectors[0]);
  // any vector with sup norm <= s0 has squared Euclidean norm <= 4*s0^2
  Rat r2 = Rat(4 * s0 * s0);
  std::vector<Vec4> cands = detail_lll::enumerate_below(red.vectors, gs, r2);
  bool have = false;
  Int best_sup = 0;
  Vec4 best;
  for (Vec4& v : cands) {
    Int sup = max_norm(v);
    if (sup > s0) continue;
    canonicalize(v);
    if (!have || sup < best_sup || (sup == best_sup && v < best)) {
      have = true;
      best_sup = sup;
      best = v;
    }
  }
  if (!have) throw std::logic_error("covering_plane: empty enumeration");
  return make_plane(best);
}

/// Same contract as covering_plane_exact; dispatches to a machine-word fast
/// path for small heights and falls back to the big-integer path on any
/// magnitude guard. The two paths agree identically (property-tested).
inline PrimitivePlane covering_plane(const PrimitivePoint& x) {
  Vec4 n;
  if (detail_fast::covering_fast(x, n)) return make_plane(std::move(n));
  return covering_plane_exact(x);
}

/// All canonical primitive planes of height <= T, sorted. Intended for
/// small T (the section-sampling pool); counting uses count_planes.
inline std::vector<PrimitivePlane> enumerate_planes(long T) {
  if (T < 1) throw InvalidBoundError();
  std::vector<PrimitivePlane> out;
  std::array<long, 4> a{};
  for (a[0] = 0; a[0] <= T; ++a[0])
    for (a[1] = (a[0] ? -T : 0); a[1] <= T; ++a[1])
      for (a[2] = (a[0] || a[1] ? -T : 0); a[2] <= T; ++a[2])
        for (a[3] = (a[0] || a[1] || a[2] ? -T : 1); a[3] <= T; ++a[3]) {
          long g = 0;
          for (long c : a) g = std::gcd(g, std::abs(c));
          if (g != 1) continue;
          Vec4 n{Int(a[0]), Int(a[1]), Int(a[2]), Int(a[3])};
          out.push_back(make_plane(std::move(n)));
        }
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of canonical primitive planes of height <= T, by Moebius
/// inversion over the scaling factor. Cross-checked against
/// enumerate_planes in the tests.
inline Int count_planes(long T) {
  if (T < 1) throw InvalidBoundError();
  std::vector<int> mu(static_cast<std::size_t>(T) + 1, 1);
  std::vector<bool> isc(static_cast<std::size_t>(T) + 1, false);
  std::vector<long> primes;
  for (long i = 2; i <= T; ++i) {
    if (!isc[static_cast<std::size_t>(i)]) {
      primes.push_back(i);
      mu[static_cast<std::size_t>(i)] = -1;
    }
    for (long p : primes) {
      if (i * p > T) break;
      isc[static_cast<std::size_t>(i * p)] = true;
      if (i % p == 0) {
        mu[static_cast<std::size_t>(i * p)] = 0;
        break;
      }
      mu[static_cast<std::size_t>(i * p)] = -mu[static_cast<std::size_t>(i)];
    }
  }
  Int total = 0;
  for (long g = 1; g <= T; ++g) {
    if (mu[static_cast<std::size_t>(g)] == 0) continue;
    Int side = 2 * (T / g) + 1;
    Int cnt = pow_int(side, 4) - 1;
    total += mu[static_cast<std::size_t>(g)] * cnt;
  }
  return total / 2;
}

}  // namespace planesect
