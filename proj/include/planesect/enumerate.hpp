#pragma once

// Exhaustive enumeration of rational points of bounded height on the
// surface, with a modular pre-sieve over configurable prime-power moduli;
// detection of rational lines from low-height point pairs; line stripping.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "planesect/integers.hpp"
#include "planesect/lattice.hpp"
#include "planesect/projective.hpp"
#include "planesect/surface.hpp"

namespace planesect {

struct PointSet {
  std::string surface_hash;
  long bound = 0;
  std::vector<PrimitivePoint> points;  // sorted, canonical, duplicate-free
};

struct LineOnSurface {
  PrimitivePoint p, q;            // two spanning points
  std::array<Int, 6> plucker;     // canonical primitive minors (01,02,03,12,13,23)

  friend bool operator==(const LineOnSurface& a, const LineOnSurface& b) {
    return a.plucker == b.plucker;
  }
  friend bool operator<(const LineOnSurface& a, const LineOnSurface& b) {
    return a.plucker < b.plucker;
  }
};

inline std::array<Int, 6> plucker_of(const PrimitivePoint& p, const PrimitivePoint& q) {
  std::array<Int, 6> w;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      w[k++] = p.coords[i] * q.coords[j] - p.coords[j] * q.coords[i];
  if (!canonicalize(w)) throw DependentBasisError();
  return w;
}

/// Exact containment test: substituting s*p + t*q into F must give the
/// identically zero binary form.
inline bool line_in_surface(const SurfaceForm& f, const PrimitivePoint& p,
                            const PrimitivePoint& q) {
  std::array<std::array<Int, 2>, 4> coeffs;
  for (int i = 0; i < 4; ++i) coeffs[i] = {p.coords[i], q.coords[i]};
  return mp_substitute<2>(f.form, coeffs).empty();
}

namespace detail_enum {

struct SieveTable {
  long m;
  long inv_prev;                    // inverse mod m of the product of the
                                    // preceding tables' moduli
  std::vector<std::uint64_t> mask;  // indexed by ((a*m)+b)*m+c, bit t set if
                                    // F(a,b,c,t) = 0 mod m
};

inline std::vector<SieveTable> build_sieve(const SurfaceForm& f, std::vector<long> moduli) {
  // keep pairwise-coprime moduli only (first wins), largest first
  std::sort(moduli.begin(), moduli.end(), std::greater<long>());
  std::vector<long> kept;
  for (long m : moduli) {
    if (m < 2 || m > 64) throw std::invalid_argument("sieve modulus must be in [2, 64]");
    bool ok = true;
    for (long k : kept)
      if (std::gcd(k, m) != 1) ok = false;
    if (ok) kept.push_back(m);
  }
  std::vector<SieveTable> tables;
  for (long m : kept) {
    long pm = 1;
    for (const auto& tb : tables) pm = (pm * (tb.m % m)) % m;
    long inv = 1;
    for (long i = 1; i < m; ++i)
      if ((pm * i) % m == 1) {
        inv = i;
        break;
      }
    SieveTable t{m, inv, std::vector<std::uint64_t>(static_cast<std::size_t>(m * m * m), 0)};
    // reduce coefficients once
    std::vector<std::pair<Expo<4>, long>> terms;
    for (const auto& [e, c] : f.form)
      terms.emplace_back(e, static_cast<long>(
                                mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(m))));
    // power tables
    std::vector<std::array<long, 6>> pw(static_cast<std::size_t>(m));
    for (long v = 0; v < m; ++v) {
      pw[static_cast<std::size_t>(v)][0] = 1 % m;
      for (int k = 1; k <= 5; ++k)
        pw[static_cast<std::size_t>(v)][k] =
            (pw[static_cast<std::size_t>(v)][k - 1] * v) % m;
    }
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b)
        for (long c = 0; c < m; ++c) {
          std::uint64_t bits = 0;
          for (long tt = 0; tt < m; ++tt) {
            long s = 0;
            for (const auto& [e, cf] : terms) {
              long v = cf;
              v = (v * pw[static_cast<std::size_t>(a)][e[0]]) % m;
              v = (v * pw[static_cast<std::size_t>(b)][e[1]]) % m;
              v = (v * pw[static_cast<std::size_t>(c)][e[2]]) % m;
              v = (v * pw[static_cast<std::size_t>(tt)][e[3]]) % m;
              s = (s + v) % m;
            }
            if (s == 0) bits |= (std::uint64_t(1) << tt);
          }
          t.mask[static_cast<std::size_t>((a * m + b) * m + c)] = bits;
        }
    tables.push_back(std::move(t));
  }
  return tables;
}

inline long mod_pos(long v, long m) {
  long r = v % m;
  return r < 0 ? r + m : r;
}

// Coefficients of g(t) = F(x0, x1, x2, t).
inline std::array<Int, 6> t_poly(const SurfaceForm& f, long x0, long x1, long x2) {
  std::array<Int, 6> g{Int(0), Int(0), Int(0), Int(0), Int(0), Int(0)};
  for (const auto& [e, c] : f.form) {
    Int v = c;
    if (e[0]) v *= pow_int(Int(x0), static_cast<unsigned long>(e[0]));
    if (e[1]) v *= pow_int(Int(x1), static_cast<unsigned long>(e[1]));
    if (e[2]) v *= pow_int(Int(x2), static_cast<unsigned long>(e[2]));
    g[static_cast<std::size_t>(e[3])] += v;
  }
  return g;
}

inline Int eval_t(const std::array<Int, 6>& g, long t) {
  Int r = 0;
  for (int k = 5; k >= 0; --k) r = r * t + g[static_cast<std::size_t>(k)];
  return r;
}

struct CrtScratch {
  std::vector<long> cur, next;
};

// CRT combine of per-modulus root residues into candidate integers t with
// |t| <= B; moduli pairwise coprime, every residue passes every table.
// Caller verifies candidates exactly.
inline void candidate_roots(const std::vector<SieveTable>& tables,
                            const std::vector<std::uint64_t>& masks, long B,
                            CrtScratch& ws, std::vector<long>& out) {
  out.clear();
  // combine residues until modulus product exceeds 2B+1
  ws.cur.assign(1, 0);
  long M = 1;
  std::size_t used = 0;
  for (; used < tables.size() && M <= 2 * B; ++used) {
    long m = tables[used].m;
    std::uint64_t bits = masks[used];
    long inv = tables[used].inv_prev;  // inverse of M mod m (M = product so far)
    ws.next.clear();
    for (long c : ws.cur) {
      // t = c + M*k with c + M*k = s (mod m)
      for (long s = 0; s < m; ++s) {
        if (!(bits & (std::uint64_t(1) << s))) continue;
        long k = ((s - c) % m + m) % m;
        k = (k * inv) % m;
        ws.next.push_back(c + M * k);
      }
    }
    M *= m;
    std::swap(ws.cur, ws.next);
    if (ws.cur.empty()) return;
  }
  for (long c : ws.cur) {
    // representatives of c mod M within [-B, B]
    long base = mod_pos(c, M);
    for (long t = base - ((base + B) / M) * M; t <= B; t += M) {
      if (t < -B) continue;
      bool ok = true;
      for (std::size_t i = used; i < tables.size() && ok; ++i) {
        long m = tables[i].m;
        if (!(masks[i] & (std::uint64_t(1) << mod_pos(t, m)))) ok = false;
      }
      if (ok) out.push_back(t);
    }
  }
}

}  // namespace detail_enum

/// All canonical points of height <= B on {F = 0} with height > B_lo.
/// The sieve is a pure accelerator: output is identical with it disabled.
inline PointSet enumerate_points(const SurfaceForm& f, long B,
                                 const std::vector<long>& sieve_moduli = {16, 9, 5, 7, 11,
                                                                          13},
                                 bool use_sieve = true, int threads = 1, long B_lo = 0) {
  if (B < 1) throw InvalidBoundError();
  std::vector<detail_enum::SieveTable> tables;
  if (use_sieve) tables = detail_enum::build_sieve(f, sieve_moduli);

  auto worker = [&](long x0_begin, long x0_end, std::vector<PrimitivePoint>& out) {
    std::vector<std::uint64_t> masks(tables.size());
    std::vector<long> cands;
    detail_enum::CrtScratch ws;
    for (long x0 = x0_begin; x0 < x0_end; ++x0)
      for (long x1 = (x0 ? -B : 0); x1 <= B; ++x1)
        for (long x2 = (x0 || x1 ? -B : 0); x2 <= B; ++x2) {
          if (!x0 && !x1 && !x2) continue;  // handled by caller
          long g3 = std::gcd(std::gcd(std::abs(x0), std::abs(x1)), std::abs(x2));
          long tlo = -B, thi = B;
          bool skip_low = std::max({std::abs(x0), std::abs(x1), std::abs(x2)}) <= B_lo;
          if (use_sieve) {
            bool dead = false;
            for (std::size_t i = 0; i < tables.size(); ++i) {
              long m = tables[i].m;
              long a = detail_enum::mod_pos(x0, m), b = detail_enum::mod_pos(x1, m),
                   c = detail_enum::mod_pos(x2, m);
              masks[i] = tables[i].mask[static_cast<std::size_t>((a * m + b) * m + c)];
              if (masks[i] == 0) {
                dead = true;
                break;
              }
            }
            if (dead) continue;
          }
          if (use_sieve) {
            detail_enum::candidate_roots(tables, masks, B, ws, cands);
            if (cands.empty()) continue;
          }
          auto g = detail_enum::t_poly(f, x0, x1, x2);
          bool zero = true;
          for (const auto& c : g)
            if (c != 0) zero = false;
          auto emit = [&](long t) {
            if (skip_low && std::abs(t) <= B_lo) return;
            if (std::gcd(g3, std::abs(t)) != 1) return;
            Vec4 v{Int(x0), Int(x1), Int(x2), Int(t)};
            out.push_back(make_point(std::move(v)));
          };
          if (zero) {
            for (long t = tlo; t <= thi; ++t) emit(t);
          } else if (use_sieve) {
            for (long t : cands)
              if (detail_enum::eval_t(g, t) == 0) emit(t);
          } else {
            for (long t = tlo; t <= thi; ++t)
              if (detail_enum::eval_t(g, t) == 0) emit(t);
          }
        }
  };

  std::vector<PrimitivePoint> all;
  if (threads <= 1) {
    worker(0, B + 1, all);
  } else {
    std::vector<std::vector<PrimitivePoint>> parts(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    long per = (B + 1 + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
      long lo = i * per, hi = std::min<long>(B + 1, lo + per);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi, std::ref(parts[static_cast<std::size_t>(i)]));
    }
    for (auto& th : pool) th.join();
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  }
  // the (0,0,0,1) point
  if (B_lo < 1) {
    PrimitivePoint e3 = make_point(Vec4{Int(0), Int(0), Int(0), Int(1)});
    if (evaluate(f, e3) == 0) all.push_back(e3);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return PointSet{surface_hash(f), B, std::move(all)};
}

/// Is x on the line spanned by p and q? Exact rank test: all 3x3 minors of
/// the stacked 3x4 matrix vanish.
inline bool point_on_line(const PrimitivePoint& x, const LineOnSurface& line) {
  const Vec4& a = x.coords;
  const Vec4& b = line.p.coords;
  const Vec4& c = line.q.coords;
  for (int c0 = 0; c0 < 4; ++c0)
    for (int c1 = c0 + 1; c1 < 4; ++c1)
      for (int c2 = c1 + 1; c2 < 4; ++c2) {
        Int m = a[c0] * (b[c1] * c[c2] - b[c2] * c[c1]) -
                a[c1] * (b[c0] * c[c2] - b[c2] * c[c0]) +
                a[c2] * (b[c0] * c[c1] - b[c1] * c[c0]);
        if (m != 0) return false;
      }
  return true;
}

/// Lines on X spanned by pairs of enumerated points of height <=
/// pair_height_bound, deduplicated by canonical Pluecker coordinates.
inline std::vector<LineOnSurface> find_lines(const SurfaceForm& f, const PointSet& pts,
                                             long pair_height_bound) {
  std::vector<const PrimitivePoint*> small;
  for (const auto& p : pts.points)
    if (p.height <= pair_height_bound) small.push_back(&p);
  // machine-word prefilter data: F(p + q) = 0 is necessary for containment
  // and fits in 128-bit arithmetic when coefficients and heights are small
  bool fast = pair_height_bound <= (1 << 16);
  std::vector<std::pair<Expo<4>, long>> fterms;
  for (const auto& [e, c] : f.form) {
    if (!c.fits_slong_p() || abs_int(c) > (Int(1) << 30)) fast = false;
    if (!fast) break;
    fterms.emplace_back(e, c.get_si());
  }
  std::vector<std::array<long, 4>> coords(small.size());
  if (fast)
    for (std::size_t i = 0; i < small.size(); ++i)
      for (int k = 0; k < 4; ++k) coords[i][k] = small[i]->coords[k].get_si();
  auto fast_sum_eval = [&](std::size_t i, std::size_t j) -> bool {
    // F(p + q) == 0?
    __int128 total = 0;
    std::array<long, 4> s;
    for (int k = 0; k < 4; ++k) s[k] = coords[i][k] + coords[j][k];
    for (const auto& [e, c] : fterms) {
      __int128 t = c;
      for (int k = 0; k < 4; ++k)
        for (int r = 0; r < e[k]; ++r) t *= s[k];
      total += t;
    }
    return total == 0;
  };
  std::vector<LineOnSurface> out;
  // line ids already known to contain each candidate point; pairs sharing a
  // known line are skipped, so each line is materialized exactly once
  std::vector<std::vector<int>> member(small.size());
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = i + 1; j < small.size(); ++j) {
      const auto& p = *small[i];
      const auto& q = *small[j];
      // cheap necessary condition before the exact binary-form check
      if (fast) {
        if (!fast_sum_eval(i, j)) continue;
      } else {
        Vec4 s;
        for (int k = 0; k < 4; ++k) s[k] = p.coords[k] + q.coords[k];
        if (mp_eval(f.form, s) != 0) continue;
      }
      bool shared = false;
      for (int a : member[i]) {
        for (int b : member[j])
          if (a == b) {
            shared = true;
            break;
          }
        if (shared) break;
      }
      if (shared) continue;
      std::array<Int, 6> pl;
      try {
        pl = plucker_of(p, q);
      } catch (const DependentBasisError&) {
        continue;  // projectively equal (cannot happen for canonical points)
      }
      if (!line_in_surface(f, p, q)) continue;
      int id = static_cast<int>(out.size());
      out.push_back(LineOnSurface{p, q, pl});
      for (std::size_t k = 0; k < small.size(); ++k)
        if (point_on_line(*small[k], out.back())) member[k].push_back(id);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Points of pts lying on none of the given lines (realizes N_{X'}).
inline PointSet strip_lines(const PointSet& pts, const std::vector<LineOnSurface>& lines) {
  PointSet out{pts.surface_hash, pts.bound, {}};
  for (const auto& x : pts.points) {
    bool on = false;
    for (const auto& l : lines)
      if (point_on_line(x, l)) {
        on = true;
        break;
      }
    if (!on) out.points.push_back(x);
  }
  return out;
}

// ---- point-cache file format -------------------------------------------

struct CacheFormatError : std::runtime_error {
  explicit CacheFormatError(const std::string& what) : std::runtime_error(what) {}
};

inline void write_point_cache(const std::string& path, const PointSet& pts) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << "planesect-points v1 " << pts.surface_hash << " B=" << pts.bound << "\n";
    for (const auto& p : pts.points) out << to_string(p.coords) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp);
}

inline std::optional<PointSet> read_point_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string head, ver, hash, btag;
  in >> head >> ver >> hash >> btag;
  if (head != "planesect-points" || ver != "v1" || btag.rfind("B=", 0) != 0)
    throw CacheFormatError("bad header in " + path);
  PointSet pts{hash, std::stol(btag.substr(2)), {}};
  std::string a, b, c, d;
  while (in >> a >> b >> c >> d)
    pts.points.push_back(make_point(Vec4{Int(a), Int(b), Int(c), Int(d)}));
  return pts;
}

}  // namespace planesect
