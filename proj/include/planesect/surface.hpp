#pragma once

// The surface X = {F = 0} in P^3: parsing, exact evaluation, gradients, and
// a heuristic smoothness check (F_p sweeps plus a low-height rational
// search). Geometric smoothness over the algebraic closure is assumed, not
// certified; singular points defined over extensions can evade detection.

#include <array>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planesect/integers.hpp"
#include "planesect/multipoly.hpp"
#include "planesect/projective.hpp"

namespace planesect {

struct NotHomogeneousError : std::invalid_argument {
  NotHomogeneousError() : std::invalid_argument("form is not homogeneous") {}
};

struct DegreeTooSmallError : std::invalid_argument {
  DegreeTooSmallError() : std::invalid_argument("surface degree must be >= 4") {}
};

struct EmptyFormError : std::invalid_argument {
  EmptyFormError() : std::invalid_argument("form is zero/empty") {}
};

inline const std::array<std::string, 4> kSurfaceVars = {"x0", "x1", "x2", "x3"};

struct SurfaceForm {
  MPoly<4> form;         // content 1, homogeneous
  int degree;            // >= 4
  std::array<MPoly<4>, 4> gradient;
};

inline SurfaceForm make_surface(MPoly<4> f) {
  if (f.empty()) throw EmptyFormError();
  if (!mp_homogeneous(f)) throw NotHomogeneousError();
  int d = mp_degree(f);
  if (d < 4) throw DegreeTooSmallError();
  f = mp_primitive(f);
  SurfaceForm s{std::move(f), d, {}};
  for (std::size_t i = 0; i < 4; ++i) s.gradient[i] = mp_derivative(s.form, i);
  return s;
}

inline SurfaceForm parse_surface(const std::string& text) {
  std::string stripped;
  for (char c : text)
    if (c != '\n' && c != '\r') stripped += c;
  bool blank = true;
  for (char c : stripped)
    if (c != ' ' && c != '\t') blank = false;
  if (blank) throw EmptyFormError();
  return make_surface(mp_parse<4>(stripped, kSurfaceVars));
}

inline std::string surface_to_string(const SurfaceForm& f) {
  return mp_to_string(f.form, kSurfaceVars);
}

/// Stable identifier for cache files: FNV-1a of the canonical printed form.
inline std::string surface_hash(const SurfaceForm& f) {
  std::uint64_t h = fnv1a64(surface_to_string(f));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline Int evaluate(const SurfaceForm& f, const PrimitivePoint& p) {
  return mp_eval(f.form, p.coords);
}

inline std::array<Int, 4> gradient_at(const SurfaceForm& f, const PrimitivePoint& p) {
  std::array<Int, 4> g;
  for (std::size_t i = 0; i < 4; ++i) g[i] = mp_eval(f.gradient[i], p.coords);
  return g;
}

enum class SmoothnessStatus { NoSingularityDetected, SingularPointFound };

struct SmoothnessEvidence {
  long prime;            // 0 marks the rational height-bound search
  long scope;            // points swept (mod p) or the height bound
  long mod_hits;         // simultaneous-vanishing candidates seen mod p
};

struct SmoothnessCertificate {
  SmoothnessStatus status;
  std::optional<PrimitivePoint> singular_point;  // exact, over Q
  std::vector<SmoothnessEvidence> evidence;
};

namespace detail_surface {

inline bool singular_at(const SurfaceForm& f, const PrimitivePoint& p) {
  if (evaluate(f, p) != 0) return false;
  for (const Int& g : gradient_at(f, p))
    if (g != 0) return false;
  return true;
}

inline long mp_eval_mod(const MPoly<4>& f, const std::array<long, 4>& x, long p) {
  long total = 0;
  for (const auto& [e, c] : f) {
    long t = static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
    for (std::size_t i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) t = (t * x[i]) % p;
    total = (total + t) % p;
  }
  return total;
}

}  // namespace detail_surface

/// Search for singular points: exactly over Q up to the height bound, and
/// mod p over all of P^3(F_p) for each given prime. Mod-p hits are evidence
/// only; only an exact rational hit yields SingularPointFound.
inline SmoothnessCertificate smoothness_check(const SurfaceForm& f,
                                              const std::vector<long>& primes,
                                              long rational_bound) {
  SmoothnessCertificate cert{SmoothnessStatus::NoSingularityDetected, std::nullopt, {}};
  // rational search over canonical representatives
  long B = rational_bound;
  if (B >= 1) {
    for (long a = 0; a <= B && !cert.singular_point; ++a)
      for (long b = (a ? -B : 0); b <= B && !cert.singular_point; ++b)
        for (long c = (a || b ? -B : 0); c <= B && !cert.singular_point; ++c)
          for (long d = (a || b || c ? -B : 1); d <= B; ++d) {
            long g = 0;
            for (long t : {a, b, c, d}) g = std::gcd(g, t < 0 ? -t : t);
            if (g != 1) continue;
            PrimitivePoint p = make_point(Vec4{Int(a), Int(b), Int(c), Int(d)});
            if (detail_surface::singular_at(f, p)) {
              cert.status = SmoothnessStatus::SingularPointFound;
              cert.singular_point = p;
              break;
            }
          }
    cert.evidence.push_back({0, B, cert.singular_point ? 1 : 0});
    if (cert.singular_point) return cert;
  }
  // F_p sweeps over canonical representatives of P^3(F_p): first nonzero
  // coordinate 1
  for (long p : primes) {
    long swept = 0, hits = 0;
    std::array<long, 4> x{};
    for (int lead = 0; lead < 4; ++lead) {
      x = {0, 0, 0, 0};
      x[lead] = 1;
      // vary coordinates after lead over 0..p-1
      long count = 1;
      for (int i = lead + 1; i < 4; ++i) count *= p;
      for (long n = 0; n < count; ++n) {
        long m = n;
        for (int i = lead + 1; i < 4; ++i) {
          x[i] = m % p;
          m /= p;
        }
        ++swept;
        if (detail_surface::mp_eval_mod(f.form, x, p) != 0) continue;
        bool allzero = true;
        for (std::size_t i = 0; i < 4 && allzero; ++i)
          if (detail_surface::mp_eval_mod(f.gradient[i], x, p) != 0) allzero = false;
        if (allzero) ++hits;
      }
    }
    cert.evidence.push_back({p, swept, hits});
  }
  return cert;
}

}  // namespace planesect
