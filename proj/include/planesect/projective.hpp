#pragma once

// Exact arithmetic for points and linear subspaces of P^3 over Q: canonical
// primitive representatives, max-norm heights, and the wedge machinery for
// subspace (Grassmannian) heights.

#include <algorithm>
#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "planesect/integers.hpp"

namespace planesect {

struct AllZeroError : std::invalid_argument {
  AllZeroError() : std::invalid_argument("zero tuple is not a projective point") {}
};

struct DependentBasisError : std::invalid_argument {
  DependentBasisError() : std::invalid_argument("basis vectors are linearly dependent") {}
};

/// A point of P^3(Q) in canonical primitive-integer form: gcd 1, first
/// nonzero coordinate positive. Height = max |coord|.
struct PrimitivePoint {
  Vec4 coords;
  Int height;

  friend bool operator==(const PrimitivePoint& a, const PrimitivePoint& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const PrimitivePoint& a, const PrimitivePoint& b) {
    return a.coords < b.coords;
  }
};

/// A plane of (P^3)^dual as a canonical primitive integer normal vector.
struct PrimitivePlane {
  Vec4 normal;
  Int height;

  friend bool operator==(const PrimitivePlane& a, const PrimitivePlane& b) {
    return a.normal == b.normal;
  }
  friend bool operator<(const PrimitivePlane& a, const PrimitivePlane& b) {
    return a.normal < b.normal;
  }
};

/// A basis of a k-dimensional subspace of Q^4, k in {1,2,3}.
struct SubspaceBasis {
  std::vector<Vec4> vectors;
};

inline PrimitivePoint make_point(Vec4 v) {
  if (!canonicalize(v)) throw AllZeroError();
  Int h = max_norm(v);
  return PrimitivePoint{std::move(v), std::move(h)};
}

inline PrimitivePlane make_plane(Vec4 v) {
  if (!canonicalize(v)) throw AllZeroError();
  Int h = max_norm(v);
  return PrimitivePlane{std::move(v), std::move(h)};
}

/// Canonical representative of the projective point with rational coordinates.
inline PrimitivePoint normalize_point(const std::array<Rat, 4>& raw) {
  Int l = 1;
  for (const auto& r : raw) l = lcm_int(l, r.get_den());
  Vec4 v;
  for (std::size_t i = 0; i < 4; ++i) {
    Rat s = raw[i] * Rat(l);
    s.canonicalize();
    v[i] = s.get_num();
  }
  return make_point(std::move(v));
}

inline const Int& height_point(const PrimitivePoint& p) { return p.height; }

/// The four 3x3 minors of the 3x4 matrix whose rows are the basis vectors,
/// ordered by column index triple: (012, 013, 023, 123).
inline Vec4 wedge3(const SubspaceBasis& b) {
  if (b.vectors.size() != 3) throw std::invalid_argument("wedge3 needs k = 3");
  const auto& m = b.vectors;
  auto minor = [&](int c0, int c1, int c2) -> Int {
    return m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1]) -
           m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0]) +
           m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0]);
  };
  Vec4 w{minor(0, 1, 2), minor(0, 1, 3), minor(0, 2, 3), minor(1, 2, 3)};
  if (w[0] == 0 && w[1] == 0 && w[2] == 0 && w[3] == 0) throw DependentBasisError();
  return w;
}

namespace detail {

// Wedge coordinates of a k-basis as the k x k minors of the k x 4 matrix,
// minor index sets in lexicographic order. C(4,k) entries.
inline std::vector<Int> wedge_coords(const SubspaceBasis& b) {
  const std::size_t k = b.vectors.size();
  if (k < 1 || k > 3) throw std::invalid_argument("subspace dimension must be 1..3");
  const auto& m = b.vectors;
  std::vector<Int> out;
  if (k == 1) {
    out.assign(m[0].begin(), m[0].end());
  } else if (k == 2) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) out.push_back(m[0][i] * m[1][j] - m[0][j] * m[1][i]);
  } else {
    Vec4 w = wedge3(b);
    out.assign(w.begin(), w.end());
  }
  return out;
}

}  // namespace detail

/// Height of the subspace spanned by the basis: max norm of the primitive
/// wedge-coordinate vector. Basis-independent.
inline Int subspace_height(const SubspaceBasis& b) {
  std::vector<Int> w = detail::wedge_coords(b);
  Int g = content_of(w);
  if (g == 0) throw DependentBasisError();
  Int h = 0;
  for (const auto& c : w) {
    Int a = abs_int(c) / g;
    if (a > h) h = a;
  }
  return h;
}

/// Primitive normal of the hyperplane spanned by a k = 3 basis. Duality sign
/// convention: normal_i = (-1)^i * minor omitting column i, i.e.
/// (+M123, -M023, +M013, -M012), then sign-canonicalized.
inline PrimitivePlane dual_normal(const SubspaceBasis& b) {
  Vec4 w = wedge3(b);
  Vec4 n{w[3], -w[2], w[1], -w[0]};
  return make_plane(std::move(n));
}

inline std::string to_string(const Vec4& v) {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) s += ' ';
    s += v[i].get_str();
  }
  return s;
}

}  // namespace planesect
