#pragma once

// Plane sections of the surface: restrict F to a plane via its kernel-lattice
// basis, factor the resulting ternary form, compute per-component genus, and
// classify components by the (line / genus 0 / genus 1 / genus >= 2) cases.

#include <array>
#include <stdexcept>
#include <vector>

#include "planesect/enumerate.hpp"
#include "planesect/genus.hpp"
#include "planesect/lattice.hpp"
#include "planesect/surface.hpp"

namespace planesect {

struct PlaneContainedInSurfaceError : std::invalid_argument {
  PlaneContainedInSurfaceError()
      : std::invalid_argument("plane section vanished: surface is not smooth/irreducible") {}
};

enum class SectionClass { Line, RationalOrGenusZero, GenusOne, HigherGenus, Unresolved };

inline const char* section_class_name(SectionClass c) {
  switch (c) {
    case SectionClass::Line: return "Line";
    case SectionClass::RationalOrGenusZero: return "RationalOrGenusZero";
    case SectionClass::GenusOne: return "GenusOne";
    case SectionClass::HigherGenus: return "HigherGenus";
    default: return "Unresolved";
  }
}

struct CurveComponent {
  TernaryForm form;
  int degree;        // e
  int multiplicity;  // >= 1
  bool genus_resolved;
  long genus;  // valid when genus_resolved
  std::vector<SingularBranch> singular_summary;
  SectionClass classification;
};

struct SectionProfile {
  PrimitivePlane plane;
  std::array<Vec4, 3> basis;  // kernel basis used for plane coordinates
  TernaryForm section;
  std::vector<CurveComponent> components;
};

/// Lattice basis of {x : normal . x = 0}.
inline std::array<Vec4, 3> plane_kernel_basis(const PrimitivePlane& plane) {
  return orthogonal_lattice_basis(make_point(plane.normal)).vectors;
}

/// Restriction of F to the plane: substitute x = s*u + t*v + r*w.
inline TernaryForm section_form(const SurfaceForm& F, const std::array<Vec4, 3>& basis) {
  std::array<std::array<Int, 3>, 4> coeffs;
  for (std::size_t i = 0; i < 4; ++i)
    coeffs[i] = {basis[0][i], basis[1][i], basis[2][i]};
  MPoly<3> g = mp_substitute<3>(F.form, coeffs);
  if (g.empty()) throw PlaneContainedInSurfaceError();
  TernaryForm tern = make_ternary(std::move(g));
  if (tern.degree != F.degree) throw std::logic_error("section degree mismatch");
  return tern;
}

inline TernaryForm section_form(const SurfaceForm& F, const PrimitivePlane& plane) {
  return section_form(F, plane_kernel_basis(plane));
}

inline SectionProfile classify_section(const SurfaceForm& F, const PrimitivePlane& plane,
                                       const std::array<Vec4, 3>& basis, int depth_cap = 12) {
  SectionProfile prof{plane, basis, section_form(F, basis), {}};
  for (auto& [c, m] : factor_ternary(prof.section)) {
    CurveComponent comp{c, c.degree, m, true, 0, {}, SectionClass::Line};
    if (c.degree == 1) {
      comp.classification = SectionClass::Line;
    } else {
      GenusResult g = genus_of(c, depth_cap);
      comp.genus_resolved = g.resolved;
      comp.genus = g.genus;
      comp.singular_summary = std::move(g.summary);
      if (!g.resolved)
        comp.classification = SectionClass::Unresolved;
      else if (g.genus >= 2)
        comp.classification = SectionClass::HigherGenus;
      else if (g.genus == 1)
        comp.classification = SectionClass::GenusOne;
      else
        comp.classification = SectionClass::RationalOrGenusZero;
    }
    prof.components.push_back(std::move(comp));
  }
  return prof;
}

inline SectionProfile classify_section(const SurfaceForm& F, const PrimitivePlane& plane,
                                       int depth_cap = 12) {
  return classify_section(F, plane, plane_kernel_basis(plane), depth_cap);
}

struct SectionCounts {
  std::vector<long> per_component;
  long total;  // enumerated points incident to the plane
};

/// Attribute every enumerated point on the plane to the components its plane
/// coordinates vanish on.
inline SectionCounts section_point_count(const SectionProfile& prof, const PointSet& pts) {
  SectionCounts counts{std::vector<long>(prof.components.size(), 0), 0};
  // three independent rows of the 4x3 basis matrix
  const auto& b = prof.basis;
  std::array<int, 3> rows{-1, -1, -1};
  Int det;
  for (int r0 = 0; r0 < 4 && rows[0] < 0; ++r0)
    for (int r1 = r0 + 1; r1 < 4 && rows[0] < 0; ++r1)
      for (int r2 = r1 + 1; r2 < 4 && rows[0] < 0; ++r2) {
        Int d = b[0][r0] * (b[1][r1] * b[2][r2] - b[1][r2] * b[2][r1]) -
                b[1][r0] * (b[0][r1] * b[2][r2] - b[0][r2] * b[2][r1]) +
                b[2][r0] * (b[0][r1] * b[1][r2] - b[0][r2] * b[1][r1]);
        if (d != 0) {
          rows = {r0, r1, r2};
          det = d;
        }
      }
  if (rows[0] < 0) throw std::logic_error("degenerate plane basis");

  auto minor3 = [&](const Vec4& c0, const Vec4& c1, const Vec4& c2) -> Int {
    return c0[rows[0]] * (c1[rows[1]] * c2[rows[2]] - c1[rows[2]] * c2[rows[1]]) -
           c1[rows[0]] * (c0[rows[1]] * c2[rows[2]] - c0[rows[2]] * c2[rows[1]]) +
           c2[rows[0]] * (c0[rows[1]] * c1[rows[2]] - c0[rows[2]] * c1[rows[1]]);
  };

  for (const auto& p : pts.points) {
    if (dot(prof.plane.normal, p.coords) != 0) continue;
    // Cramer: coordinates scaled by det are integers; the form is homogeneous
    // so the scaling is irrelevant
    std::array<Int, 3> stc = {minor3(p.coords, b[1], b[2]), minor3(b[0], p.coords, b[2]),
                              minor3(b[0], b[1], p.coords)};
    // defensive: verify the full 4-row system
    for (int i = 0; i < 4; ++i) {
      Int lhs = stc[0] * b[0][i] + stc[1] * b[1][i] + stc[2] * b[2][i];
      if (lhs != det * p.coords[i]) throw std::logic_error("plane coordinate solve failed");
    }
    ++counts.total;
    for (std::size_t k = 0; k < prof.components.size(); ++k)
      if (mp_eval(prof.components[k].form.form, stc) == 0) ++counts.per_component[k];
  }
  return counts;
}

}  // namespace planesect
