#include <catch2/catch_amalgamated.hpp>

#include "planesect/section.hpp"

using namespace planesect;

static Vec4 v4(long a, long b, long c, long d) { return Vec4{Int(a), Int(b), Int(c), Int(d)}; }

TEST_CASE("section_form fixtures") {
  auto F = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");

  SECTION("coordinate plane with the standard basis") {
    std::array<Vec4, 3> basis = {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(0, 0, 1, 0)};
    CHECK(section_form(F, basis) == parse_ternary("s^4 + t^4 - r^4"));
  }

  SECTION("plane (1,0,-1,0) with the example basis") {
    std::array<Vec4, 3> basis = {v4(1, 0, 1, 0), v4(0, 1, 0, 0), v4(0, 0, 0, 1)};
    CHECK(section_form(F, basis) == parse_ternary("t^4 - r^4"));
  }

  SECTION("degree is always exactly d") {
    auto plane = make_plane(v4(2, 3, -1, 5));
    CHECK(section_form(F, plane).degree == 4);
  }

  SECTION("plane contained in a reducible surface") {
    auto G = parse_surface("x0*x1^3 + x0*x2^3 + x0*x3^3");
    auto plane = make_plane(v4(1, 0, 0, 0));
    CHECK_THROWS_AS(section_form(G, plane), PlaneContainedInSurfaceError);
  }
}

TEST_CASE("classify_section fixtures") {
  auto F = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");

  SECTION("plane (0,0,0,1): one genus-3 component") {
    auto prof = classify_section(F, make_plane(v4(0, 0, 0, 1)));
    REQUIRE(prof.components.size() == 1);
    const auto& c = prof.components[0];
    CHECK(c.degree == 4);
    CHECK(c.multiplicity == 1);
    REQUIRE(c.genus_resolved);
    CHECK(c.genus == 3);
    CHECK(c.classification == SectionClass::HigherGenus);
  }

  SECTION("plane (1,0,-1,0): two lines and a conic") {
    auto prof = classify_section(F, make_plane(v4(1, 0, -1, 0)));
    REQUIRE(prof.components.size() == 3);
    int lines = 0, conics = 0;
    for (const auto& c : prof.components) {
      if (c.classification == SectionClass::Line) {
        ++lines;
        CHECK(c.degree == 1);
      }
      if (c.classification == SectionClass::RationalOrGenusZero) {
        ++conics;
        CHECK(c.degree == 2);
        CHECK(c.genus == 0);
      }
    }
    CHECK(lines == 2);
    CHECK(conics == 1);
    int total = 0;
    for (const auto& c : prof.components) total += c.degree * c.multiplicity;
    CHECK(total == 4);
  }
}

TEST_CASE("section_point_count attribution") {
  auto F = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto pts = enumerate_points(F, 1);
  auto plane = make_plane(v4(1, 0, -1, 0));
  std::array<Vec4, 3> basis = {v4(1, 0, 1, 0), v4(0, 1, 0, 0), v4(0, 0, 0, 1)};
  auto prof = classify_section(F, plane, basis);
  auto counts = section_point_count(prof, pts);

  // the seven height-1 points incident to the plane
  CHECK(counts.total == 7);
  long attributed = 0;
  for (long c : counts.per_component) attributed += c;
  CHECK(attributed >= counts.total);  // every incident point is on a component

  // (1,1,1,1) has plane coordinates (1,1,1) and lies exactly on t - r
  std::size_t tr = prof.components.size();
  for (std::size_t k = 0; k < prof.components.size(); ++k)
    if (prof.components[k].form == parse_ternary("t - r")) tr = k;
  REQUIRE(tr < prof.components.size());
  PointSet one{pts.surface_hash, 1, {make_point(v4(1, 1, 1, 1))}};
  auto c1 = section_point_count(prof, one);
  CHECK(c1.total == 1);
  CHECK(c1.per_component[tr] == 1);

  PointSet empty{pts.surface_hash, 1, {}};
  auto c0 = section_point_count(prof, empty);
  CHECK(c0.total == 0);
  for (long c : c0.per_component) CHECK(c == 0);
}

TEST_CASE("basis independence of classification and counts") {
  auto F = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto pts = enumerate_points(F, 2);
  SplitMix64 rng(99);
  std::vector<PrimitivePlane> planes;
  planes.push_back(make_plane(v4(0, 0, 0, 1)));
  planes.push_back(make_plane(v4(1, 0, -1, 0)));
  while (planes.size() < 10) {
    Vec4 n;
    bool nz = false;
    for (auto& c : n) {
      c = Int(static_cast<long>(rng.below(9)) - 4);
      if (c != 0) nz = true;
    }
    if (!nz) continue;
    auto p = make_plane(n);
    if (std::find(planes.begin(), planes.end(), p) == planes.end()) planes.push_back(p);
  }

  for (const auto& plane : planes) {
    auto basis = plane_kernel_basis(plane);
    auto ref = classify_section(F, plane, basis);
    auto ref_counts = section_point_count(ref, pts);

    // random unimodular change of basis via elementary moves
    auto tb = basis;
    for (int step = 0; step < 12; ++step) {
      std::size_t i = rng.below(3), j = rng.below(3);
      if (i == j) {
        for (auto& c : tb[i]) c = -c;
        continue;
      }
      long k = static_cast<long>(rng.below(5)) - 2;
      for (int r = 0; r < 4; ++r) tb[i][r] += Int(k) * tb[j][r];
    }
    auto alt = classify_section(F, plane, tb);
    auto alt_counts = section_point_count(alt, pts);

    auto key = [](const SectionProfile& p) {
      std::vector<std::tuple<int, int, bool, long, int>> k;
      for (const auto& c : p.components)
        k.emplace_back(c.degree, c.multiplicity, c.genus_resolved, c.genus,
                       static_cast<int>(c.classification));
      std::sort(k.begin(), k.end());
      return k;
    };
    CHECK(key(ref) == key(alt));
    CHECK(ref_counts.total == alt_counts.total);
    auto sorted = [](std::vector<long> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    CHECK(sorted(ref_counts.per_component) == sorted(alt_counts.per_component));
  }
}

TEST_CASE("degree bookkeeping across sampled planes") {
  std::vector<SurfaceForm> fixtures = {
      parse_surface("x0^4 + x1^4 - x2^4 - x3^4"),
      parse_surface("x0^5 + x1^5 + x2^5 + x3^5"),
  };
  SplitMix64 rng(5);
  for (const auto& F : fixtures) {
    for (int n = 0; n < 20; ++n) {
      Vec4 v;
      bool nz = false;
      for (auto& c : v) {
        c = Int(static_cast<long>(rng.below(11)) - 5);
        if (c != 0) nz = true;
      }
      if (!nz) v[2] = 1;
      auto prof = classify_section(F, make_plane(v));
      int total = 0;
      for (const auto& c : prof.components) total += c.degree * c.multiplicity;
      CHECK(total == F.degree);
      for (const auto& c : prof.components) {
        if (!c.genus_resolved) continue;
        CHECK(c.genus >= 0);
        CHECK(c.genus <= static_cast<long>(c.degree - 1) * (c.degree - 2) / 2);
      }
    }
  }
}
