#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "planesect/enumerate.hpp"

using namespace planesect;

static Vec4 v4(long a, long b, long c, long d) { return Vec4{Int(a), Int(b), Int(c), Int(d)}; }

namespace {

// Independent oracle: every tuple in the box, canonicalized and checked.
std::vector<PrimitivePoint> oracle_points(const SurfaceForm& f, long B) {
  std::set<Vec4> seen;
  std::vector<PrimitivePoint> out;
  for (long a = -B; a <= B; ++a)
    for (long b = -B; b <= B; ++b)
      for (long c = -B; c <= B; ++c)
        for (long d = -B; d <= B; ++d) {
          Vec4 v = v4(a, b, c, d);
          if (!canonicalize(v)) continue;
          if (max_norm(v) > B) continue;
          if (seen.count(v)) continue;
          auto p = make_point(v);
          if (evaluate(f, p) != 0) continue;
          seen.insert(v);
          out.push_back(p);
        }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("fixture counts at B = 1") {
  auto quartic = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  CHECK(enumerate_points(quartic, 1).points.size() == 16);

  auto quintic = parse_surface("x0^5 + x1^5 + x2^5 + x3^5");
  CHECK(enumerate_points(quintic, 1).points.size() == 9);

  CHECK_THROWS_AS(enumerate_points(quartic, 0), InvalidBoundError);
}

TEST_CASE("oracle equivalence and sieve soundness for B <= 8") {
  std::vector<SurfaceForm> fixtures = {
      parse_surface("x0^4 + x1^4 - x2^4 - x3^4"),
      parse_surface("x0^5 + x1^5 + x2^5 + x3^5"),
  };
  for (const auto& f : fixtures) {
    for (long B : {1L, 2L, 3L, 5L, 8L}) {
      auto sieved = enumerate_points(f, B);
      auto plain = enumerate_points(f, B, {}, false);
      auto oracle = oracle_points(f, B);
      REQUIRE(sieved.points.size() == oracle.size());
      CHECK(sieved.points == oracle);
      CHECK(plain.points == oracle);
    }
  }
}

TEST_CASE("monotonicity and threaded determinism") {
  auto f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto p4 = enumerate_points(f, 4);
  auto p8 = enumerate_points(f, 8);
  for (const auto& p : p4.points)
    CHECK(std::binary_search(p8.points.begin(), p8.points.end(), p));

  auto threaded = enumerate_points(f, 8, {16, 9, 5, 7, 11, 13}, true, 3);
  CHECK(threaded.points == p8.points);

  // incremental region: heights in (4, 8] only
  auto upper = enumerate_points(f, 8, {16, 9, 5, 7, 11, 13}, true, 1, 4);
  std::vector<PrimitivePoint> merged = p4.points;
  merged.insert(merged.end(), upper.points.begin(), upper.points.end());
  std::sort(merged.begin(), merged.end());
  CHECK(merged == p8.points);
  for (const auto& p : upper.points) CHECK(p.height > 4);
}

TEST_CASE("lines on the fermat-type quartic") {
  auto f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto pts = enumerate_points(f, 2);
  auto lines = find_lines(f, pts, 2);
  REQUIRE(lines.size() == 8);
  for (const auto& l : lines) {
    CHECK(line_in_surface(f, l.p, l.q));
    // Pluecker quadric: p01 p23 - p02 p13 + p03 p12 = 0
    const auto& w = l.plucker;
    CHECK(w[0] * w[5] - w[1] * w[4] + w[2] * w[3] == 0);
  }
  // all 16 height-1 points lie on the 8 lines
  auto b1 = enumerate_points(f, 1);
  auto stripped = strip_lines(b1, lines);
  CHECK(b1.points.size() == 16);
  CHECK(stripped.points.empty());

  // the Euler point lies on none of them
  auto euler = make_point(v4(59, 158, 133, 134));
  for (const auto& l : lines) CHECK_FALSE(point_on_line(euler, l));

  // fewer than 2 points -> no lines
  PointSet tiny{pts.surface_hash, 2, {pts.points.front()}};
  CHECK(find_lines(f, tiny, 2).empty());
}

TEST_CASE("line on the fermat quintic") {
  auto f = parse_surface("x0^5 + x1^5 + x2^5 + x3^5");
  auto pts = enumerate_points(f, 1);
  auto lines = find_lines(f, pts, 1);
  auto target = plucker_of(make_point(v4(1, -1, 0, 0)), make_point(v4(0, 0, 1, -1)));
  bool found = false;
  for (const auto& l : lines)
    if (l.plucker == target) found = true;
  CHECK(found);
}

TEST_CASE("strip with empty line set is identity") {
  auto f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto pts = enumerate_points(f, 2);
  CHECK(strip_lines(pts, {}).points == pts.points);
}

TEST_CASE("point cache round trip") {
  auto f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto pts = enumerate_points(f, 3);
  auto dir = std::filesystem::temp_directory_path() / "planesect-test-cache";
  std::filesystem::create_directories(dir);
  auto path = (dir / "pts.txt").string();
  write_point_cache(path, pts);

  auto back = read_point_cache(path);
  REQUIRE(back.has_value());
  CHECK(back->surface_hash == pts.surface_hash);
  CHECK(back->bound == 3);
  CHECK(back->points == pts.points);

  // header line shape
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "planesect-points v1 " + surface_hash(f) + " B=3");

  CHECK_FALSE(read_point_cache((dir / "missing.txt").string()).has_value());
  std::filesystem::remove_all(dir);
}
