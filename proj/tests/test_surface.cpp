#include <catch2/catch_amalgamated.hpp>

#include "planesect/surface.hpp"

using namespace planesect;

static Vec4 v4(long a, long b, long c, long d) { return Vec4{Int(a), Int(b), Int(c), Int(d)}; }

TEST_CASE("parse_surface basics") {
  auto f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  CHECK(f.degree == 4);
  CHECK(f.form.size() == 4);

  CHECK_THROWS_AS(parse_surface("x0^4 + x1^3"), NotHomogeneousError);
  CHECK_THROWS_AS(parse_surface("x0^3 + x1^3"), DegreeTooSmallError);
  CHECK_THROWS_AS(parse_surface("   "), EmptyFormError);

  // content reduction
  auto g = parse_surface("2*x0^5 + 2*x1^5 + 2*x2^5 + 2*x3^5");
  CHECK(mp_content(g.form) == 1);
  for (const auto& [e, c] : g.form) CHECK(c == 1);

  // implicit *, repeated variables, multi-digit coefficients
  auto h = parse_surface("3x0^2 x1^2 - 12 x2 x3 x2 x3");
  CHECK(h.degree == 4);
  CHECK(mp_content(h.form) == 1);  // content 3 removed
  CHECK(surface_to_string(h) == "x0^2*x1^2 - 4*x2^2*x3^2");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_surface("x0^4 + + x1^4"), FormParseError);
  CHECK_THROWS_AS(parse_surface("x0^4 + y^4"), FormParseError);
  CHECK_THROWS_AS(parse_surface("* x0^4"), FormParseError);
  CHECK_THROWS_AS(parse_surface("x0^"), FormParseError);
  // exact cancellation leaves the zero form
  CHECK_THROWS_AS(parse_surface("x0^4 - x0^4"), EmptyFormError);
}

TEST_CASE("evaluate and gradient") {
  auto f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  CHECK(evaluate(f, make_point(v4(59, 158, 133, 134))) == 0);
  CHECK(evaluate(f, make_point(v4(1, 0, 0, 0))) == 1);

  auto g = gradient_at(f, make_point(v4(1, 1, 1, 1)));
  CHECK(g == std::array<Int, 4>{Int(4), Int(4), Int(-4), Int(-4)});

  // both sides of the Euler identity at the Euler point: 59^4+158^4
  Int lhs = pow_int(Int(59), 4) + pow_int(Int(158), 4);
  CHECK(lhs == Int("635318657"));
  CHECK(lhs == pow_int(Int(133), 4) + pow_int(Int(134), 4));
}

TEST_CASE("euler identity at random points") {
  std::vector<SurfaceForm> forms = {
      parse_surface("x0^4 + x1^4 - x2^4 - x3^4"),
      parse_surface("x0^5 + x1^5 + x2^5 + x3^5"),
      parse_surface("x0^4 + 2*x0*x1^3 - 7*x2^2*x3^2 + x1*x2*x3^2 - 3*x3^4"),
  };
  SplitMix64 rng(17);
  for (const auto& f : forms) {
    for (int i = 0; i < 100; ++i) {
      Vec4 v;
      bool nz = false;
      for (auto& c : v) {
        c = Int(static_cast<long>(rng.below(201)) - 100);
        if (c != 0) nz = true;
      }
      if (!nz) v[0] = 1;
      auto p = make_point(v);
      Int sum = 0;
      auto g = gradient_at(f, p);
      for (int k = 0; k < 4; ++k) sum += p.coords[k] * g[k];
      CHECK(sum == Int(f.degree) * evaluate(f, p));
    }
  }
}

TEST_CASE("print/parse round trip") {
  std::vector<std::string> inputs = {
      "x0^4 + x1^4 - x2^4 - x3^4",
      "2*x0^5 + 2*x1^5 + 2*x2^5 + 2*x3^5",
      "x0^2*x1^2 - x2^2*x3^2 + x0^4",
      "x0^4 + 2*x0*x1^3 - 7*x2^2*x3^2 + x1*x2*x3^2 - 3*x3^4",
      "5*x0^4*x1 - x1^5 + x2^4*x3",
  };
  for (const auto& s : inputs) {
    auto f = parse_surface(s);
    auto g = parse_surface(surface_to_string(f));
    CHECK(f.form == g.form);
    CHECK(surface_to_string(f) == surface_to_string(g));
  }
}

TEST_CASE("smoothness check fixtures") {
  auto fermat4 = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto cert = smoothness_check(fermat4, {5, 7, 11}, 10);
  CHECK(cert.status == SmoothnessStatus::NoSingularityDetected);
  CHECK_FALSE(cert.singular_point.has_value());
  // evidence: one rational record + one per prime
  REQUIRE(cert.evidence.size() == 4);
  CHECK(cert.evidence[0].prime == 0);
  CHECK(cert.evidence[1].prime == 5);
  // P^3(F_p) has p^3 + p^2 + p + 1 points
  CHECK(cert.evidence[1].scope == 125 + 25 + 5 + 1);

  auto quintic = parse_surface("x0^5 + x1^5 + x2^5 + x3^5");
  CHECK(smoothness_check(quintic, {7, 11}, 5).status ==
        SmoothnessStatus::NoSingularityDetected);

  auto singular = parse_surface("x0^2*x1^2 - x2^2*x3^2 + x0^4");
  auto bad = smoothness_check(singular, {5, 7}, 3);
  REQUIRE(bad.status == SmoothnessStatus::SingularPointFound);
  REQUIRE(bad.singular_point.has_value());
  // independently re-verifiable
  CHECK(evaluate(singular, *bad.singular_point) == 0);
  for (const Int& g : gradient_at(singular, *bad.singular_point)) CHECK(g == 0);
  // (0,1,0,0) is singular too; verify directly
  auto q = make_point(v4(0, 1, 0, 0));
  CHECK(evaluate(singular, q) == 0);
  for (const Int& g : gradient_at(singular, q)) CHECK(g == 0);
}

TEST_CASE("surface hash is stable across formatting") {
  auto a = parse_surface("x0^4 + x1^4 - x2^4 - x3^4");
  auto b = parse_surface("x1^4+x0^4-x3^4-x2^4");
  CHECK(surface_hash(a) == surface_hash(b));
  auto c = parse_surface("x0^4 + x1^4 - x2^4 + x3^4");
  CHECK(surface_hash(a) != surface_hash(c));
}
