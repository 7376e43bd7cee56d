#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "planesect/factor_ternary.hpp"

using namespace planesect;

namespace {

MPoly<3> product_of(const std::vector<std::pair<TernaryForm, int>>& facs) {
  MPoly<3> p;
  p.emplace(Expo<3>{}, Int(1));
  for (const auto& [f, m] : facs)
    for (int k = 0; k < m; ++k) p = mp_mul(p, f.form);
  return p;
}

}  // namespace

TEST_CASE("make_ternary canonicalization and errors") {
  auto f = parse_ternary("2*t^2 + 2*r^2");
  CHECK(f.degree == 2);
  CHECK(ternary_to_string(f) == "t^2 + r^2");

  auto neg = parse_ternary("-t + r");
  CHECK(ternary_to_string(neg) == "t - r");  // sign fixed on the lex-largest term

  CHECK_THROWS_AS(parse_ternary("s^2 + t"), NotHomogeneousError);
  CHECK_THROWS_AS(parse_ternary("s - s"), EmptyFormError);
}

TEST_CASE("fixture factorizations") {
  SECTION("t^4 - r^4 splits as two lines and a conic") {
    auto facs = factor_ternary(parse_ternary("t^4 - r^4"));
    REQUIRE(facs.size() == 3);
    CHECK(facs[0].first == parse_ternary("t - r"));
    CHECK(facs[0].second == 1);
    CHECK(facs[1].first == parse_ternary("t + r"));
    CHECK(facs[1].second == 1);
    CHECK(facs[2].first == parse_ternary("t^2 + r^2"));
    CHECK(facs[2].second == 1);
  }

  SECTION("s^4 + t^4 - r^4 is irreducible") {
    auto g = parse_ternary("s^4 + t^4 - r^4");
    auto facs = factor_ternary(g);
    REQUIRE(facs.size() == 1);
    CHECK(facs[0].first == g);
    CHECK(facs[0].second == 1);
  }

  SECTION("perfect square (s+t+r)^2") {
    auto facs = factor_ternary(parse_ternary("s^2 + t^2 + r^2 + 2st + 2sr + 2tr"));
    REQUIRE(facs.size() == 1);
    CHECK(facs[0].first == parse_ternary("s + t + r"));
    CHECK(facs[0].second == 2);
  }

  SECTION("cuspidal quintic t^2 r^3 - s^5 is irreducible") {
    auto g = parse_ternary("t^2 r^3 - s^5");
    auto facs = factor_ternary(g);
    REQUIRE(facs.size() == 1);
    CHECK(facs[0].first == g);
  }

  SECTION("multiplicities (t-r)^2 (t+r)^3") {
    auto g = make_ternary(mp_mul(
        mp_mul(parse_ternary("t - r").form, parse_ternary("t - r").form),
        mp_mul(parse_ternary("t + r").form,
               mp_mul(parse_ternary("t + r").form, parse_ternary("t + r").form))));
    auto facs = factor_ternary(g);
    REQUIRE(facs.size() == 2);
    CHECK(facs[0].first == parse_ternary("t - r"));
    CHECK(facs[0].second == 2);
    CHECK(facs[1].first == parse_ternary("t + r"));
    CHECK(facs[1].second == 3);
  }

  SECTION("degree > 5 refused") {
    CHECK_THROWS_AS(factor_ternary(parse_ternary("s^6 + t^6 + r^6")), UnsupportedDegreeError);
  }
}

TEST_CASE("randomized round trips") {
  // pool of known irreducibles (linears are always irreducible; the listed
  // conics/quartic have no rational linear factor by inspection/fixture)
  std::vector<TernaryForm> conic_pool = {
      parse_ternary("t^2 + r^2"),
      parse_ternary("s^2 + t^2 + r^2"),
      parse_ternary("s^2 + t r"),
  };
  TernaryForm quartic = parse_ternary("s^4 + t^4 - r^4");

  SplitMix64 rng(2024);
  auto random_linear = [&]() {
    while (true) {
      MPoly<3> f;
      for (int i = 0; i < 3; ++i) {
        Expo<3> e{};
        e[i] = 1;
        mp_add_term(f, e, Int(static_cast<long>(rng.below(7)) - 3));
      }
      if (!f.empty()) return make_ternary(std::move(f));
    }
  };

  for (int iter = 0; iter < 100; ++iter) {
    // assemble expected multiset of total degree <= 5
    std::map<TernaryForm, int> expected;
    int degree_left = 5;
    if (iter % 10 == 9) {
      expected[quartic] += 1;
      degree_left -= 4;
    }
    while (degree_left > 0) {
      if (degree_left >= 2 && rng.below(2) == 0) {
        expected[conic_pool[rng.below(conic_pool.size())]] += 1;
        degree_left -= 2;
      } else {
        expected[random_linear()] += 1;
        degree_left -= 1;
      }
      if (rng.below(3) == 0) break;  // sometimes stop below the cap
    }
    if (expected.empty()) expected[random_linear()] += 1;

    MPoly<3> prod;
    prod.emplace(Expo<3>{}, Int(1));
    for (const auto& [f, m] : expected)
      for (int k = 0; k < m; ++k) prod = mp_mul(prod, f.form);
    auto g = make_ternary(prod);

    auto facs = factor_ternary(g);
    std::map<TernaryForm, int> got(facs.begin(), facs.end());
    CHECK(got == expected);
    CHECK(product_of(facs) == g.form);
  }
}

TEST_CASE("product identity and degree bookkeeping on dense random forms") {
  SplitMix64 rng(7);
  for (int iter = 0; iter < 30; ++iter) {
    int d = 2 + static_cast<int>(rng.below(4));
    MPoly<3> f;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) {
        long c = static_cast<long>(rng.below(11)) - 5;
        if (c != 0) mp_add_term(f, Expo<3>{i, j, d - i - j}, Int(c));
      }
    if (f.empty()) continue;
    auto g = make_ternary(std::move(f));
    auto facs = factor_ternary(g);
    int total = 0;
    for (const auto& [c, m] : facs) total += c.degree * m;
    CHECK(total == g.degree);
    CHECK(product_of(facs) == g.form);
    // each factor refactors to itself
    for (const auto& [c, m] : facs) {
      auto again = factor_ternary(c);
      REQUIRE(again.size() == 1);
      CHECK(again[0].first == c);
      CHECK(again[0].second == 1);
    }
  }
}
