#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tomophase/schemes.hpp"

using namespace tomophase;

TEST_CASE("all-zero slopes fail with a single node value") {
  const Scheme s{Axis::X, {{0, 0}, {0, 0}, {0, 0}}, std::nullopt, 3, 5};
  const StrongCTReport rep = check_strong_ct(s);
  CHECK(!rep.pass);
  CHECK(rep.worst_count == 1);
}

TEST_CASE("axis-degenerate slopes fail at (0, 1) but separate at (1, 0)") {
  const int n = 3, p = 5;
  Scheme s{Axis::X, {}, std::nullopt, n, p};
  for (int l = 0; l < n; ++l) s.slopes.push_back({2.0 * l / p, 0.0});
  CHECK(distinct_node_count(s, 0, 1) == 1);
  CHECK(distinct_node_count(s, 1, 0) == n);
  const StrongCTReport rep = check_strong_ct(s);
  CHECK(!rep.pass);
  CHECK(rep.worst_count == 1);
}

TEST_CASE("random schemes pass the distinct-nodes condition") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Scheme s = random_scheme(3, Axis::Z, seed);
    CHECK(check_strong_ct(s).pass);
    for (const auto& ab : s.slopes) {
      CHECK(std::abs(ab[0]) < 1.0);
      CHECK(std::abs(ab[1]) < 1.0);
    }
  }
  CHECK(random_scheme(3, Axis::Z, 4).slopes == random_scheme(3, Axis::Z, 4).slopes);
}

TEST_CASE("fewer than n slopes always fail") {
  Scheme s = random_scheme(4, Axis::Y, 1);
  s.slopes.pop_back();  // m = 3 < n = 4
  const StrongCTReport rep = check_strong_ct(s);
  CHECK(!rep.pass);
  CHECK(rep.worst_count <= 3);
}

TEST_CASE("checker is permutation invariant and monotone in slopes") {
  Scheme s = random_scheme(3, Axis::X, 9);
  const int before = check_strong_ct(s).worst_count;
  std::swap(s.slopes[0], s.slopes[2]);
  CHECK(check_strong_ct(s).worst_count == before);
  s.slopes.push_back({0.123, -0.456});
  CHECK(check_strong_ct(s).worst_count >= before);
}

TEST_CASE("rotation scheme slopes") {
  const Scheme s = rotation_scheme(1.0, 4);
  REQUIRE(s.slopes.size() == 4);
  CHECK(s.slopes[0][0] == doctest::Approx(1.0));
  CHECK(s.slopes[0][1] == doctest::Approx(0.0));
  CHECK(s.slopes[1][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.slopes[1][1] == doctest::Approx(1.0));
  CHECK(s.slopes[2][0] == doctest::Approx(-1.0));
  CHECK(s.slopes[3][1] == doctest::Approx(-1.0));
  for (const auto& ab : rotation_scheme(0.7, 5).slopes)
    CHECK(std::hypot(ab[0], ab[1]) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_THROWS_AS(rotation_scheme(0.0, 4), GammaOutOfRange);
  CHECK_THROWS_AS(rotation_scheme(1.5, 4), GammaOutOfRange);
}

TEST_CASE("tom2 scheme construction and validation") {
  const Scheme base = random_scheme(3, Axis::X, 1);
  const Scheme s = tom2_scheme(base, {1.0, 0.0});
  CHECK(s.extra.has_value());
  CHECK(s.directions().size() == 4);

  CHECK_THROWS_AS(tom2_scheme(base, {0.0, 0.0}), ZeroExtraDirection);
  const Scheme bad{Axis::X, {{0, 0}, {0, 0}, {0, 0}}, std::nullopt, 3, 5};
  CHECK_THROWS_AS(tom2_scheme(bad, {1.0, 0.0}), StrongCTFailure);
  Scheme wrong_m = base;
  wrong_m.slopes.push_back({0.1, 0.2});
  CHECK_THROWS_AS(tom2_scheme(wrong_m, {1.0, 0.0}), StrongCTFailure);
}

TEST_CASE("extra direction realization case split") {
  Scheme s = random_scheme(3, Axis::X, 2);

  s.extra = {{0.5, 1.0}};  // direction (0, 0.5, 1): z family, slope pair (0, 0.5)
  Direction d = realize_extra(s);
  CHECK(d.family == Axis::Z);
  CHECK(d.alpha == 0.0);
  CHECK(d.beta == doctest::Approx(0.5));

  s.extra = {{1.0, 0.5}};  // |a0/b0| > 1: y family with ratio b0/a0
  d = realize_extra(s);
  CHECK(d.family == Axis::Y);
  CHECK(d.beta == doctest::Approx(0.5));

  s.extra = {{1.0, 0.0}};  // b0 = 0: y family, axis-aligned
  d = realize_extra(s);
  CHECK(d.family == Axis::Y);
  CHECK(d.beta == doctest::Approx(0.0));

  s.family = Axis::Z;
  s.extra = {{0.5, 1.0}};  // direction (0.5, 1, 0): y family, slopes (0.5, 0)
  d = realize_extra(s);
  CHECK(d.family == Axis::Y);
  CHECK(d.alpha == doctest::Approx(0.5));
  CHECK(d.beta == 0.0);

  s.extra = {{1.0, 0.5}};  // x family, slopes (0.5, 0)
  d = realize_extra(s);
  CHECK(d.family == Axis::X);
  CHECK(d.alpha == doctest::Approx(0.5));

  s.family = Axis::Y;
  s.extra = {{0.5, 1.0}};  // direction (0.5, 0, 1): z family, slopes (0.5, 0)
  d = realize_extra(s);
  CHECK(d.family == Axis::Z);
  CHECK(d.alpha == doctest::Approx(0.5));

  Scheme none = random_scheme(2, Axis::X, 3);
  CHECK_THROWS_AS(realize_extra(none), ZeroExtraDirection);
}
