#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tomophase/core.hpp"

using namespace tomophase;

TEST_CASE("centered range endpoints and storage bijection") {
  const CenteredRange even{4};
  CHECK(even.lo() == -2);
  CHECK(even.hi() == 1);
  const CenteredRange odd{5};
  CHECK(odd.lo() == -2);
  CHECK(odd.hi() == 2);

  for (int n : {1, 2, 3, 4, 7, 8}) {
    const CenteredRange r{n};
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (int i = r.lo(); i <= r.hi(); ++i) {
      const int s = r.to_storage(i);
      REQUIRE(s >= 0);
      REQUIRE(s < n);
      CHECK(!hit[static_cast<std::size_t>(s)]);
      hit[static_cast<std::size_t>(s)] = true;
      CHECK(r.from_storage(s) == i);
    }
  }
}

TEST_CASE("dirichlet kernel point values") {
  CHECK(dirichlet_kernel(5, 0.0) == 1.0);
  CHECK(std::abs(dirichlet_kernel(5, 2.0)) < 1e-12);
  CHECK(dirichlet_kernel(5, 2.5) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(dirichlet_kernel(5, 5.0) == 1.0);
  CHECK(dirichlet_kernel(5, -10.0) == 1.0);
}

TEST_CASE("dirichlet kernel is the identity matrix on the integer grid") {
  for (int p : {3, 5, 7, 11}) {
    const CenteredRange r{p};
    for (int i = r.lo(); i <= r.hi(); ++i)
      for (int j = r.lo(); j <= r.hi(); ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        CHECK(std::abs(dirichlet_kernel(p, i - j) - expected) < 1e-12);
      }
  }
}

TEST_CASE("dirichlet kernel periodicity for odd p") {
  Rng rng(11);
  for (int p : {3, 5, 9}) {
    for (int trial = 0; trial < 50; ++trial) {
      const double t = rng.uniform(-3.0 * p, 3.0 * p);
      CHECK(std::abs(dirichlet_kernel(p, t + p) - dirichlet_kernel(p, t)) < 1e-12);
    }
  }
}

TEST_CASE("object validation") {
  CHECK_THROWS_AS(Object3D(0, 5), InvalidSize);
  CHECK_THROWS_AS(Object3D(3, 4), InvalidSize);  // p < 2n-1
  CHECK_THROWS_AS(Object3D(3, 6), InvalidSize);  // even padding
  const Object3D f(3, 7);
  CHECK(f.n() == 3);
  CHECK(f.p() == 7);
  CHECK(f.values().size() == 27);
  // Default padding.
  CHECK(Object3D(4).p() == 7);
}

TEST_CASE("object storage is row-major over (x, y, z)") {
  Object3D f(3);
  CHECK(f.index(-1, -1, -1) == 0);
  CHECK(f.index(-1, -1, 0) == 1);
  CHECK(f.index(-1, 0, -1) == 3);
  CHECK(f.index(0, -1, -1) == 9);
  CHECK(f.index(1, 1, 1) == 26);
}

TEST_CASE("random objects are deterministic per seed") {
  const Object3D a = random_object(3, 5, Ensemble::ComplexGaussian, 7);
  const Object3D b = random_object(3, 5, Ensemble::ComplexGaussian, 7);
  CHECK(a.values() == b.values());
  const Object3D c = random_object(3, 5, Ensemble::ComplexGaussian, 8);
  CHECK(a.values() != c.values());
}

TEST_CASE("random object ensembles") {
  const Object3D zero = random_object(3, 5, Ensemble::FiniteAlphabet, 1, {Complex(0, 0)});
  CHECK(zero.values().isZero(0.0));

  const Object3D phases = random_object(4, 7, Ensemble::UnitPhases, 1);
  for (Eigen::Index i = 0; i < phases.values().size(); ++i)
    CHECK(std::abs(phases.values()[i]) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(random_object(1, 1, Ensemble::ComplexGaussian, 0), InvalidSize);
  CHECK_THROWS_AS(random_object(3, 3, Ensemble::ComplexGaussian, 0), InvalidSize);
  CHECK_THROWS_AS(random_object(3, 5, Ensemble::FiniteAlphabet, 0, {}), InvalidSize);
}

TEST_CASE("conjugate inversion is an involution on odd n") {
  const Object3D f = random_object(3, 5, Ensemble::ComplexGaussian, 5);
  const Object3D g = conjugate_inversion(conjugate_inversion(f));
  CHECK((g.values() - f.values()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(conjugate_inversion(f).at(1, 0, -1) == std::conj(f.at(-1, 0, 1)));
  CHECK_THROWS_AS(conjugate_inversion(random_object(4, 7, Ensemble::UnitPhases, 1)),
                  EvenPadding);
}

TEST_CASE("support classification in 2D") {
  using V2 = Eigen::Vector2i;
  CHECK(classify_support(std::vector<V2>{}) == SupportClass::Empty);
  CHECK(classify_support(std::vector<V2>{{0, 0}}) == SupportClass::Point);
  CHECK(classify_support(std::vector<V2>{{-1, -1}, {0, 0}, {1, 1}}) == SupportClass::Line);
  CHECK(classify_support(std::vector<V2>{{0, 0}, {1, 0}, {0, 1}}) == SupportClass::Spread2D);
  // Duplicate points do not change the class.
  CHECK(classify_support(std::vector<V2>{{0, 0}, {0, 0}}) == SupportClass::Point);
}

TEST_CASE("support classification in 3D") {
  using V3 = Eigen::Vector3i;
  CHECK(classify_support(std::vector<V3>{}) == SupportClass::Empty);
  CHECK(classify_support(std::vector<V3>{{1, 2, 3}}) == SupportClass::Point);
  CHECK(classify_support(std::vector<V3>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}) ==
        SupportClass::Line);
  CHECK(classify_support(std::vector<V3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}) ==
        SupportClass::Plane);
  CHECK(classify_support(std::vector<V3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) ==
        SupportClass::Full3D);
}

TEST_CASE("support classification is translation and permutation invariant") {
  using V3 = Eigen::Vector3i;
  const std::vector<V3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  const SupportClass base = classify_support(pts);
  std::vector<V3> shifted;
  for (const auto& p : pts) shifted.push_back(p + V3(2, -3, 1));
  CHECK(classify_support(shifted) == base);
  std::vector<V3> permuted;
  for (const auto& p : pts) permuted.push_back({p.z(), p.x(), p.y()});
  CHECK(classify_support(permuted) == base);
}

TEST_CASE("line compatibility") {
  CHECK(line_compatible(SupportClass::Empty));
  CHECK(line_compatible(SupportClass::Point));
  CHECK(line_compatible(SupportClass::Line));
  CHECK(!line_compatible(SupportClass::Plane));
  CHECK(!line_compatible(SupportClass::Spread2D));
  CHECK(!line_compatible(SupportClass::Full3D));
}

TEST_CASE("rng streams are deterministic and well-scaled") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng c(1);
  double mean = 0.0;
  for (int i = 0; i < 10000; ++i) mean += c.normal();
  CHECK(std::abs(mean / 10000.0) < 0.05);
}
