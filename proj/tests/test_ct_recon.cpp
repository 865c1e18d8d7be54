#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tomophase/ct_recon.hpp"

using namespace tomophase;

namespace {

std::vector<Projection2D> forward(const Object3D& f, const Scheme& s) {
  std::vector<Projection2D> out;
  for (const Direction& d : s.directions()) out.push_back(project(f, d));
  return out;
}

// Independent forward DFT for the DC-completion round trip.
Eigen::MatrixXcd slice_spectrum(const Eigen::MatrixXcd& slice, int n, int p) {
  const CenteredRange rn{n};
  const CenteredRange rp{p};
  Eigen::MatrixXcd s(p, p);
  for (int xi = rp.lo(); xi <= rp.hi(); ++xi)
    for (int eta = rp.lo(); eta <= rp.hi(); ++eta) {
      Complex acc(0.0, 0.0);
      for (int x = rn.lo(); x <= rn.hi(); ++x)
        for (int y = rn.lo(); y <= rn.hi(); ++y)
          acc += slice(rn.to_storage(x), rn.to_storage(y)) *
                 std::polar(1.0, -kTwoPi * (xi * x + eta * y) / static_cast<double>(p));
      s(rp.to_storage(xi), rp.to_storage(eta)) = acc;
    }
  return s;
}

}  // namespace

TEST_CASE("DC completion: delete-then-complete round trip") {
  const int n = 3, p = 5;
  Rng rng(1);
  Eigen::MatrixXcd slice(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) slice(i, j) = Complex(rng.normal(), rng.normal());

  Eigen::MatrixXcd spectrum = slice_spectrum(slice, n, p);
  const Complex true_dc = spectrum(CenteredRange{p}.to_storage(0), CenteredRange{p}.to_storage(0));
  spectrum(CenteredRange{p}.to_storage(0), CenteredRange{p}.to_storage(0)) = 0.0;  // deleted

  const DcCompletion dc = complete_dc_slice(spectrum, n, p, 1e-8);
  CHECK(std::abs(dc.dc - true_dc) < 1e-10);
  CHECK((dc.slice - slice).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(dc.outside_residual < 1e-10);
}

TEST_CASE("DC completion: zero spectrum and inconsistent spectrum") {
  const int n = 3, p = 5;
  CHECK(complete_dc_slice(Eigen::MatrixXcd::Zero(p, p), n, p, 1e-8)
            .slice.cwiseAbs()
            .maxCoeff() < 1e-14);

  // Spectrum of a delta sitting outside Z_n^2 cannot come from a supported
  // slice, whatever DC value is chosen.
  const CenteredRange rp{p};
  Eigen::MatrixXcd bad(p, p);
  for (int xi = rp.lo(); xi <= rp.hi(); ++xi)
    for (int eta = rp.lo(); eta <= rp.hi(); ++eta)
      bad(rp.to_storage(xi), rp.to_storage(eta)) =
          std::polar(1.0, -kTwoPi * (2.0 * xi + 2.0 * eta) / p);
  bad(rp.to_storage(0), rp.to_storage(0)) = 0.0;
  CHECK_THROWS_AS(complete_dc_slice(bad, n, p, 1e-8), InconsistentSpectrum);

  CHECK_THROWS_AS(complete_dc_slice(Eigen::MatrixXcd::Zero(3, 3), 3, 3, 1e-8), InvalidSize);
}

TEST_CASE("reconstruction of a delta object is exact") {
  Object3D f(3, 5);
  f.at(0, 0, 0) = 1.0;
  const Scheme s = random_scheme(3, Axis::X, 1);
  const Reconstruction rec = ct_reconstruct(forward(f, s), s);
  CHECK((rec.object.values() - f.values()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("reconstruction of random objects across families") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Axis family = static_cast<Axis>(seed % 3);
    const Scheme s = random_scheme(3, family, seed + 20);
    REQUIRE(check_strong_ct(s).pass);
    const Object3D f = random_object(3, 5, Ensemble::ComplexGaussian, seed);
    const Reconstruction rec = ct_reconstruct(forward(f, s), s);
    const double tol = 1e-8 * std::max(1.0, rec.max_condition / 1e6);
    CHECK((rec.object.values() - f.values()).cwiseAbs().maxCoeff() <= tol);
  }
}

TEST_CASE("reconstruction guards") {
  const Scheme bad{Axis::X, {{0, 0}, {0, 0}, {0, 0}}, std::nullopt, 3, 5};
  CHECK_THROWS_AS(ct_reconstruct({}, bad), StrongCTFailure);
  const Scheme s = random_scheme(3, Axis::Z, 2);
  CHECK_THROWS_AS(ct_reconstruct({}, s), SizeMismatch);
}

TEST_CASE("extra projections are used via best-separated node selection") {
  Scheme s = random_scheme(3, Axis::Y, 3);
  s.slopes.push_back({0.11, -0.77});
  s.slopes.push_back({-0.42, 0.05});  // m = 5 > n = 3
  const Object3D f = random_object(3, 5, Ensemble::ComplexGaussian, 30);
  const Reconstruction rec = ct_reconstruct(forward(f, s), s);
  const double tol = 1e-8 * std::max(1.0, rec.max_condition / 1e6);
  CHECK((rec.object.values() - f.values()).cwiseAbs().maxCoeff() <= tol);
}

TEST_CASE("global-phase equivariance of reconstruction") {
  const Scheme s = random_scheme(3, Axis::Z, 4);
  const Object3D f = random_object(3, 5, Ensemble::ComplexGaussian, 40);
  std::vector<Projection2D> projections = forward(f, s);
  const Complex phase = std::polar(1.0, 0.9);
  for (Projection2D& g : projections) g.values() *= phase;
  const Reconstruction rec = ct_reconstruct(projections, s);
  CHECK((rec.object.values() - phase * f.values()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("corrupted projections are rejected as inconsistent") {
  const Scheme s = random_scheme(3, Axis::X, 5);
  const Object3D f = random_object(3, 5, Ensemble::ComplexGaussian, 50);
  std::vector<Projection2D> projections = forward(f, s);
  Rng rng(6);
  for (Eigen::Index i = 0; i < projections[0].values().size(); ++i)
    projections[0].values().data()[i] += Complex(rng.normal(), rng.normal());
  CHECK_THROWS_AS(ct_reconstruct(projections, s), InconsistentSpectrum);
}

TEST_CASE("ambiguity classification verdicts") {
  const int n = 3;
  const Scheme s = tom2_scheme(random_scheme(n, Axis::X, 7), {1.0, 0.4});

  // Generic object: spectra differ across base directions.
  const Object3D f = random_object(n, 5, Ensemble::ComplexGaussian, 70);
  const AmbiguityVerdict generic = ambiguity_classify(forward(f, s), s);
  CHECK(generic.kind == AmbiguityKind::UniqueUpToPhase);

  // Delta at the origin: every direction sees the same delta projection;
  // the planar deduction goes through and the extra projection is a point.
  Object3D delta(n, 5);
  delta.at(0, 0, 0) = 1.0;
  const AmbiguityVerdict amb = ambiguity_classify(forward(delta, s), s);
  CHECK(amb.kind == AmbiguityKind::CommonProjectionAmbiguity);
  CHECK(line_compatible(amb.extra_support));
  CHECK(amb.common_projection.has_value());

  // Hand-built data: common delta projections for the base directions but a
  // spread-out extra projection refute the planar ambiguity.
  std::vector<Projection2D> handmade(static_cast<std::size_t>(n), forward(delta, s)[0]);
  handmade.push_back(project(f, realize_extra(s)));
  const AmbiguityVerdict refuted = ambiguity_classify(handmade, s);
  CHECK(refuted.kind == AmbiguityKind::Inconsistent);

  CHECK_THROWS_AS(ambiguity_classify(forward(delta, s), random_scheme(n, Axis::X, 7)),
                  ZeroExtraDirection);
  CHECK_THROWS_AS(ambiguity_classify({}, s), SizeMismatch);
}

TEST_CASE("deficient schemes admit invisible objects") {
  // Repeated slopes: one distinct node everywhere, failing the condition.
  Scheme s{Axis::X, {}, std::nullopt, 3, 5};
  for (int l = 0; l < 3; ++l) s.slopes.push_back({0.37, -0.22});
  REQUIRE(!check_strong_ct(s).pass);

  const NullObject witness = deficiency_null_object(s);
  CHECK(std::abs(witness.object.values().norm() - 1.0) < 1e-12);
  CHECK(witness.singular_value < 1e-10);
  for (const Direction& d : s.directions())
    CHECK(project(witness.object, d).values().cwiseAbs().maxCoeff() < 1e-8);
}
