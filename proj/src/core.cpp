#include "tomophase/core.hpp"

#include <cmath>
#include <set>

namespace tomophase {

double dirichlet_kernel(int p, double t) {
  // Snap to the integer-multiple branch; |t mod p| < 1e-12 counts as a multiple.
  double r = std::fmod(t, static_cast<double>(p));
  if (std::abs(r) < 1e-12 || std::abs(std::abs(r) - p) < 1e-12) return 1.0;
  return std::sin(kPi * t) / (p * std::sin(kPi * t / p));
}

Object3D::Object3D(int n, int p) : n_(n), p_(p) {
  if (n < 1) throw InvalidSize("Object3D: n must be >= 1");
  if (p < 2 * n - 1) throw InvalidSize("Object3D: p must satisfy p >= 2n-1");
  if (p % 2 == 0) throw InvalidSize("Object3D: padded side p must be odd");
  values_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * n * n);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on raw uniform bits.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return mag * std::cos(kTwoPi * u2);
}

Object3D random_object(int n, int p, Ensemble kind, std::uint64_t seed,
                       const std::vector<Complex>& alphabet) {
  if (n < 2) throw InvalidSize("random_object: n must be >= 2");
  if (p < 2 * n - 1) throw InvalidSize("random_object: p must satisfy p >= 2n-1");
  if (kind == Ensemble::FiniteAlphabet && alphabet.empty())
    throw InvalidSize("random_object: FiniteAlphabet needs a non-empty alphabet");

  Object3D f(n, p);
  Rng rng(seed);
  for (Eigen::Index v = 0; v < f.values().size(); ++v) {
    switch (kind) {
      case Ensemble::ComplexGaussian:
        f.values()[v] = Complex(rng.normal(), rng.normal());
        break;
      case Ensemble::UnitPhases:
        f.values()[v] = std::polar(1.0, rng.uniform(-kPi, kPi));
        break;
      case Ensemble::FiniteAlphabet:
        f.values()[v] = alphabet[rng.index(alphabet.size())];
        break;
    }
  }
  return f;
}

Object3D conjugate_inversion(const Object3D& f) {
  if (f.n() % 2 == 0)
    throw EvenPadding("conjugate_inversion: Z_n is inversion-symmetric only for odd n");
  Object3D g(f.n(), f.p());
  const CenteredRange r = f.grid();
  for (int i = r.lo(); i <= r.hi(); ++i)
    for (int j = r.lo(); j <= r.hi(); ++j)
      for (int k = r.lo(); k <= r.hi(); ++k) g.at(i, j, k) = std::conj(f.at(-i, -j, -k));
  return g;
}

namespace {

template <typename Vec>
std::vector<Vec> unique_points(const std::vector<Vec>& points) {
  std::set<std::vector<int>> seen;
  std::vector<Vec> out;
  for (const auto& pt : points) {
    std::vector<int> key(pt.data(), pt.data() + pt.size());
    if (seen.insert(key).second) out.push_back(pt);
  }
  return out;
}

}  // namespace

SupportClass classify_support(const std::vector<Eigen::Vector2i>& points) {
  const auto pts = unique_points(points);
  if (pts.empty()) return SupportClass::Empty;
  if (pts.size() == 1) return SupportClass::Point;
  const Eigen::Vector2i v = pts[1] - pts[0];
  for (std::size_t i = 2; i < pts.size(); ++i) {
    const Eigen::Vector2i w = pts[i] - pts[0];
    const long long cross = static_cast<long long>(v.x()) * w.y() -
                            static_cast<long long>(v.y()) * w.x();
    if (cross != 0) return SupportClass::Spread2D;
  }
  return SupportClass::Line;
}

SupportClass classify_support(const std::vector<Eigen::Vector3i>& points) {
  const auto pts = unique_points(points);
  if (pts.empty()) return SupportClass::Empty;
  if (pts.size() == 1) return SupportClass::Point;
  using V3 = Eigen::Matrix<long long, 3, 1>;
  const V3 v = (pts[1] - pts[0]).cast<long long>();
  // Affine rank via exact integer cross/triple products.
  std::size_t first_noncollinear = 0;
  for (std::size_t i = 2; i < pts.size(); ++i) {
    const V3 w = (pts[i] - pts[0]).cast<long long>();
    if (v.cross(w).squaredNorm() != 0) {
      first_noncollinear = i;
      break;
    }
  }
  if (first_noncollinear == 0) return SupportClass::Line;
  const V3 w = (pts[first_noncollinear] - pts[0]).cast<long long>();
  const V3 normal = v.cross(w);
  for (std::size_t i = 2; i < pts.size(); ++i) {
    const V3 u = (pts[i] - pts[0]).cast<long long>();
    if (normal.dot(u) != 0) return SupportClass::Full3D;
  }
  return SupportClass::Plane;
}

const char* to_string(SupportClass c) {
  switch (c) {
    case SupportClass::Empty: return "Empty";
    case SupportClass::Point: return "Point";
    case SupportClass::Line: return "Line";
    case SupportClass::Plane: return "Plane";
    case SupportClass::Spread2D: return "Spread2D";
    case SupportClass::Full3D: return "Full3D";
  }
  return "?";
}

}  // namespace tomophase
