#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "tomophase/errors.hpp"

namespace tomophase {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Centered index range: [-n/2, n/2-1] for even n, [-(n-1)/2, (n-1)/2] for odd n.
struct CenteredRange {
  int n;
  int offset() const { return n / 2; }
  int lo() const { return -(n / 2); }
  int hi() const { return lo() + n - 1; }
  bool contains(int i) const { return i >= lo() && i <= hi(); }
  int to_storage(int i) const { return i + offset(); }
  int from_storage(int s) const { return s - offset(); }
};

/// p-periodic Dirichlet kernel: 1 at integer multiples of p,
/// sin(pi t) / (p sin(pi t / p)) elsewhere.
double dirichlet_kernel(int p, double t);

/// Complex voxel field on the centered grid Z_n^3, zero-padded into Z_p^3.
/// Storage is row-major over (x, y, z) with the centered-to-storage offset
/// floor(n/2), so the file format downstream is bit-stable.
class Object3D {
 public:
  Object3D(int n, int p);
  explicit Object3D(int n) : Object3D(n, 2 * n - 1) {}

  int n() const { return n_; }
  int p() const { return p_; }
  CenteredRange grid() const { return {n_}; }
  CenteredRange padded() const { return {p_}; }

  std::size_t index(int i, int j, int k) const {
    const CenteredRange g = grid();
    return (static_cast<std::size_t>(g.to_storage(i)) * n_ + g.to_storage(j)) * n_ +
           g.to_storage(k);
  }
  Complex& at(int i, int j, int k) { return values_[index(i, j, k)]; }
  Complex at(int i, int j, int k) const { return values_[index(i, j, k)]; }

  Eigen::VectorXcd& values() { return values_; }
  const Eigen::VectorXcd& values() const { return values_; }

 private:
  int n_;
  int p_;
  Eigen::VectorXcd values_;
};

enum class Ensemble { ComplexGaussian, UnitPhases, FiniteAlphabet };

Object3D random_object(int n, int p, Ensemble kind, std::uint64_t seed,
                       const std::vector<Complex>& alphabet = {});

/// Conjugate inversion f -> conj(f(-.)) on Z_n^3; requires odd n so the
/// centered range is symmetric.
Object3D conjugate_inversion(const Object3D& f);

enum class SupportClass { Empty, Point, Line, Plane, Spread2D, Full3D };

SupportClass classify_support(const std::vector<Eigen::Vector2i>& points);
SupportClass classify_support(const std::vector<Eigen::Vector3i>& points);

/// Empty and Point sets are sub-cases of "part of a line object".
inline bool line_compatible(SupportClass c) {
  return c == SupportClass::Empty || c == SupportClass::Point || c == SupportClass::Line;
}

const char* to_string(SupportClass c);

/// Deterministic random stream. Doubles are derived from raw mt19937_64
/// output so results do not depend on the standard library's distribution
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();
  std::size_t index(std::size_t count) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(count)) % count;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tomophase
