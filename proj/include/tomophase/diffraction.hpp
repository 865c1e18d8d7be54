#pragma once

#include <optional>
#include <vector>

#include "tomophase/spectral.hpp"
#include "tomophase/xray.hpp"

namespace tomophase {

/// Unimodular coded aperture: mu(n) = exp(i phi(n)) on Z_p^2.
class Mask2D {
 public:
  explicit Mask2D(int p);

  int p() const { return p_; }
  CenteredRange range() const { return {p_}; }

  double& phase(int c1, int c2) {
    return phases_(range().to_storage(c1), range().to_storage(c2));
  }
  double phase(int c1, int c2) const {
    return phases_(range().to_storage(c1), range().to_storage(c2));
  }
  Complex value(int c1, int c2) const { return std::polar(1.0, phase(c1, c2)); }

  Eigen::MatrixXd& phases() { return phases_; }
  const Eigen::MatrixXd& phases() const { return phases_; }
  Eigen::MatrixXcd field() const;

  bool plain() const { return phases_.isZero(0.0); }

  std::optional<std::uint64_t> seed;

 private:
  int p_;
  Eigen::MatrixXd phases_;
};

Mask2D random_mask(int p, std::uint64_t seed);
Mask2D plain_mask(int p);

/// Pointwise product g * mu: the exit wave.
Projection2D apply_mask(const Projection2D& g, const Mask2D& mu);

/// R(m) = sum_{n' in Z_p^2} g(n'+m) conj(g(n')) on the centered grid Z_{2p-1}^2.
class Autocorrelation2D {
 public:
  explicit Autocorrelation2D(int p);

  int p() const { return p_; }
  int side() const { return 2 * p_ - 1; }
  CenteredRange range() const { return {side()}; }

  Complex& at(int m1, int m2) {
    return values_(range().to_storage(m1), range().to_storage(m2));
  }
  Complex at(int m1, int m2) const {
    return values_(range().to_storage(m1), range().to_storage(m2));
  }

  Eigen::MatrixXcd& values() { return values_; }
  const Eigen::MatrixXcd& values() const { return values_; }

 private:
  int p_;
  Eigen::MatrixXcd values_;
};

Autocorrelation2D autocorrelation(const Projection2D& g);

enum class KadecNorm { Euclidean, Sup };

struct KadecReport {
  std::vector<double> deviations;
  double max_deviation;
  bool pass;
};

/// Deviation of each node from the regular Nyquist grid in the scaled metric
/// |(2p-1) w_jk - (j, k)|; all must stay strictly below 1/4.
/// Nodes are ordered row-major over centered (j, k) in Z_{2p-1}^2.
KadecReport kadec_check(const std::vector<Eigen::Vector2d>& nodes, int p,
                        KadecNorm norm = KadecNorm::Euclidean);

struct FrequencyGrid {
  bool regular;
  std::vector<Eigen::Vector2d> nodes;  // w in [-1/2, 1/2]^2

  static FrequencyGrid regular_grid(int p);
  static FrequencyGrid irregular(std::vector<Eigen::Vector2d> nodes);
};

/// Nonnegative intensity samples |F(g)(w)|^2 per grid node.
struct DiffractionPattern {
  int p;
  FrequencyGrid grid;
  Eigen::VectorXd intensities;
  bool forced = false;
  std::optional<std::uint64_t> mask_seed;
};

/// Fourier transform of a p x p array at a real node w: sum g(n) e^{-2 pi i n.w}.
Complex field_at(const Eigen::MatrixXcd& values, int p, const Eigen::Vector2d& w);
Complex field_at(const Projection2D& g, const Eigen::Vector2d& w);

/// Irregular grids must pass kadec_check unless force is set (the override is
/// recorded in the pattern).
DiffractionPattern diffraction_pattern(const Projection2D& g, const FrequencyGrid& grid,
                                       bool force = false);

struct RecoveredAutocorrelation {
  Autocorrelation2D values;
  double condition;
  bool ill_conditioned;
};

/// Regular grids invert by the (2p-1)-point 2D DFT; irregular grids solve the
/// dense (2p-1)^2 x (2p-1)^2 sampling system.
RecoveredAutocorrelation recover_autocorrelation(const DiffractionPattern& pat, int p,
                                                 double cond_threshold = 1e8);

/// Twin image: conj(g(-n)). Requires odd p so Z_p is inversion-symmetric.
Projection2D twin(const Projection2D& g);

/// e^{i theta} g(. + shift), optionally twinned first. The shifted support
/// must stay inside Z_p^2 (no wraparound).
Projection2D orbit_transform(const Projection2D& g, const Eigen::Vector2i& shift,
                             double theta, bool twinned);

}  // namespace tomophase
