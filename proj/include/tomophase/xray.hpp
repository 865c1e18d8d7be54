#pragma once

#include <optional>
#include <vector>

#include "tomophase/core.hpp"

namespace tomophase {

enum class Axis { X, Y, Z };

const char* to_string(Axis a);

/// A parallel line family: for family X the lines are
/// (y, z) = (alpha x + c1, beta x + c2) with x running over Z_n.
/// Slopes are restricted to |alpha|, |beta| <= 1, the wraparound-free
/// regime for p >= 2n-1.
struct Direction {
  Axis family;
  double alpha;
  double beta;
};

/// Complex 2D array on Z_p^2 holding a discrete X-ray transform
/// (or a masked exit wave). Indexed by centered intercepts (c1, c2).
class Projection2D {
 public:
  explicit Projection2D(int p);

  int p() const { return p_; }
  CenteredRange range() const { return {p_}; }

  Complex& at(int c1, int c2) {
    return values_(range().to_storage(c1), range().to_storage(c2));
  }
  Complex at(int c1, int c2) const {
    return values_(range().to_storage(c1), range().to_storage(c2));
  }

  Eigen::MatrixXcd& values() { return values_; }
  const Eigen::MatrixXcd& values() const { return values_; }

  std::optional<Direction> provenance;

 private:
  int p_;
  Eigen::MatrixXcd values_;
};

/// Dirichlet-kernel interpolation of the object on the hyperplane
/// {family-axis == slice_index}, evaluated at real transverse coordinates
/// (u, v). Slices outside Z_n are identically zero.
Complex interpolate_slice(const Object3D& f, Axis family, int slice_index, double u,
                          double v);

/// Discrete X-ray transform: line sums of the interpolated object over the
/// family of lines with slopes (d.alpha, d.beta), one value per intercept
/// pair in Z_p^2.
Projection2D project(const Object3D& f, const Direction& d);

/// Centered coordinates of entries with |value| > eps.
std::vector<Eigen::Vector2i> support_points(const Projection2D& g, double eps = 1e-9);

}  // namespace tomophase
