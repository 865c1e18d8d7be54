#pragma once

#include <vector>

#include "tomophase/xray.hpp"

namespace tomophase {

/// 3D discrete Fourier transform of the object at arbitrary real
/// frequencies; p-periodic in each variable and band-limited to Z_n^3.
Complex dft3_at(const Object3D& f, double xi, double eta, double zeta);

/// 2D discrete Fourier transform of a p x p array at arbitrary real
/// frequencies.
Complex dft2_at(const Projection2D& g, double eta, double zeta);
Complex dft2_at(const Eigen::MatrixXcd& values, int p, double eta, double zeta);

/// Frequency triple (xi, eta, zeta) at which the 3D spectrum must match the
/// 2D spectrum of a projection with direction d, evaluated at the integer
/// pair (a, b).
Eigen::Vector3d slice_frequencies(const Direction& d, double a, double b);

/// Max over the grid of |dft2(projection) - dft3(slice-mapped frequencies)|.
/// An empty grid means the full integer grid Z_p^2.
double fourier_slice_residual(const Object3D& f, const Direction& d,
                              const std::vector<Eigen::Vector2i>& grid = {});

/// Circular distance between two frequencies mod p.
double circular_distance(double a, double b, int p);

struct VandermondeColumn {
  std::vector<double> nodes;  // real frequencies, interpreted mod p
  Eigen::VectorXcd samples;
  int n;  // coefficient count
  int p;  // period
};

struct VandermondeSolution {
  Eigen::VectorXcd coefficients;  // indexed by centered Z_n
  double condition;
  bool ill_conditioned;
};

/// Solves sum_{k in Z_n} c_k exp(-2 pi i k xi_l / p) = samples[l] using the
/// first n nodes. Dense LU with partial pivoting; conditioning is reported,
/// and flagged (not fatal) above cond_threshold.
VandermondeSolution solve_vandermonde_column(const VandermondeColumn& col,
                                             double tol = 1e-9,
                                             double cond_threshold = 1e8);

/// Forward evaluation of a solved column at a real frequency.
Complex trig_eval(const Eigen::VectorXcd& coefficients, int n, int p, double xi);

}  // namespace tomophase
