#pragma once

#include "tomophase/diffraction.hpp"

namespace tomophase {

enum class WaveModel { Born, Rytov };

/// Exit wave on Z_p^2. Born: 1 - (i/2k) S; Rytov: exp(-(i/2k) S), where S is
/// the axis-aligned line sum of the object.
struct ExitWave2D {
  int p;
  Eigen::MatrixXcd values;
  WaveModel model;
  double kappa;
};

ExitWave2D exit_wave(const Object3D& f, Axis axis, double kappa, WaveModel model);

/// Max over Z_p^2 of |exp(v_B - 1) - v_R|: the exponentiated form of the
/// mod-2-pi-i relation between the two exit-wave models.
double born_rytov_consistency(const Object3D& f, double kappa = kTwoPi);

struct IntensityDecomposition {
  Eigen::VectorXd t0;   // |F(mu)|^2
  Eigen::VectorXd t1;   // (1/k) Im(conj(F(mu)) F(mu fproj))
  Eigen::VectorXd t2;   // (1/4k^2) |F(mu fproj)|^2
  Eigen::VectorXd lhs;  // |F(mu v_B)|^2
  double residual;      // max |lhs - (t0 + t1 + t2)|
};

IntensityDecomposition intensity_decomposition(const Mask2D& mu, const Projection2D& fproj,
                                               double kappa, const FrequencyGrid& grid);

struct FresnelReport {
  double ell;
  double lambda;
  double z0;
  double fresnel_number;  // ell^2 / (lambda z0)
  bool valid;
};

FresnelReport fresnel_validity(double ell, double lambda, double z0,
                               double threshold = 10.0);

}  // namespace tomophase
