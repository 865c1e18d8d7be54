#include "tomophase/physics.hpp"

#include <cmath>

namespace tomophase {

namespace {

// Discrete surrogate for the optical-axis integral: the axis-aligned line sum.
Eigen::MatrixXcd line_sum(const Object3D& f, Axis axis) {
  return project(f, Direction{axis, 0.0, 0.0}).values();
}

}  // namespace

ExitWave2D exit_wave(const Object3D& f, Axis axis, double kappa, WaveModel model) {
  if (kappa <= 0.0) throw NonPositiveInput("exit_wave: kappa must be positive");
  const Eigen::MatrixXcd s = line_sum(f, axis);
  const Complex factor(0.0, -0.5 / kappa);
  ExitWave2D wave{f.p(), Eigen::MatrixXcd(f.p(), f.p()), model, kappa};
  if (model == WaveModel::Born) {
    wave.values = Eigen::MatrixXcd::Ones(f.p(), f.p()) + factor * s;
  } else {
    wave.values = (factor * s).array().exp();
  }
  return wave;
}

double born_rytov_consistency(const Object3D& f, double kappa) {
  const ExitWave2D born = exit_wave(f, Axis::Z, kappa, WaveModel::Born);
  const ExitWave2D rytov = exit_wave(f, Axis::Z, kappa, WaveModel::Rytov);
  const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(f.p(), f.p());
  return ((born.values - ones).array().exp().matrix() - rytov.values)
      .cwiseAbs()
      .maxCoeff();
}

IntensityDecomposition intensity_decomposition(const Mask2D& mu, const Projection2D& fproj,
                                               double kappa, const FrequencyGrid& grid) {
  if (mu.p() != fproj.p())
    throw SizeMismatch("intensity_decomposition: mask and projection sizes differ");
  const int p = mu.p();
  const Eigen::MatrixXcd mask = mu.field();
  const Eigen::MatrixXcd masked = mask.cwiseProduct(fproj.values());
  const Complex factor(0.0, -0.5 / kappa);
  const Eigen::MatrixXcd exit =
      mask.cwiseProduct(Eigen::MatrixXcd::Ones(p, p) + factor * fproj.values());

  const Eigen::Index m = static_cast<Eigen::Index>(grid.nodes.size());
  IntensityDecomposition out;
  out.t0.resize(m);
  out.t1.resize(m);
  out.t2.resize(m);
  out.lhs.resize(m);
  out.residual = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Vector2d& w = grid.nodes[static_cast<std::size_t>(i)];
    const Complex fm = field_at(mask, p, w);
    const Complex ff = field_at(masked, p, w);
    out.t0[i] = std::norm(fm);
    out.t1[i] = std::imag(std::conj(fm) * ff) / kappa;
    out.t2[i] = std::norm(ff) / (4.0 * kappa * kappa);
    out.lhs[i] = std::norm(field_at(exit, p, w));
    out.residual =
        std::max(out.residual, std::abs(out.lhs[i] - (out.t0[i] + out.t1[i] + out.t2[i])));
  }
  return out;
}

FresnelReport fresnel_validity(double ell, double lambda, double z0, double threshold) {
  if (ell <= 0.0 || lambda <= 0.0 || z0 <= 0.0)
    throw NonPositiveInput("fresnel_validity: all lengths must be positive");
  FresnelReport report{ell, lambda, z0, ell * ell / (lambda * z0), false};
  report.valid = report.fresnel_number >= threshold;
  return report;
}

}  // namespace tomophase
