#include "tomophase/xray.hpp"

#include <cmath>

namespace tomophase {

const char* to_string(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

Projection2D::Projection2D(int p) : p_(p) {
  if (p < 1) throw InvalidSize("Projection2D: p must be >= 1");
  values_ = Eigen::MatrixXcd::Zero(p, p);
}

namespace {

// Slice of the object with the family axis pinned at t (centered), as an
// n x n matrix over the remaining two axes in (x, y, z) order.
Eigen::MatrixXcd slice_matrix(const Object3D& f, Axis family, int t) {
  const CenteredRange g = f.grid();
  Eigen::MatrixXcd s(f.n(), f.n());
  for (int a = g.lo(); a <= g.hi(); ++a)
    for (int b = g.lo(); b <= g.hi(); ++b) {
      Complex v;
      switch (family) {
        case Axis::X: v = f.at(t, a, b); break;
        case Axis::Y: v = f.at(a, t, b); break;
        case Axis::Z: v = f.at(a, b, t); break;
      }
      s(g.to_storage(a), g.to_storage(b)) = v;
    }
  return s;
}

}  // namespace

Complex interpolate_slice(const Object3D& f, Axis family, int slice_index, double u,
                          double v) {
  if (!f.padded().contains(slice_index))
    throw InvalidSize("interpolate_slice: slice_index outside Z_p");
  if (!f.grid().contains(slice_index)) return Complex(0.0, 0.0);

  const CenteredRange g = f.grid();
  const int p = f.p();
  const Eigen::MatrixXcd s = slice_matrix(f, family, slice_index);
  Eigen::VectorXd wu(f.n()), wv(f.n());
  for (int a = g.lo(); a <= g.hi(); ++a) {
    wu[g.to_storage(a)] = dirichlet_kernel(p, u - a);
    wv[g.to_storage(a)] = dirichlet_kernel(p, v - a);
  }
  return wu.transpose() * s * wv;
}

Projection2D project(const Object3D& f, const Direction& d) {
  if (std::abs(d.alpha) > 1.0 || std::abs(d.beta) > 1.0)
    throw SlopeOutOfRange("project: |alpha| and |beta| must be <= 1");

  const int n = f.n();
  const int p = f.p();
  const CenteredRange gn = f.grid();
  const CenteredRange gp = f.padded();

  Projection2D out(p);
  out.provenance = d;

  // Per parameter value t, the line sum contribution is separable:
  // Wu * slice * Wv^T with Dirichlet weights along each transverse axis.
  Eigen::MatrixXd wu(p, n), wv(p, n);
  for (int t = gn.lo(); t <= gn.hi(); ++t) {
    const Eigen::MatrixXcd s = slice_matrix(f, d.family, t);
    for (int c = gp.lo(); c <= gp.hi(); ++c) {
      const double u = d.alpha * t + c;
      const double v = d.beta * t + c;
      for (int a = gn.lo(); a <= gn.hi(); ++a) {
        wu(gp.to_storage(c), gn.to_storage(a)) = dirichlet_kernel(p, u - a);
        wv(gp.to_storage(c), gn.to_storage(a)) = dirichlet_kernel(p, v - a);
      }
    }
    out.values().noalias() += wu * s * wv.transpose();
  }
  return out;
}

std::vector<Eigen::Vector2i> support_points(const Projection2D& g, double eps) {
  const CenteredRange r = g.range();
  std::vector<Eigen::Vector2i> pts;
  for (int c1 = r.lo(); c1 <= r.hi(); ++c1)
    for (int c2 = r.lo(); c2 <= r.hi(); ++c2)
      if (std::abs(g.at(c1, c2)) > eps) pts.emplace_back(c1, c2);
  return pts;
}

}  // namespace tomophase
