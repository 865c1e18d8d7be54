#include "tomophase/spectral.hpp"

#include <cmath>
#include <limits>

namespace tomophase {

namespace {

Eigen::VectorXcd phase_vector(const CenteredRange& r, double freq, int p) {
  Eigen::VectorXcd v(r.n);
  for (int a = r.lo(); a <= r.hi(); ++a)
    v[r.to_storage(a)] = std::polar(1.0, -kTwoPi * freq * a / p);
  return v;
}

}  // namespace

Complex dft3_at(const Object3D& f, double xi, double eta, double zeta) {
  const CenteredRange g = f.grid();
  const Eigen::VectorXcd ex = phase_vector(g, xi, f.p());
  const Eigen::VectorXcd ey = phase_vector(g, eta, f.p());
  const Eigen::VectorXcd ez = phase_vector(g, zeta, f.p());
  Complex acc(0.0, 0.0);
  for (int i = g.lo(); i <= g.hi(); ++i)
    for (int j = g.lo(); j <= g.hi(); ++j) {
      Complex inner(0.0, 0.0);
      for (int k = g.lo(); k <= g.hi(); ++k)
        inner += f.at(i, j, k) * ez[g.to_storage(k)];
      acc += ex[g.to_storage(i)] * ey[g.to_storage(j)] * inner;
    }
  return acc;
}

Complex dft2_at(const Eigen::MatrixXcd& values, int p, double eta, double zeta) {
  const CenteredRange r{p};
  const Eigen::VectorXcd e1 = phase_vector(r, eta, p);
  const Eigen::VectorXcd e2 = phase_vector(r, zeta, p);
  return e1.transpose() * values * e2;
}

Complex dft2_at(const Projection2D& g, double eta, double zeta) {
  return dft2_at(g.values(), g.p(), eta, zeta);
}

Eigen::Vector3d slice_frequencies(const Direction& d, double a, double b) {
  const double node = -d.alpha * a - d.beta * b;
  switch (d.family) {
    case Axis::X: return {node, a, b};
    case Axis::Y: return {a, node, b};
    case Axis::Z: return {a, b, node};
  }
  return {0, 0, 0};
}

double fourier_slice_residual(const Object3D& f, const Direction& d,
                              const std::vector<Eigen::Vector2i>& grid) {
  const Projection2D g = project(f, d);
  std::vector<Eigen::Vector2i> pts = grid;
  if (pts.empty()) {
    const CenteredRange r = f.padded();
    for (int a = r.lo(); a <= r.hi(); ++a)
      for (int b = r.lo(); b <= r.hi(); ++b) pts.emplace_back(a, b);
  }
  double worst = 0.0;
  for (const auto& ab : pts) {
    const Eigen::Vector3d w = slice_frequencies(d, ab.x(), ab.y());
    const Complex lhs = dft2_at(g, ab.x(), ab.y());
    const Complex rhs = dft3_at(f, w.x(), w.y(), w.z());
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double circular_distance(double a, double b, int p) {
  double d = std::fmod(std::abs(a - b), static_cast<double>(p));
  return std::min(d, p - d);
}

VandermondeSolution solve_vandermonde_column(const VandermondeColumn& col, double tol,
                                             double cond_threshold) {
  const int n = col.n;
  if (static_cast<int>(col.nodes.size()) < n)
    throw InvalidSize("solve_vandermonde_column: fewer nodes than coefficients");
  if (col.samples.size() < n)
    throw InvalidSize("solve_vandermonde_column: fewer samples than coefficients");

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (circular_distance(col.nodes[a], col.nodes[b], col.p) < tol)
        throw SingularNodes("solve_vandermonde_column: nodes coincide mod p");

  const CenteredRange r{n};
  Eigen::MatrixXcd V(n, n);
  for (int l = 0; l < n; ++l)
    for (int k = r.lo(); k <= r.hi(); ++k)
      V(l, r.to_storage(k)) = std::polar(1.0, -kTwoPi * k * col.nodes[l] / col.p);

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V);
  VandermondeSolution sol;
  sol.coefficients = lu.solve(col.samples.head(n));
  const double rcond = lu.rcond();
  sol.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  sol.ill_conditioned = sol.condition > cond_threshold;
  return sol;
}

Complex trig_eval(const Eigen::VectorXcd& coefficients, int n, int p, double xi) {
  const CenteredRange r{n};
  Complex acc(0.0, 0.0);
  for (int k = r.lo(); k <= r.hi(); ++k)
    acc += coefficients[r.to_storage(k)] * std::polar(1.0, -kTwoPi * k * xi / p);
  return acc;
}

}  // namespace tomophase
