#include "tomophase/diffraction.hpp"

#include <cmath>
#include <limits>

namespace tomophase {

Mask2D::Mask2D(int p) : p_(p) {
  if (p < 1) throw InvalidSize("Mask2D: p must be >= 1");
  phases_ = Eigen::MatrixXd::Zero(p, p);
}

Eigen::MatrixXcd Mask2D::field() const {
  Eigen::MatrixXcd out(p_, p_);
  for (int r = 0; r < p_; ++r)
    for (int c = 0; c < p_; ++c) out(r, c) = std::polar(1.0, phases_(r, c));
  return out;
}

Mask2D random_mask(int p, std::uint64_t seed) {
  Mask2D mu(p);
  Rng rng(seed);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c) mu.phases()(r, c) = rng.uniform(-kPi, kPi);
  mu.seed = seed;
  return mu;
}

Mask2D plain_mask(int p) { return Mask2D(p); }

Projection2D apply_mask(const Projection2D& g, const Mask2D& mu) {
  if (g.p() != mu.p()) throw SizeMismatch("apply_mask: projection and mask sizes differ");
  Projection2D out(g.p());
  out.provenance = g.provenance;
  out.values() = g.values().cwiseProduct(mu.field());
  return out;
}

Autocorrelation2D::Autocorrelation2D(int p) : p_(p) {
  if (p < 1) throw InvalidSize("Autocorrelation2D: p must be >= 1");
  values_ = Eigen::MatrixXcd::Zero(side(), side());
}

Autocorrelation2D autocorrelation(const Projection2D& g) {
  const int p = g.p();
  const CenteredRange rp = g.range();
  Autocorrelation2D R(p);
  const CenteredRange rm = R.range();
  for (int m1 = rm.lo(); m1 <= rm.hi(); ++m1)
    for (int m2 = rm.lo(); m2 <= rm.hi(); ++m2) {
      Complex acc(0.0, 0.0);
      for (int a = rp.lo(); a <= rp.hi(); ++a)
        for (int b = rp.lo(); b <= rp.hi(); ++b) {
          if (!rp.contains(a + m1) || !rp.contains(b + m2)) continue;
          acc += g.at(a + m1, b + m2) * std::conj(g.at(a, b));
        }
      R.at(m1, m2) = acc;
    }
  return R;
}

KadecReport kadec_check(const std::vector<Eigen::Vector2d>& nodes, int p, KadecNorm norm) {
  const int q = 2 * p - 1;
  if (static_cast<int>(nodes.size()) != q * q)
    throw WrongNodeCount("kadec_check: expected (2p-1)^2 nodes");
  const CenteredRange r{q};
  KadecReport report;
  report.deviations.reserve(nodes.size());
  report.max_deviation = 0.0;
  std::size_t idx = 0;
  for (int j = r.lo(); j <= r.hi(); ++j)
    for (int k = r.lo(); k <= r.hi(); ++k, ++idx) {
      const Eigen::Vector2d dev = q * nodes[idx] - Eigen::Vector2d(j, k);
      const double d =
          norm == KadecNorm::Euclidean ? dev.norm() : dev.cwiseAbs().maxCoeff();
      report.deviations.push_back(d);
      report.max_deviation = std::max(report.max_deviation, d);
    }
  report.pass = report.max_deviation < 0.25;
  return report;
}

FrequencyGrid FrequencyGrid::regular_grid(int p) {
  const int q = 2 * p - 1;
  const CenteredRange r{q};
  FrequencyGrid grid;
  grid.regular = true;
  grid.nodes.reserve(static_cast<std::size_t>(q) * q);
  for (int j = r.lo(); j <= r.hi(); ++j)
    for (int k = r.lo(); k <= r.hi(); ++k)
      grid.nodes.emplace_back(static_cast<double>(j) / q, static_cast<double>(k) / q);
  return grid;
}

FrequencyGrid FrequencyGrid::irregular(std::vector<Eigen::Vector2d> nodes) {
  FrequencyGrid grid;
  grid.regular = false;
  grid.nodes = std::move(nodes);
  return grid;
}

Complex field_at(const Eigen::MatrixXcd& values, int p, const Eigen::Vector2d& w) {
  const CenteredRange r{p};
  Eigen::VectorXcd e1(p), e2(p);
  for (int a = r.lo(); a <= r.hi(); ++a) {
    e1[r.to_storage(a)] = std::polar(1.0, -kTwoPi * a * w.x());
    e2[r.to_storage(a)] = std::polar(1.0, -kTwoPi * a * w.y());
  }
  return e1.transpose() * values * e2;
}

Complex field_at(const Projection2D& g, const Eigen::Vector2d& w) {
  return field_at(g.values(), g.p(), w);
}

DiffractionPattern diffraction_pattern(const Projection2D& g, const FrequencyGrid& grid,
                                       bool force) {
  if (!grid.regular) {
    const KadecReport kadec = kadec_check(grid.nodes, g.p());
    if (!kadec.pass && !force)
      throw KadecViolation("diffraction_pattern: irregular grid violates the 1/4 bound");
  }
  DiffractionPattern pat;
  pat.p = g.p();
  pat.grid = grid;
  pat.forced = force && !grid.regular;
  pat.intensities.resize(static_cast<Eigen::Index>(grid.nodes.size()));
  for (std::size_t i = 0; i < grid.nodes.size(); ++i)
    pat.intensities[static_cast<Eigen::Index>(i)] = std::norm(field_at(g, grid.nodes[i]));
  return pat;
}

RecoveredAutocorrelation recover_autocorrelation(const DiffractionPattern& pat, int p,
                                                 double cond_threshold) {
  const int q = 2 * p - 1;
  if (static_cast<int>(pat.grid.nodes.size()) != q * q)
    throw WrongNodeCount("recover_autocorrelation: expected (2p-1)^2 samples");
  const CenteredRange r{q};

  RecoveredAutocorrelation out{Autocorrelation2D(p), 1.0, false};

  if (pat.grid.regular) {
    // Inverse (2p-1)-point 2D DFT of the intensities.
    for (int m1 = r.lo(); m1 <= r.hi(); ++m1)
      for (int m2 = r.lo(); m2 <= r.hi(); ++m2) {
        Complex acc(0.0, 0.0);
        std::size_t idx = 0;
        for (int j = r.lo(); j <= r.hi(); ++j)
          for (int k = r.lo(); k <= r.hi(); ++k, ++idx)
            acc += pat.intensities[static_cast<Eigen::Index>(idx)] *
                   std::polar(1.0, kTwoPi * (m1 * j + m2 * k) / static_cast<double>(q));
        out.values.at(m1, m2) = acc / static_cast<double>(q * q);
      }
    return out;
  }

  const KadecReport kadec = kadec_check(pat.grid.nodes, p);
  if (!kadec.pass && !pat.forced)
    throw KadecViolation("recover_autocorrelation: irregular grid violates the 1/4 bound");

  // Dense sampling system: A[(node), (m1,m2)] = e^{-2 pi i m.w}.
  const int dim = q * q;
  Eigen::MatrixXcd A(dim, dim);
  for (int row = 0; row < dim; ++row) {
    const Eigen::Vector2d& w = pat.grid.nodes[static_cast<std::size_t>(row)];
    int col = 0;
    for (int m1 = r.lo(); m1 <= r.hi(); ++m1)
      for (int m2 = r.lo(); m2 <= r.hi(); ++m2, ++col)
        A(row, col) = std::polar(1.0, -kTwoPi * (m1 * w.x() + m2 * w.y()));
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd rhs = pat.intensities.cast<Complex>();
  const Eigen::VectorXcd sol = lu.solve(rhs);
  const double rcond = lu.rcond();
  out.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  out.ill_conditioned = out.condition > cond_threshold;
  int col = 0;
  for (int m1 = r.lo(); m1 <= r.hi(); ++m1)
    for (int m2 = r.lo(); m2 <= r.hi(); ++m2, ++col) out.values.at(m1, m2) = sol[col];
  return out;
}

Projection2D twin(const Projection2D& g) {
  if (g.p() % 2 == 0) throw EvenPadding("twin: padded side p must be odd");
  Projection2D out(g.p());
  const CenteredRange r = g.range();
  for (int a = r.lo(); a <= r.hi(); ++a)
    for (int b = r.lo(); b <= r.hi(); ++b) out.at(a, b) = std::conj(g.at(-a, -b));
  return out;
}

Projection2D orbit_transform(const Projection2D& g, const Eigen::Vector2i& shift,
                             double theta, bool twinned) {
  const Projection2D base = twinned ? twin(g) : g;
  const CenteredRange r = base.range();
  // out(n) = base(n + shift); support moves by -shift and must stay in Z_p^2.
  for (const auto& pt : support_points(base))
    if (!r.contains(pt.x() - shift.x()) || !r.contains(pt.y() - shift.y()))
      throw SupportOverflow("orbit_transform: shifted support leaves Z_p^2");
  Projection2D out(base.p());
  const Complex phase = std::polar(1.0, theta);
  for (int a = r.lo(); a <= r.hi(); ++a)
    for (int b = r.lo(); b <= r.hi(); ++b) {
      const int sa = a + shift.x();
      const int sb = b + shift.y();
      if (r.contains(sa) && r.contains(sb)) out.at(a, b) = phase * base.at(sa, sb);
    }
  return out;
}

}  // namespace tomophase
