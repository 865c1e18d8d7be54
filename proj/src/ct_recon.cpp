#include "tomophase/ct_recon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tomophase {

namespace {

Eigen::Vector3d frequency_triple(Axis family, double node, double j, double k) {
  switch (family) {
    case Axis::X: return {node, j, k};
    case Axis::Y: return {j, node, k};
    case Axis::Z: return {j, k, node};
  }
  return {0, 0, 0};
}

double wrap_mod(double v, int p) {
  double r = std::fmod(v, static_cast<double>(p));
  if (r < 0.0) r += p;
  return r;
}

// Deduplicates nodes mod p (keeping the first sample of each cluster) and,
// when more than n remain, greedily keeps the n nodes maximizing the minimal
// circular gap.
void select_nodes(std::vector<double>& nodes, Eigen::VectorXcd& samples, int n, int p,
                  double tol) {
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<std::size_t> distinct;
  for (std::size_t i : order) {
    bool dup = false;
    for (std::size_t j : distinct)
      if (circular_distance(nodes[i], nodes[j], p) < tol) {
        dup = true;
        break;
      }
    if (!dup) distinct.push_back(i);
  }
  if (static_cast<int>(distinct.size()) < n)
    throw SingularNodes("select_nodes: fewer than n distinct nodes mod p");

  std::vector<std::size_t> chosen;
  if (static_cast<int>(distinct.size()) == n) {
    chosen = distinct;
  } else {
    // Farthest-point selection, seeded with the widest pair.
    std::size_t best_a = 0, best_b = 1;
    double best = -1.0;
    for (std::size_t a = 0; a < distinct.size(); ++a)
      for (std::size_t b = a + 1; b < distinct.size(); ++b) {
        const double d = circular_distance(nodes[distinct[a]], nodes[distinct[b]], p);
        if (d > best) {
          best = d;
          best_a = a;
          best_b = b;
        }
      }
    std::vector<bool> used(distinct.size(), false);
    chosen.push_back(distinct[best_a]);
    chosen.push_back(distinct[best_b]);
    used[best_a] = used[best_b] = true;
    while (static_cast<int>(chosen.size()) < n) {
      std::size_t pick = 0;
      double pick_gap = -1.0;
      for (std::size_t c = 0; c < distinct.size(); ++c) {
        if (used[c]) continue;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t idx : chosen)
          gap = std::min(gap, circular_distance(nodes[distinct[c]], nodes[idx], p));
        if (gap > pick_gap) {
          pick_gap = gap;
          pick = c;
        }
      }
      chosen.push_back(distinct[pick]);
      used[pick] = true;
    }
  }

  std::vector<double> sel_nodes;
  Eigen::VectorXcd sel_samples(static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    sel_nodes.push_back(nodes[chosen[i]]);
    sel_samples[static_cast<Eigen::Index>(i)] = samples[static_cast<Eigen::Index>(chosen[i])];
  }
  nodes = std::move(sel_nodes);
  samples = std::move(sel_samples);
}

}  // namespace

DcCompletion complete_dc_slice(const Eigen::MatrixXcd& spectrum, int n, int p, double tol) {
  if (spectrum.rows() != p || spectrum.cols() != p)
    throw InvalidSize("complete_dc_slice: spectrum must be p x p");
  if (p < 2 * n - 1) throw InvalidSize("complete_dc_slice: p must satisfy p >= 2n-1");

  const CenteredRange rp{p};
  const CenteredRange rn{n};
  const double p2 = static_cast<double>(p) * p;

  // Inverse DFT with the DC entry zeroed.
  Eigen::MatrixXcd h0(p, p);
  for (int x = rp.lo(); x <= rp.hi(); ++x)
    for (int y = rp.lo(); y <= rp.hi(); ++y) {
      Complex acc(0.0, 0.0);
      for (int xi = rp.lo(); xi <= rp.hi(); ++xi)
        for (int eta = rp.lo(); eta <= rp.hi(); ++eta) {
          if (xi == 0 && eta == 0) continue;
          acc += spectrum(rp.to_storage(xi), rp.to_storage(eta)) *
                 std::polar(1.0, kTwoPi * (xi * x + eta * y) / static_cast<double>(p));
        }
      h0(rp.to_storage(x), rp.to_storage(y)) = acc / p2;
    }

  // The slice is h0 + dc/p^2 and must vanish outside Z_n^2; least squares
  // over every outside point gives dc.
  Complex sum_outside(0.0, 0.0);
  int outside_count = 0;
  for (int x = rp.lo(); x <= rp.hi(); ++x)
    for (int y = rp.lo(); y <= rp.hi(); ++y) {
      if (rn.contains(x) && rn.contains(y)) continue;
      sum_outside += h0(rp.to_storage(x), rp.to_storage(y));
      ++outside_count;
    }
  const Complex dc = -p2 * sum_outside / static_cast<double>(outside_count);

  double residual = 0.0;
  for (int x = rp.lo(); x <= rp.hi(); ++x)
    for (int y = rp.lo(); y <= rp.hi(); ++y) {
      if (rn.contains(x) && rn.contains(y)) continue;
      residual =
          std::max(residual, std::abs(h0(rp.to_storage(x), rp.to_storage(y)) + dc / p2));
    }
  if (residual > tol)
    throw InconsistentSpectrum("complete_dc_slice: completed slice does not vanish outside Z_n^2");

  DcCompletion out{Eigen::MatrixXcd(n, n), dc, residual};
  for (int x = rn.lo(); x <= rn.hi(); ++x)
    for (int y = rn.lo(); y <= rn.hi(); ++y)
      out.slice(rn.to_storage(x), rn.to_storage(y)) =
          h0(rp.to_storage(x), rp.to_storage(y)) + dc / p2;
  return out;
}

Reconstruction ct_reconstruct(const std::vector<Projection2D>& projections,
                              const Scheme& s, double tol) {
  const StrongCTReport ct = check_strong_ct(s);
  if (!ct.pass) throw StrongCTFailure("ct_reconstruct: scheme fails condition (strongCT)");
  const int m = static_cast<int>(s.slopes.size());
  if (static_cast<int>(projections.size()) < m)
    throw SizeMismatch("ct_reconstruct: fewer projections than scheme slopes");
  if (m < s.n) throw StrongCTFailure("ct_reconstruct: need at least n projections");

  const int n = s.n;
  const int p = s.p;
  const CenteredRange rp{p};
  const CenteredRange rn{n};

  // Per-slice spectra over the two non-family axes, DC column pending.
  std::vector<Eigen::MatrixXcd> spectra(static_cast<std::size_t>(n),
                                        Eigen::MatrixXcd::Zero(p, p));
  double max_condition = 1.0;

  for (int j = rp.lo(); j <= rp.hi(); ++j)
    for (int k = rp.lo(); k <= rp.hi(); ++k) {
      if (j == 0 && k == 0) continue;
      std::vector<double> nodes;
      Eigen::VectorXcd samples(m);
      nodes.reserve(static_cast<std::size_t>(m));
      for (int l = 0; l < m; ++l) {
        nodes.push_back(wrap_mod(-s.slopes[l][0] * j - s.slopes[l][1] * k, p));
        samples[l] = dft2_at(projections[static_cast<std::size_t>(l)], j, k);
      }
      select_nodes(nodes, samples, n, p, 1e-9);
      const VandermondeSolution sol =
          solve_vandermonde_column(VandermondeColumn{nodes, samples, n, p});
      max_condition = std::max(max_condition, sol.condition);
      for (int t = rn.lo(); t <= rn.hi(); ++t)
        spectra[static_cast<std::size_t>(rn.to_storage(t))](rp.to_storage(j),
                                                            rp.to_storage(k)) =
            sol.coefficients[rn.to_storage(t)];
    }

  Reconstruction rec{Object3D(n, p), max_condition};
  const double dc_tol = tol * (1.0 + max_condition);
  for (int t = rn.lo(); t <= rn.hi(); ++t) {
    const DcCompletion dc =
        complete_dc_slice(spectra[static_cast<std::size_t>(rn.to_storage(t))], n, p, dc_tol);
    for (int u = rn.lo(); u <= rn.hi(); ++u)
      for (int v = rn.lo(); v <= rn.hi(); ++v) {
        const Complex value = dc.slice(rn.to_storage(u), rn.to_storage(v));
        switch (s.family) {
          case Axis::X: rec.object.at(t, u, v) = value; break;
          case Axis::Y: rec.object.at(u, t, v) = value; break;
          case Axis::Z: rec.object.at(u, v, t) = value; break;
        }
      }
  }
  return rec;
}

const char* to_string(AmbiguityKind k) {
  switch (k) {
    case AmbiguityKind::UniqueUpToPhase: return "UniqueUpToPhase";
    case AmbiguityKind::CommonProjectionAmbiguity: return "CommonProjectionAmbiguity";
    case AmbiguityKind::Inconsistent: return "Inconsistent";
  }
  return "?";
}

AmbiguityVerdict ambiguity_classify(const std::vector<Projection2D>& projections,
                                    const Scheme& s, double tol) {
  if (!s.extra)
    throw ZeroExtraDirection("ambiguity_classify: scheme carries no extra direction");
  const int n = s.n;
  if (static_cast<int>(projections.size()) != n + 1)
    throw SizeMismatch("ambiguity_classify: expected n base projections plus the extra");

  const int p = s.p;
  const CenteredRange rp{p};

  // Pointwise agreement of the base-direction projection spectra.
  Eigen::MatrixXcd common(p, p);
  double spread = 0.0;
  for (int j = rp.lo(); j <= rp.hi(); ++j)
    for (int k = rp.lo(); k <= rp.hi(); ++k) {
      const Complex c0 = dft2_at(projections[0], j, k);
      common(rp.to_storage(j), rp.to_storage(k)) = c0;
      for (int l = 1; l < n; ++l)
        spread = std::max(
            spread, std::abs(dft2_at(projections[static_cast<std::size_t>(l)], j, k) - c0));
    }

  AmbiguityVerdict verdict;
  verdict.base_spectrum_spread = spread;
  verdict.extra_support = SupportClass::Empty;
  if (spread > tol) {
    verdict.kind = AmbiguityKind::UniqueUpToPhase;
    verdict.note = "base projection spectra differ across directions";
    return verdict;
  }

  // Direction-independent spectra: solve the constant-right-hand-side
  // Vandermonde system per frequency pair and confirm the solution is the
  // discrete delta at 0, which forces planar support.
  for (int j = rp.lo(); j <= rp.hi(); ++j)
    for (int k = rp.lo(); k <= rp.hi(); ++k) {
      if (j == 0 && k == 0) continue;
      std::vector<double> nodes;
      const Complex c = common(rp.to_storage(j), rp.to_storage(k));
      Eigen::VectorXcd samples(n);
      for (int l = 0; l < n; ++l) {
        nodes.push_back(wrap_mod(-s.slopes[l][0] * j - s.slopes[l][1] * k, p));
        samples[l] = c;
      }
      const VandermondeSolution sol =
          solve_vandermonde_column(VandermondeColumn{nodes, samples, n, p});
      const double delta_tol = tol * (1.0 + sol.condition);
      const CenteredRange rn{n};
      for (int t = rn.lo(); t <= rn.hi(); ++t) {
        const Complex expected = t == 0 ? c : Complex(0.0, 0.0);
        if (std::abs(sol.coefficients[rn.to_storage(t)] - expected) > delta_tol) {
          verdict.kind = AmbiguityKind::Inconsistent;
          verdict.note = "constant-spectrum column is not a discrete delta at 0";
          return verdict;
        }
      }
    }

  // Any consistent object is supported on the coordinate plane orthogonal to
  // the base family axis; its extra-direction projection would be a line
  // object, so the given extra projection must be line-compatible.
  verdict.extra_support = classify_support(support_points(projections.back(), tol));
  if (line_compatible(verdict.extra_support)) {
    verdict.kind = AmbiguityKind::CommonProjectionAmbiguity;
    verdict.common_projection = projections[0];
    verdict.note = "planar-support ambiguity consistent with the extra projection";
  } else {
    verdict.kind = AmbiguityKind::Inconsistent;
    verdict.note = "extra projection is not a line object, refuting planar support";
  }
  return verdict;
}

NullObject deficiency_null_object(const Scheme& s, double node_tol) {
  const int n = s.n;
  const int p = s.p;
  const CenteredRange rp{p};
  const CenteredRange rn{n};
  const int dim = n * n * n;

  const Object3D layout(n, p);  // index layout reference
  std::vector<Eigen::VectorXcd> rows;
  for (int j = rp.lo(); j <= rp.hi(); ++j)
    for (int k = rp.lo(); k <= rp.hi(); ++k) {
      // Distinct node values mod p at this frequency pair.
      std::vector<double> nodes;
      for (const auto& ab : s.slopes) {
        const double v = wrap_mod(-ab[0] * j - ab[1] * k, p);
        bool dup = false;
        for (double u : nodes)
          if (circular_distance(u, v, p) < node_tol) {
            dup = true;
            break;
          }
        if (!dup) nodes.push_back(v);
      }
      for (double node : nodes) {
        const Eigen::Vector3d w = frequency_triple(s.family, node, j, k);
        Eigen::VectorXcd row(dim);
        for (int x = rn.lo(); x <= rn.hi(); ++x)
          for (int y = rn.lo(); y <= rn.hi(); ++y)
            for (int z = rn.lo(); z <= rn.hi(); ++z)
              row[static_cast<Eigen::Index>(layout.index(x, y, z))] = std::polar(
                  1.0, -kTwoPi * (w.x() * x + w.y() * y + w.z() * z) / static_cast<double>(p));
        rows.push_back(std::move(row));
      }
    }

  Eigen::MatrixXcd A(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) A.row(static_cast<Eigen::Index>(r)) = rows[r];

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const Eigen::VectorXcd null_vec = svd.matrixV().col(dim - 1);

  NullObject out{Object3D(n, p), (A * null_vec).norm()};
  out.object.values() = null_vec / null_vec.norm();
  return out;
}

}  // namespace tomophase
