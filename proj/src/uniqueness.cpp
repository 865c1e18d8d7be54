#include "tomophase/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace tomophase {

CodedDataSet coded_data(const Object3D& f, const Mask2D& mu, const Scheme& s) {
  if (mu.p() != s.p) throw SizeMismatch("coded_data: mask size differs from scheme period");
  if (f.n() != s.n || f.p() != s.p)
    throw SizeMismatch("coded_data: object dimensions differ from scheme");

  CodedDataSet out{s, mu, {}};
  const FrequencyGrid grid = FrequencyGrid::regular_grid(s.p);
  for (const Direction& d : s.directions()) {
    DiffractionPattern pat = diffraction_pattern(apply_mask(project(f, d), mu), grid);
    pat.mask_seed = mu.seed;
    out.patterns.push_back(std::move(pat));
  }
  return out;
}

double data_distance(const CodedDataSet& a, const CodedDataSet& b) {
  if (a.patterns.size() != b.patterns.size())
    throw SizeMismatch("data_distance: pattern counts differ");
  double d = 0.0;
  for (std::size_t t = 0; t < a.patterns.size(); ++t) {
    if (a.patterns[t].intensities.size() != b.patterns[t].intensities.size())
      throw SizeMismatch("data_distance: grid sizes differ");
    d = std::max(
        d, (a.patterns[t].intensities - b.patterns[t].intensities).cwiseAbs().maxCoeff());
  }
  return d;
}

InvarianceReport invariance_suite(const Object3D& f, const Mask2D& mu, const Scheme& s,
                                  int trials, std::uint64_t trial_seed) {
  InvarianceReport rep{};
  rep.witness_threshold = 1e-6;

  // (a) global phase.
  Object3D fp = f;
  fp.values() *= std::polar(1.0, 0.7);
  rep.global_phase_deviation = data_distance(coded_data(f, mu, s), coded_data(fp, mu, s));

  // Per-direction projections, reused below.
  std::vector<Projection2D> projections;
  for (const Direction& d : s.directions()) projections.push_back(project(f, d));
  const FrequencyGrid grid = FrequencyGrid::regular_grid(s.p);
  const Mask2D plain = plain_mask(s.p);

  // (b) twin under the plain mask.
  rep.plain_twin_deviation = 0.0;
  for (const Projection2D& g : projections) {
    const DiffractionPattern a = diffraction_pattern(apply_mask(g, plain), grid);
    const DiffractionPattern b = diffraction_pattern(apply_mask(twin(g), plain), grid);
    rep.plain_twin_deviation =
        std::max(rep.plain_twin_deviation, (a.intensities - b.intensities).cwiseAbs().maxCoeff());
  }

  // (c) twin under random masks: generically visible.
  rep.twin_trials = trials;
  rep.twin_witness_hits = 0;
  rep.coded_twin_min_deviation = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Mask2D m = random_mask(s.p, trial_seed + static_cast<std::uint64_t>(t));
    double dev = 0.0;
    for (const Projection2D& g : projections) {
      const DiffractionPattern a = diffraction_pattern(apply_mask(g, m), grid);
      const DiffractionPattern b = diffraction_pattern(apply_mask(twin(g), m), grid);
      dev = std::max(dev, (a.intensities - b.intensities).cwiseAbs().maxCoeff());
    }
    rep.coded_twin_min_deviation = std::min(rep.coded_twin_min_deviation, dev);
    if (dev > rep.witness_threshold) ++rep.twin_witness_hits;
  }
  if (trials == 0) rep.coded_twin_min_deviation = 0.0;
  return rep;
}

double distinguish(const Object3D& f, const Object3D& g, const Mask2D& mu,
                   const Scheme& s) {
  return data_distance(coded_data(f, mu, s), coded_data(g, mu, s));
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

OracleReport exhaustive_oracle(const std::vector<Eigen::Vector3i>& support,
                               const std::vector<Complex>& alphabet, const Mask2D& mu,
                               const Scheme& s, const OracleOptions& opts) {
  const int n = s.n;
  const int p = s.p;
  if (mu.p() != p) throw SizeMismatch("exhaustive_oracle: mask size differs from scheme");
  const CenteredRange rn{n};
  for (const auto& v : support)
    if (!rn.contains(v.x()) || !rn.contains(v.y()) || !rn.contains(v.z()))
      throw InvalidSize("exhaustive_oracle: support voxel outside Z_n^3");

  const std::size_t nvox = support.size();
  const std::size_t nsym = alphabet.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < nvox; ++i) {
    if (total > opts.budget / std::max<std::size_t>(nsym, 1))
      throw BudgetExceeded("exhaustive_oracle: |alphabet|^|support| exceeds the budget");
    total *= nsym;
  }

  // The global phases under test permute the alphabet.
  std::vector<std::size_t> rot(nsym);
  for (std::size_t a = 0; a < nsym; ++a) {
    const Complex target = Complex(0.0, 1.0) * alphabet[a];
    bool found = false;
    for (std::size_t b = 0; b < nsym; ++b)
      if (std::abs(alphabet[b] - target) < 1e-12) {
        rot[a] = b;
        found = true;
        break;
      }
    if (!found) throw Error("exhaustive_oracle: alphabet not closed under multiplication by i");
  }

  // Linear responses: per direction the projection of each unit voxel, and
  // its masked Fourier transform at every grid node.
  const std::vector<Direction> dirs = s.directions();
  const FrequencyGrid grid = FrequencyGrid::regular_grid(p);
  const std::size_t nnodes = grid.nodes.size();
  const Eigen::MatrixXcd mask_field = mu.field();

  std::vector<std::vector<Eigen::MatrixXcd>> resp(dirs.size());
  // node_resp[t] is (nnodes x nvox): masked field response of voxel v at node q.
  std::vector<Eigen::MatrixXcd> node_resp(dirs.size());
  for (std::size_t t = 0; t < dirs.size(); ++t) {
    resp[t].reserve(nvox);
    node_resp[t].resize(static_cast<Eigen::Index>(nnodes), static_cast<Eigen::Index>(nvox));
    for (std::size_t v = 0; v < nvox; ++v) {
      Object3D unit(n, p);
      unit.at(support[v].x(), support[v].y(), support[v].z()) = 1.0;
      const Projection2D g = project(unit, dirs[t]);
      const Eigen::MatrixXcd masked = g.values().cwiseProduct(mask_field);
      for (std::size_t q = 0; q < nnodes; ++q)
        node_resp[t](static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(v)) =
            field_at(masked, p, grid.nodes[q]);
      resp[t].push_back(g.values());
    }
  }

  const CenteredRange rp{p};
  const auto digits_of = [&](std::size_t id, std::vector<std::size_t>& digits) {
    for (std::size_t v = 0; v < nvox; ++v) {
      digits[v] = id % nsym;
      id /= nsym;
    }
  };
  const auto admissible_object = [&](const std::vector<std::size_t>& digits) {
    std::vector<Eigen::Vector2i> pts;
    for (std::size_t t = 0; t < dirs.size(); ++t) {
      pts.clear();
      for (int c1 = rp.lo(); c1 <= rp.hi(); ++c1)
        for (int c2 = rp.lo(); c2 <= rp.hi(); ++c2) {
          Complex acc(0.0, 0.0);
          for (std::size_t v = 0; v < nvox; ++v)
            acc += alphabet[digits[v]] * resp[t][v](rp.to_storage(c1), rp.to_storage(c2));
          if (std::abs(acc) > opts.support_eps) pts.push_back({c1, c2});
        }
      if (line_compatible(classify_support(pts))) return false;
    }
    return true;
  };
  const auto pattern_of = [&](const std::vector<std::size_t>& digits, Eigen::VectorXd& out) {
    Eigen::Index row = 0;
    for (std::size_t t = 0; t < dirs.size(); ++t)
      for (std::size_t q = 0; q < nnodes; ++q) {
        Complex acc(0.0, 0.0);
        for (std::size_t v = 0; v < nvox; ++v)
          acc += alphabet[digits[v]] *
                 node_resp[t](static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(v));
        out[row++] = std::norm(acc);
      }
  };

  // Pass 1: admissibility filter, keeping a cheap sort key (first intensity).
  struct Entry {
    std::size_t id;
    double key;
  };
  std::vector<Entry> entries;
  std::vector<std::size_t> digits(nvox);
  const Eigen::Index pat_len = static_cast<Eigen::Index>(dirs.size() * nnodes);
  Eigen::VectorXd pat(pat_len);
  for (std::size_t id = 0; id < total; ++id) {
    digits_of(id, digits);
    if (!admissible_object(digits)) continue;
    pattern_of(digits, pat);
    entries.push_back({id, pat[0]});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });

  // Pass 2: sweep over the sorted first intensity. Any pair closer than the
  // class gap in the full metric must be closer than the gap in the first
  // coordinate, so comparing inside the sliding window is exhaustive.
  OracleReport report{};
  report.enumerated = total;
  report.admissible = entries.size();
  DisjointSets sets(entries.size());
  std::deque<std::pair<std::size_t, Eigen::VectorXd>> window;  // sorted-pos, pattern
  Eigen::VectorXd cur(pat_len);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    digits_of(entries[i].id, digits);
    pattern_of(digits, cur);
    while (!window.empty() && entries[i].key - entries[window.front().first].key > opts.gap)
      window.pop_front();
    for (const auto& [j, other] : window) {
      const double d = (cur - other).cwiseAbs().maxCoeff();
      if (d <= opts.merge_tol) {
        sets.unite(i, j);
      } else if (d < opts.gap) {
        report.anomalies.push_back(
            {{entries[i].id, entries[j].id},
             "pattern distance " + std::to_string(d) + " inside the ambiguity band"});
      }
    }
    window.emplace_back(i, cur);
  }

  // Collect classes and check each is one global-phase orbit.
  const auto rotate_id = [&](std::size_t id) {
    digits_of(id, digits);
    std::size_t out = 0;
    for (std::size_t v = nvox; v-- > 0;) out = out * nsym + rot[digits[v]];
    return out;
  };
  std::vector<std::vector<std::size_t>> groups(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    groups[sets.find(i)].push_back(entries[i].id);
  for (auto& members : groups) {
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    std::vector<std::size_t> orbit{members[0]};
    for (std::size_t id = rotate_id(members[0]); id != members[0]; id = rotate_id(id))
      orbit.push_back(id);
    std::sort(orbit.begin(), orbit.end());
    OracleClass cls{members, orbit == members};
    if (!cls.phase_orbit_pure)
      report.anomalies.push_back({members, "class is not a single global-phase orbit"});
    report.classes.push_back(std::move(cls));
  }
  std::sort(report.classes.begin(), report.classes.end(),
            [](const OracleClass& a, const OracleClass& b) {
              return a.members.front() < b.members.front();
            });
  return report;
}

OracleReport oracle_with_rerun(const std::vector<Eigen::Vector3i>& support,
                               const std::vector<Complex>& alphabet, const Mask2D& mu,
                               const Scheme& s, const OracleOptions& opts) {
  OracleReport first = exhaustive_oracle(support, alphabet, mu, s, opts);
  if (first.anomalies.empty()) return first;

  const std::uint64_t base = mu.seed.value_or(1);
  std::vector<OracleReport> reruns;
  for (std::uint64_t k = 1; k <= 2; ++k)
    reruns.push_back(exhaustive_oracle(
        support, alphabet, random_mask(s.p, base + 0x9e3779b97f4a7c15ULL * k), s, opts));

  // An anomaly survives only if the same object ids misbehave under all
  // three masks.
  std::vector<OracleAnomaly> confirmed;
  for (const OracleAnomaly& a : first.anomalies) {
    bool everywhere = true;
    for (const OracleReport& r : reruns) {
      const bool present =
          std::any_of(r.anomalies.begin(), r.anomalies.end(),
                      [&](const OracleAnomaly& b) { return b.ids == a.ids; });
      if (!present) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) confirmed.push_back(a);
  }
  first.anomalies = std::move(confirmed);
  return first;
}

}  // namespace tomophase
