#pragma once

#include <string>
#include <vector>

#include "tomophase/diffraction.hpp"
#include "tomophase/schemes.hpp"

namespace tomophase {

/// Coded diffraction patterns of one object under one mask, one pattern per
/// scheme direction (n+1 when the scheme carries an extra direction).
struct CodedDataSet {
  Scheme scheme;
  Mask2D mask;
  std::vector<DiffractionPattern> patterns;
};

CodedDataSet coded_data(const Object3D& f, const Mask2D& mu, const Scheme& s);

/// Max deviation over directions and grid nodes between the two data sets.
double data_distance(const CodedDataSet& a, const CodedDataSet& b);

struct InvarianceReport {
  double global_phase_deviation;   // e^{i theta} f vs f, any mask
  double plain_twin_deviation;     // per-projection twin under mu == 1
  double coded_twin_min_deviation; // smallest per-trial twin deviation, random masks
  int twin_trials;
  int twin_witness_hits;  // trials with deviation above the witness threshold
  double witness_threshold;
};

/// Forward checks of the intensity-data invariances: (a) global phase leaves
/// coded data unchanged; (b) the twin image shares the plain-mask pattern;
/// (c) under random masks the twin patterns generically differ (statistical
/// witness over seeded trials).
InvarianceReport invariance_suite(const Object3D& f, const Mask2D& mu, const Scheme& s,
                                  int trials = 100, std::uint64_t trial_seed = 2026);

/// Max coded-data deviation between two objects under the same mask/scheme.
double distinguish(const Object3D& f, const Object3D& g, const Mask2D& mu,
                   const Scheme& s);

struct OracleOptions {
  double merge_tol = 1e-9;  // same-class pattern distance
  double gap = 1e-6;        // distinct-class pattern distance
  double support_eps = 1e-9;
  std::size_t budget = 10000000;
};

struct OracleClass {
  std::vector<std::size_t> members;  // enumeration ids
  bool phase_orbit_pure;
};

struct OracleAnomaly {
  std::vector<std::size_t> ids;
  std::string what;
};

struct OracleReport {
  std::vector<OracleClass> classes;
  std::vector<OracleAnomaly> anomalies;
  std::size_t enumerated;
  std::size_t admissible;
};

/// Enumerates every assignment of alphabet values to the support voxels,
/// keeps the objects whose projections are non-line in every scheme
/// direction, and buckets them by coded data under the given mask. Sound
/// bucketing: distances <= merge_tol join a class, distances inside
/// (merge_tol, gap) are flagged as anomalies. Each class is then checked to
/// be exactly one global-phase orbit {f, if, -f, -if}.
/// Object ids are mixed-radix words over the alphabet, support order major.
OracleReport exhaustive_oracle(const std::vector<Eigen::Vector3i>& support,
                               const std::vector<Complex>& alphabet, const Mask2D& mu,
                               const Scheme& s, const OracleOptions& opts = {});

/// Re-runs anomalous oracles under two further seeded masks and keeps only
/// the anomalies that persist in all three runs, separating measure-zero
/// mask coincidences from genuine counterexamples.
OracleReport oracle_with_rerun(const std::vector<Eigen::Vector3i>& support,
                               const std::vector<Complex>& alphabet, const Mask2D& mu,
                               const Scheme& s, const OracleOptions& opts = {});

}  // namespace tomophase
