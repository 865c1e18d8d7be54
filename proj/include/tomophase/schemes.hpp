#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tomophase/xray.hpp"

namespace tomophase {

/// A tagged family of projection directions: m slope pairs in one line
/// family, plus an optional extra orthogonal direction (the tomographic
/// phase-retrieval schemes carry n base slopes and one extra).
struct Scheme {
  Axis family;
  std::vector<std::array<double, 2>> slopes;
  std::optional<std::array<double, 2>> extra;
  int n;  // intended object side
  int p;  // period

  /// Concrete line families: the base slopes in `family`, then the realized
  /// extra direction when present.
  std::vector<Direction> directions() const;
};

/// Maps the extra orthogonal direction (zero component along the base
/// family's axis) to a concrete line family. For base family X the direction
/// vector (0, a0, b0) becomes the Z family with slopes (0, a0/b0) when
/// |a0/b0| <= 1, else the Y family with slopes (0, b0/a0); analogous splits
/// for Y and Z bases.
Direction realize_extra(const Scheme& s);

struct StrongCTReport {
  bool pass;
  Eigen::Vector2i worst_pair;
  int worst_count;
  double tol;
};

/// Number of distinct values of alpha_l j + beta_l k mod p, where values at
/// circular distance >= tol count as distinct.
int distinct_node_count(const Scheme& s, int j, int k, double tol = 1e-9);

/// Uniqueness-of-CT condition: every nonzero integer pair (j, k) in Z_p^2
/// must see at least n distinct node values.
StrongCTReport check_strong_ct(const Scheme& s, double tol = 1e-9);

/// m i.i.d. uniform slope pairs on (-1,1)^2; deterministic per seed.
Scheme random_scheme(int n, Axis family, std::uint64_t seed);

/// Rotated projections at a fixed angle: slopes (gamma cos t_j, gamma sin t_j)
/// with equispaced angles.
Scheme rotation_scheme(double gamma, int m, Axis family = Axis::Z, int n = 0);

/// Attaches the extra orthogonal direction; the base must pass (strongCT)
/// with m = n and the extra pair must be nonzero.
Scheme tom2_scheme(const Scheme& base, const std::array<double, 2>& extra);

}  // namespace tomophase
