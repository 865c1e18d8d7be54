#include "tomophase/schemes.hpp"

#include <algorithm>
#include <cmath>

#include "tomophase/spectral.hpp"

namespace tomophase {

Direction realize_extra(const Scheme& s) {
  if (!s.extra) throw ZeroExtraDirection("realize_extra: scheme has no extra direction");
  const double a0 = (*s.extra)[0];
  const double b0 = (*s.extra)[1];
  if (a0 == 0.0 && b0 == 0.0)
    throw ZeroExtraDirection("realize_extra: extra direction must be nonzero");
  const bool use_first = b0 != 0.0 && std::abs(a0 / b0) <= 1.0;
  const double ratio = use_first ? a0 / b0 : b0 / a0;
  switch (s.family) {
    case Axis::X:  // direction (0, a0, b0)
      return use_first ? Direction{Axis::Z, 0.0, ratio} : Direction{Axis::Y, 0.0, ratio};
    case Axis::Y:  // direction (a0, 0, b0)
      return use_first ? Direction{Axis::Z, ratio, 0.0} : Direction{Axis::X, 0.0, ratio};
    case Axis::Z:  // direction (a0, b0, 0)
      return use_first ? Direction{Axis::Y, ratio, 0.0} : Direction{Axis::X, ratio, 0.0};
  }
  throw Error("realize_extra: unreachable");
}

std::vector<Direction> Scheme::directions() const {
  std::vector<Direction> dirs;
  dirs.reserve(slopes.size() + (extra ? 1 : 0));
  for (const auto& ab : slopes) dirs.push_back(Direction{family, ab[0], ab[1]});
  if (extra) dirs.push_back(realize_extra(*this));
  return dirs;
}

int distinct_node_count(const Scheme& s, int j, int k, double tol) {
  std::vector<double> values;
  values.reserve(s.slopes.size());
  for (const auto& ab : s.slopes) {
    double v = std::fmod(ab[0] * j + ab[1] * k, static_cast<double>(s.p));
    if (v < 0.0) v += s.p;
    values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  int count = 1;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] >= tol) ++count;
  // Circular wrap: the first and last clusters may coincide mod p.
  if (count > 1 && values.front() + s.p - values.back() < tol) --count;
  return count;
}

StrongCTReport check_strong_ct(const Scheme& s, double tol) {
  const CenteredRange r{s.p};
  StrongCTReport report{true, {0, 0}, static_cast<int>(s.slopes.size()) + 1, tol};
  for (int j = r.lo(); j <= r.hi(); ++j)
    for (int k = r.lo(); k <= r.hi(); ++k) {
      if (j == 0 && k == 0) continue;
      const int count = distinct_node_count(s, j, k, tol);
      if (count < report.worst_count) {
        report.worst_count = count;
        report.worst_pair = {j, k};
      }
    }
  report.pass = report.worst_count >= s.n;
  return report;
}

Scheme random_scheme(int n, Axis family, std::uint64_t seed) {
  if (n < 1) throw InvalidSize("random_scheme: n must be >= 1");
  Scheme s{family, {}, std::nullopt, n, 2 * n - 1};
  Rng rng(seed);
  s.slopes.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l)
    s.slopes.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  return s;
}

Scheme rotation_scheme(double gamma, int m, Axis family, int n) {
  if (gamma <= 0.0 || gamma > 1.0)
    throw GammaOutOfRange("rotation_scheme: gamma must lie in (0, 1]");
  if (m < 1) throw InvalidSize("rotation_scheme: m must be >= 1");
  if (n <= 0) n = m;
  Scheme s{family, {}, std::nullopt, n, 2 * n - 1};
  s.slopes.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double t = kTwoPi * j / m;
    s.slopes.push_back({gamma * std::cos(t), gamma * std::sin(t)});
  }
  return s;
}

Scheme tom2_scheme(const Scheme& base, const std::array<double, 2>& extra) {
  if (extra[0] == 0.0 && extra[1] == 0.0)
    throw ZeroExtraDirection("tom2_scheme: extra direction must be nonzero");
  if (static_cast<int>(base.slopes.size()) != base.n)
    throw StrongCTFailure("tom2_scheme: base scheme must carry exactly n slopes");
  const StrongCTReport report = check_strong_ct(base);
  if (!report.pass)
    throw StrongCTFailure("tom2_scheme: base scheme fails condition (strongCT)");
  Scheme s = base;
  s.extra = extra;
  realize_extra(s);  // validates the case split
  return s;
}

}  // namespace tomophase
