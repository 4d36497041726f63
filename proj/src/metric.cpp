#include "strukt/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "strukt/error.hpp"

namespace strukt {

FiniteMetric::FiniteMetric(std::vector<Point> points, std::vector<double> dist) {
  const std::size_t n = points.size();
  if (dist.size() != n * n) throw ValidationError("distance table has wrong size");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  points_.resize(n);
  dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    points_[i] = points[perm[i]];
    for (std::size_t j = 0; j < n; ++j) dist_[i * n + j] = dist[perm[i] * n + perm[j]];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (points_[i] == points_[i + 1]) throw ValidationError("duplicate point identifier");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_[i * n + i] != 0) throw ValidationError("nonzero self-distance");
    for (std::size_t j = 0; j < n; ++j) {
      double d = dist_[i * n + j];
      if (!(d >= 0) || !std::isfinite(d)) throw ValidationError("negative or non-finite distance");
      if (d != dist_[j * n + i]) throw ValidationError("asymmetric distance");
      for (std::size_t k = 0; k < n; ++k) {
        double via = dist_[i * n + k] + dist_[k * n + j];
        if (d > via + 1e-9 * std::max(1.0, via)) throw ValidationError("triangle inequality violated");
      }
    }
  }
}

bool FiniteMetric::contains(Point p) const { return std::binary_search(points_.begin(), points_.end(), p); }

std::size_t FiniteMetric::index(Point p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) throw DomainError("point " + std::to_string(p) + " not in metric");
  return static_cast<std::size_t>(it - points_.begin());
}

double FiniteMetric::operator()(Point a, Point b) const {
  return dist_[index(a) * points_.size() + index(b)];
}

std::vector<double> sparsify_radii(double t, int n, const std::function<double(double)>& f) {
  if (n <= 0) throw ContractError("n > 0");
  std::vector<double> ts{t};
  for (int i = 1; i < n; ++i) {
    double step = f(ts.back());
    if (!(step > 0)) throw ContractError("f positive");
    ts.push_back(ts.back() + step);
  }
  return ts;
}

SparsifyResult metric_sparsify(const FiniteMetric& m, std::span<const Point> Z, std::span<const Point> U,
                               std::span<const Point> anchored, double t, int n,
                               const std::function<double(double)>& f) {
  if (!(t > 0)) throw ContractError("t > 0");
  std::set<Point> zs(Z.begin(), Z.end());
  std::set<Point> pinned(anchored.begin(), anchored.end());
  for (Point p : zs) {
    if (!m.contains(p)) throw ContractError("Z within metric");
  }
  for (Point u : U) {
    if (!m.contains(u)) throw ContractError("U within metric");
  }
  if (static_cast<long long>(zs.size()) > n) throw ContractError("|Z| <= n");
  const std::vector<double> ts = sparsify_radii(t, n, f);
  const double bound = ts.back();

  for (Point u : U) {
    bool covered = std::any_of(zs.begin(), zs.end(), [&](Point z) { return m(u, z) < t; });
    if (!covered) throw ContractError("every u in U within distance < t of Z");
  }
  for (Point p : pinned) {
    if (!zs.count(p)) throw ContractError("Z'' subset of Z");
  }
  for (auto a = pinned.begin(); a != pinned.end(); ++a) {
    for (auto b = std::next(a); b != pinned.end(); ++b) {
      if (m(*a, *b) < bound) throw ContractError("points of Z'' pairwise at distance >= T");
    }
  }

  std::vector<Point> kept(zs.begin(), zs.end());
  std::size_t step = 0;
  for (;;) {
    const double sep = f(ts[step]);
    bool removed = false;
    for (std::size_t i = 0; i < kept.size() && !removed; ++i) {
      for (std::size_t j = i + 1; j < kept.size() && !removed; ++j) {
        if (m(kept[i], kept[j]) >= sep) continue;
        std::size_t victim = !pinned.count(kept[j]) ? j : i;
        if (pinned.count(kept[victim])) {
          // Unreachable when the preconditions hold: anchored points are T-separated.
          throw ContractError("points of Z'' pairwise at distance >= T");
        }
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(victim));
        removed = true;
      }
    }
    if (!removed) break;
    ++step;
  }
  return {std::move(kept), ts[step]};
}

}  // namespace strukt
