#pragma once

#include <functional>
#include <span>
#include <vector>

namespace strukt {

using Point = int;

/// Finite metric space on sorted point identifiers with a dense distance table.
class FiniteMetric {
 public:
  /// `dist` is row-major |points|×|points| in the order of `points` (sorted on entry).
  /// Throws ValidationError unless it is a metric (zero diagonal, symmetric,
  /// nonnegative, triangle inequality up to 1e-9 relative slack).
  FiniteMetric(std::vector<Point> points, std::vector<double> dist);

  const std::vector<Point>& points() const { return points_; }
  bool contains(Point p) const;
  double operator()(Point a, Point b) const;

 private:
  std::size_t index(Point p) const;

  std::vector<Point> points_;
  std::vector<double> dist_;
};

struct SparsifyResult {
  std::vector<Point> kept;  // Z'
  double radius = 0;        // t'
};

/// t_0 = t, t_i = t_{i-1} + f(t_{i-1}) for 1 <= i <= n-1. The last entry is the bound T.
std::vector<double> sparsify_radii(double t, int n, const std::function<double(double)>& f);

/// Greedy sparsification of a covering set.
///
/// Given Z (|Z| <= n) covering U at radius < t, repeatedly drops a point of Z
/// that is closer than f(t_i) to another kept point, advancing the radius to
/// t_{i+1}, until the kept points are f(t_i)-separated. Points of `anchored`
/// (Z'') are never dropped. Among violating pairs the lexicographically
/// smallest (by identifier) is resolved, dropping its larger identifier
/// unless that one is anchored.
///
/// Result: kept ⊆ Z, anchored ⊆ kept, radius ∈ {t_0..t_{n-1}}, every u in U
/// within < radius of kept, kept pairwise >= f(radius) apart.
/// Throws ContractError naming the violated precondition.
SparsifyResult metric_sparsify(const FiniteMetric& m, std::span<const Point> Z, std::span<const Point> U,
                               std::span<const Point> anchored, double t, int n,
                               const std::function<double(double)>& f);

}  // namespace strukt
