#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace acn {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct Reflection {
  double distance;  ///< dist(x, boundary) = R - |x|
  Vec2 zeta;        ///< nearest boundary point
  Vec2 xtilde;      ///< mirror image 2 zeta - x
};

/// Disk of radius R centred at the origin. The reciprocal of the largest
/// principal curvature, c2, equals R.
class DiskGeometry {
 public:
  explicit DiskGeometry(double radius);

  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double c2() const { return radius_; }

  [[nodiscard]] bool contains(const Vec2& x) const { return x.norm() <= radius_; }

  /// Outer unit normal at the boundary point nearest to x (x != 0).
  [[nodiscard]] Vec2 normal(const Vec2& x) const;

  /// Requires 0 < |x| <= R; throws std::domain_error at the centre.
  [[nodiscard]] Reflection nearest_and_reflect(const Vec2& x) const;

  /// Interior tubular neighbourhood N_r = { x : R - r < |x| <= R }.
  [[nodiscard]] bool in_tube(const Vec2& x, double r) const {
    const double n = x.norm();
    return n <= radius_ && radius_ - n < r;
  }

 private:
  double radius_;
};

/// Mirror image of x across the sphere |x| = R for x != 0, valid in any
/// dimension: 2 R x/|x| - x. No domain check; kernels use this extension
/// slightly outside the ball when differencing across the boundary.
template <class V>
V reflect_across_sphere(const V& x, double radius) {
  const double n = x.norm();
  if (n == 0.0) throw std::domain_error("reflection undefined at focal point");
  return (2.0 * radius / n - 1.0) * x;
}

/// Radial cutoff: 1 on B_{c2/4}, 0 outside B_{c2/2}, quintic smoothstep
/// in between (C^2, nonincreasing).
class CutoffEta {
 public:
  explicit CutoffEta(double c2);

  [[nodiscard]] double c2() const { return c2_; }
  [[nodiscard]] double operator()(double r) const;
  template <class V>
  [[nodiscard]] double operator()(const V& z) const {
    return (*this)(z.norm());
  }
  [[nodiscard]] double radial_derivative(double r) const;

 private:
  double c2_;
};

/// Second fundamental form of the circle evaluated on a unit tangent,
/// in the sign convention where convexity gives B <= 0: -1/R.
double second_fundamental_form_tangent(const DiskGeometry& geom);

}  // namespace acn
