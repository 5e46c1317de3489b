#include "acn/geometry.hpp"

#include <cmath>

namespace acn {

DiskGeometry::DiskGeometry(double radius) : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("disk radius must be positive and finite");
}

Vec2 DiskGeometry::normal(const Vec2& x) const {
  const double n = x.norm();
  if (n == 0.0) throw std::domain_error("reflection undefined at focal point");
  return x / n;
}

Reflection DiskGeometry::nearest_and_reflect(const Vec2& x) const {
  const double n = x.norm();
  if (n == 0.0) throw std::domain_error("reflection undefined at focal point");
  if (n > radius_ * (1.0 + 1e-14)) throw std::domain_error("point outside the disk");
  const Vec2 zeta = (radius_ / n) * x;
  return {radius_ - n, zeta, 2.0 * zeta - x};
}

CutoffEta::CutoffEta(double c2) : c2_(c2) {
  if (!(c2 > 0.0)) throw std::invalid_argument("cutoff: c2 must be positive");
}

double CutoffEta::operator()(double r) const {
  const double q = 0.25 * c2_;
  if (r <= q) return 1.0;
  if (r >= 2.0 * q) return 0.0;
  const double s = (r - q) / q;
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double CutoffEta::radial_derivative(double r) const {
  const double q = 0.25 * c2_;
  if (r <= q || r >= 2.0 * q) return 0.0;
  const double s = (r - q) / q;
  return -30.0 * s * s * (1.0 - s) * (1.0 - s) / q;
}

double second_fundamental_form_tangent(const DiskGeometry& geom) { return -1.0 / geom.radius(); }

}  // namespace acn
