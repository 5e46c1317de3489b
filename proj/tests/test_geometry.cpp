#include <doctest.h>

#include "acn/geometry.hpp"

using namespace acn;

TEST_CASE("reflection across the circle") {
  const DiskGeometry disk(1.0);
  const Reflection r = disk.nearest_and_reflect(Vec2(0.9, 0.0));
  CHECK(r.distance == doctest::Approx(0.1));
  CHECK((r.zeta - Vec2(1.0, 0.0)).norm() < 1e-15);
  CHECK((r.xtilde - Vec2(1.1, 0.0)).norm() < 1e-15);

  const Vec2 b(std::cos(0.3), std::sin(0.3));
  CHECK((disk.nearest_and_reflect(b).xtilde - b).norm() < 1e-15);

  const Vec2 x(0.6, 0.0);
  CHECK((reflect_across_sphere(reflect_across_sphere(x, 1.0), 1.0) - x).norm() < 1e-14);
  CHECK_THROWS_AS((void)disk.nearest_and_reflect(Vec2(0.0, 0.0)), std::domain_error);
}

TEST_CASE("cutoff") {
  const CutoffEta eta(1.0);
  CHECK(eta(0.0) == 1.0);
  CHECK(eta(0.25) == 1.0);
  CHECK(eta(0.5) == 0.0);
  CHECK(eta(3.0 / 8.0) == doctest::Approx(0.5));
  CHECK(eta(Vec2(0.3, 0.4)) == 0.0);
  // derivative matches a difference quotient
  const double h = 1e-6;
  CHECK(eta.radial_derivative(0.4) == doctest::Approx((eta(0.4 + h) - eta(0.4 - h)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("second fundamental form") {
  CHECK(second_fundamental_form_tangent(DiskGeometry(1.0)) == -1.0);
  CHECK(second_fundamental_form_tangent(DiskGeometry(2.0)) == -0.5);
}
