#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "acn/grid.hpp"

using namespace acn;

namespace {

constexpr double kPi = std::numbers::pi;

// cos(pi r^2) has zero radial slope at r = 1
double bump(const Vec2& x) { return std::cos(kPi * x.squaredNorm()); }
double bump_lap(const Vec2& x) {
  const double r2 = x.squaredNorm();
  return -4.0 * kPi * std::sin(kPi * r2) - 4.0 * kPi * kPi * r2 * std::cos(kPi * r2);
}

double lap_error(std::size_t n) {
  const GridPtr g = make_grid(n, 2 * n, 1.0);
  const ScalarField lap = laplacian(sample_field(g, bump));
  // the cell next to the zero-flux face is only first order pointwise
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < g->nr(); ++i)
    for (std::size_t j = 0; j < g->ntheta(); ++j)
      err = std::max(err, std::abs(lap(i, j) - bump_lap(g->point(i, j))));
  return err;
}

}  // namespace

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(make_grid(16, 15, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 16, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, 16, 0.0), std::invalid_argument);
  const GridPtr g = make_grid(10, 20, 2.0);
  CHECK(g->dr() == doctest::Approx(0.2));
  CHECK(g->opposite(3) == 13);
  CHECK(g->size() == 200);
}

TEST_CASE("gradient") {
  const GridPtr g = make_grid(64, 128, 1.0);
  const GradientField c = gradient(sample_field(g, [](const Vec2&) { return 3.0; }));
  for (std::size_t k = 0; k < g->size(); ++k) {
    CHECK(c.gx.values[k] == 0.0);
    CHECK(c.gy.values[k] == 0.0);
  }

  const GradientField lin = gradient(sample_field(g, [](const Vec2& x) { return x.x(); }));
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < g->nr(); ++i)
    for (std::size_t j = 0; j < g->ntheta(); ++j)
      err = std::max(err, std::hypot(lin.gx(i, j) - 1.0, lin.gy(i, j)));
  CHECK(err < 2e-3);

  const GradientField rad = gradient_polar(sample_field(g, [](const Vec2& x) { return x.squaredNorm(); }));
  for (std::size_t i = 0; i + 1 < g->nr(); ++i) CHECK(rad.gx(i, 5) == doctest::Approx(2.0 * g->r(i)).epsilon(1e-10));
}

TEST_CASE("laplacian") {
  const GridPtr g = make_grid(64, 128, 1.0);
  const ScalarField c = laplacian(sample_field(g, [](const Vec2&) { return -2.0; }));
  for (double v : c.values) CHECK(v == 0.0);

  const ScalarField q = laplacian(sample_field(g, [](const Vec2& x) { return x.squaredNorm(); }));
  for (std::size_t i = 0; i + 1 < g->nr(); ++i) CHECK(q(i, 7) == doctest::Approx(4.0).epsilon(1e-10));

  const ScalarField h = laplacian(sample_field(g, [](const Vec2& x) { return x.x(); }));
  double err = 0.0;
  for (std::size_t i = 1; i + 1 < g->nr(); ++i)
    for (std::size_t j = 0; j < g->ntheta(); ++j) err = std::max(err, std::abs(h(i, j)));
  CHECK(err < 1e-2);
}

TEST_CASE("laplacian converges at second order for a Neumann-compatible field") {
  const double e1 = lap_error(32), e2 = lap_error(64), e3 = lap_error(128);
  CHECK(std::log2(e1 / e2) >= 1.8);
  CHECK(std::log2(e2 / e3) >= 1.8);
}

TEST_CASE("discrete divergence theorem and self-adjointness") {
  const GridPtr g = make_grid(40, 64, 1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ScalarField u(g), v(g);
  for (std::size_t k = 0; k < g->size(); ++k) {
    u.values[k] = unit(rng);
    v.values[k] = unit(rng);
  }
  const ScalarField lu = laplacian(u), lv = laplacian(v);
  double scale = 0.0;
  for (double x : lu.values) scale = std::max(scale, std::abs(x));
  CHECK(std::abs(integrate(lu)) <= 1e-12 * scale);

  std::vector<double> a(g->size()), b(g->size()), e(g->size());
  const ScalarField g2 = grad_sq(u);
  for (std::size_t k = 0; k < g->size(); ++k) {
    a[k] = v.values[k] * lu.values[k];
    b[k] = u.values[k] * lv.values[k];
    e[k] = u.values[k] * lu.values[k];
  }
  CHECK(integrate(*g, a) == doctest::Approx(integrate(*g, b)).epsilon(1e-12));
  // the Dirichlet form of grad_sq matches the Laplacian
  CHECK(integrate(g2) == doctest::Approx(-integrate(*g, e)).epsilon(1e-12));
}

TEST_CASE("integration") {
  const GridPtr g = make_grid(64, 96, 1.0);
  CHECK(std::abs(integrate(sample_field(g, [](const Vec2&) { return 1.0; })) - kPi) <= 1e-12);
  CHECK(std::abs(integrate(sample_field(g, [](const Vec2& x) { return x.squaredNorm(); })) - kPi / 2.0) <= 2e-4);
  const std::vector<double> ones(g->ntheta(), 1.0);
  CHECK(std::abs(integrate_boundary(*g, ones) - 2.0 * kPi) <= 1e-12);
  const GridPtr g2 = make_grid(16, 32, 3.0);
  CHECK(std::abs(integrate_boundary(*g2, std::vector<double>(32, 1.0)) - 6.0 * kPi) <= 1e-12);
}

TEST_CASE("pairwise sum is order fixed") {
  std::vector<double> v(1000);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = 1.0 / static_cast<double>(k + 1);
  const double a = pairwise_sum(v);
  CHECK(a == pairwise_sum(v));
  CHECK(a == doctest::Approx(7.485470860550345).epsilon(1e-14));
}

TEST_CASE("interpolation") {
  const GridPtr g = make_grid(48, 96, 1.0);
  const ScalarField lin = sample_field(g, [](const Vec2& x) { return x.x(); });
  CHECK(interpolate(lin, g->point(10, 17)) == doctest::Approx(lin(10, 17)).epsilon(1e-14));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double r = 0.05 + 0.9 * unit(rng), th = 2.0 * kPi * unit(rng);
    const Vec2 x(r * std::cos(th), r * std::sin(th));
    err = std::max(err, std::abs(interpolate(lin, x) - x.x()));
  }
  CHECK(err < 2e-3);
  CHECK_THROWS_AS(interpolate(lin, Vec2(1.01, 0.0)), std::domain_error);
  CHECK_NOTHROW(interpolate(lin, Vec2(0.0, 0.0)));
}

TEST_CASE("boundary trace is exact for quadratics in r") {
  const GridPtr g = make_grid(32, 16, 1.0);
  const ScalarField u = sample_field(g, [](const Vec2& x) { return 1.0 + 0.0 * x.norm(); });
  for (double v : boundary_trace(u)) CHECK(v == doctest::Approx(1.0));
  // (9 u_{N-1} - u_{N-2})/8 reproduces fields with zero slope at R to second order
  const ScalarField b = sample_field(g, [](const Vec2& x) { return std::pow(1.0 - x.norm(), 2); });
  for (double v : boundary_trace(b)) CHECK(std::abs(v) < 2e-3);
}
