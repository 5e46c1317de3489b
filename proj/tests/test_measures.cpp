#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acn/measures.hpp"
#include "acn/solver.hpp"

using namespace acn;

namespace {
const PotentialSpec kPot = PotentialSpec::quartic();
const double kSigma = 2.0 * std::sqrt(2.0) / 3.0;
}  // namespace

TEST_CASE("energy density and discrepancy of constants") {
  const GridPtr g = make_grid(16, 32, 1.0);
  const double eps = 0.05;
  const MeasureFields zero = measure_fields(sample_field(g, [](const Vec2&) { return 0.0; }), eps, kPot);
  for (std::size_t k = 0; k < g->size(); ++k) {
    CHECK(zero.e.values[k] == doctest::Approx(0.25 / eps));
    CHECK(zero.xi.values[k] == doctest::Approx(-0.25 / eps));
  }
  const MeasureFields one = measure_fields(sample_field(g, [](const Vec2&) { return 1.0; }), eps, kPot);
  for (std::size_t k = 0; k < g->size(); ++k) CHECK(one.e.values[k] == 0.0);
  const MeasureFields half = measure_fields(sample_field(g, [](const Vec2&) { return 0.5; }), eps, kPot);
  const DiscrepancyStats d = discrepancy_stats(half);
  CHECK(d.sup_xi == -kPot.w(0.5) / eps);
  CHECK(d.sup_xi < 0.0);
  CHECK(boundary_energy(sample_field(g, [](const Vec2&) { return 1.0; }), eps, kPot) == 0.0);
}

TEST_CASE("well-prepared profile is close to equipartition") {
  const GridPtr g = make_grid(300, 256, 1.0);
  const State s = init_well_prepared(g, 0.03, InterfaceSpec::concentric(0.6), kPot);
  const MeasureFields mf = measure_fields(s.u, s.eps, kPot);
  double sup_e = 0.0, sup_abs_xi = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    sup_e = std::max(sup_e, mf.e.values[k]);
    sup_abs_xi = std::max(sup_abs_xi, std::abs(mf.xi.values[k]));
  }
  CHECK(sup_abs_xi <= 0.1 * sup_e);
  const double E0 = total_energy(s.u, s.eps, kPot);
  CHECK(E0 == doctest::Approx(kSigma * 2.0 * std::numbers::pi * 0.6).epsilon(0.02));
  CHECK(boundary_energy(s.u, s.eps, kPot) <= 1e-6 * E0);

  SUBCASE("density ratios") {
    const DiskGeometry disk(1.0);
    const std::vector<BallSample> on{{Vec2(0.6, 0.0), 0.15}, {Vec2(0.0, -0.6), 0.2}};
    const DensityReport r = density_ratios(mf, on, disk);
    for (double q : r.ratios) CHECK(q == doctest::Approx(2.0 * kSigma).epsilon(0.05));
    const std::vector<BallSample> off{{Vec2(0.0, 0.0), 0.2}};
    CHECK(density_ratios(mf, off, disk).d0 < 1e-6);
    const std::vector<BallSample> big{{Vec2(0.0, 0.0), 0.3}};
    CHECK_THROWS_AS(density_ratios(mf, big, disk), std::invalid_argument);
  }
}

TEST_CASE("normal derivative of |grad u|^2 on the circle") {
  // u = sin(theta): |grad u|^2 = cos^2/r^2, d/dr = -(2/R) |grad u|^2 at r = R
  const double R = 1.0;
  const GridPtr g = make_grid(256, 256, R);
  const ScalarField u = sample_field(g, [](const Vec2& x) { return std::sin(std::atan2(x.y(), x.x())); });
  const GradientField gr = gradient(u);
  ScalarField g2(g);
  for (std::size_t k = 0; k < g->size(); ++k)
    g2.values[k] = gr.gx.values[k] * gr.gx.values[k] + gr.gy.values[k] * gr.gy.values[k];
  const std::vector<double> dn = boundary_normal_derivative(g2);
  const std::vector<double> val = boundary_value_quadratic(g2);
  double worst = 0.0;
  for (std::size_t j = 0; j < g->ntheta(); ++j) {
    const double oracle = -(2.0 / R) * val[j];
    if (std::abs(oracle) > 0.1) worst = std::max(worst, std::abs(dn[j] - oracle) / std::abs(oracle));
  }
  CHECK(worst <= 0.01);
}

TEST_CASE("test functions") {
  const DiskGeometry disk(1.0);
  const TestFunction one = TestFunction::constant(1.0);
  CHECK(c2_norm(one, disk) == doctest::Approx(1.0));
  CHECK_NOTHROW(require_neumann(one, disk));
  const TestFunction cosr = TestFunction::radial_cosine(1.0);
  CHECK(cosr.value(Vec2(0.0, 0.0), 0.0) == doctest::Approx(3.0));
  CHECK(cosr.value(Vec2(1.0, 0.0), 0.0) == doctest::Approx(1.0));
  CHECK(std::abs(boundary_flux(cosr, disk)) < 1e-12);
  CHECK_NOTHROW(require_neumann(cosr, disk));
  TestFunction lin = one;
  lin.value = [](const Vec2& x, double) { return x.x(); };
  lin.grad = [](const Vec2&, double) { return Vec2(1.0, 0.0); };
  CHECK_THROWS_AS(require_neumann(lin, disk), std::invalid_argument);
}

TEST_CASE("semidecreasing violation") {
  const std::vector<double> t{0.0, 0.1, 0.2, 0.3};
  const std::vector<double> flat{1.0, 1.0, 1.0, 1.0};
  CHECK(semidecreasing_violation(t, flat, 1.0, 1.0) == 0.0);
  const std::vector<double> jump{1.0, 1.0, 1.5, 1.5};
  CHECK(semidecreasing_violation(t, jump, 1.0, 1.0) == doctest::Approx(0.4));
  CHECK(semidecreasing_violation(t, jump, 10.0, 1.0) == 0.0);
}
