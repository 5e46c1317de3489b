#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "acn/geometry.hpp"
#include "acn/grid.hpp"
#include "acn/potential.hpp"

namespace acn {

/// Energy density e = eps/2 |grad u|^2 + W/eps and discrepancy density
/// xi = eps/2 |grad u|^2 - W/eps, using the scheme-consistent |grad u|^2.
struct MeasureFields {
  ScalarField e;
  ScalarField xi;
  double eps = 0.0;
  [[nodiscard]] double t() const { return e.t; }
};

MeasureFields measure_fields(const ScalarField& u, double eps, const PotentialSpec& pot);

struct DiscrepancyStats {
  double sup_xi = 0.0;
  double int_abs_xi = 0.0;
};

DiscrepancyStats discrepancy_stats(const MeasureFields& mf);

/// int over the boundary of eps/2 |u_tau|^2 + W(u)/eps, from the boundary
/// trace of u. The normal derivative vanishes by the Neumann condition, so
/// only the tangential part of the gradient enters.
double boundary_energy(const ScalarField& u, double eps, const PotentialSpec& pot);

/// One-sided radial derivative of f at r = R per sector, from the quadratic
/// through the three outermost ring centres.
std::vector<double> boundary_normal_derivative(const ScalarField& f);

/// Quadratic extrapolation of f to r = R per sector (same stencil).
std::vector<double> boundary_value_quadratic(const ScalarField& f);

struct BallSample {
  Vec2 y;
  double r = 0.0;
};

struct DensityReport {
  double d0 = 0.0;  // max mu(B_r(y)) / r
  std::vector<double> ratios;
  std::vector<BallSample> samples;
};

/// mu(B_r(y) cap Omega) by cell-centre membership.
double ball_mass(const MeasureFields& mf, const Vec2& y, double r);

/// Requires r <= c2/4 for every sample (std::invalid_argument otherwise).
DensityReport density_ratios(const MeasureFields& mf, std::span<const BallSample> samples,
                             const DiskGeometry& geom);

/// Uniform centres in the disk, radii uniform in [rmin, rmax].
std::vector<BallSample> random_ball_samples(std::size_t count, unsigned seed,
                                            const DiskGeometry& geom, double rmin, double rmax);

/// Space-time test function phi(x, t) with its first and second spatial
/// derivatives and time derivative.
struct TestFunction {
  std::string name;
  std::function<double(const Vec2&, double)> value;
  std::function<Vec2(const Vec2&, double)> grad;
  std::function<Mat2(const Vec2&, double)> hess;
  std::function<double(const Vec2&, double)> dt;

  static TestFunction constant(double c);
  /// 2 + cos(pi r^2 / R^2): radial, with zero normal derivative at r = R.
  static TestFunction radial_cosine(double radius);
};

/// sup|phi| + sup|grad phi| + sup|hess phi| (spectral norm), sampled on a
/// polar lattice of the disk at time t.
double c2_norm(const TestFunction& phi, const DiskGeometry& geom, double t = 0.0);

/// max over boundary samples of |grad phi . nu|.
double boundary_flux(const TestFunction& phi, const DiskGeometry& geom, double t = 0.0,
                     std::size_t samples = 720);

/// Throws std::invalid_argument if |grad phi . nu| > tol somewhere on the
/// boundary.
void require_neumann(const TestFunction& phi, const DiskGeometry& geom, double tol = 1e-8);

/// int phi(., t) dmu_t.
double phi_mass(const MeasureFields& mf, const TestFunction& phi);

/// Largest positive increment of m(t) - c1 * norm * t between consecutive
/// samples (0 if the series never increases).
double semidecreasing_violation(std::span<const double> t, std::span<const double> mass,
                                double c1, double phi_c2_norm);

/// Same, after checking the Neumann compatibility of phi.
double semidecreasing_check(std::span<const double> t, std::span<const double> mass,
                            const TestFunction& phi, const DiskGeometry& geom, double c1);

}  // namespace acn
