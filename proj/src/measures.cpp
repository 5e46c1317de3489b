#include "acn/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace acn {

MeasureFields measure_fields(const ScalarField& u, double eps, const PotentialSpec& pot) {
  const ScalarField g2 = grad_sq(u);
  MeasureFields mf{ScalarField(u.grid, u.t), ScalarField(u.grid, u.t), eps};
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double grad = 0.5 * eps * g2.values[k];
    const double pot_part = pot.w(u.values[k]) / eps;
    mf.e.values[k] = grad + pot_part;
    mf.xi.values[k] = grad - pot_part;
  }
  return mf;
}

DiscrepancyStats discrepancy_stats(const MeasureFields& mf) {
  DiscrepancyStats s;
  s.sup_xi = *std::max_element(mf.xi.values.begin(), mf.xi.values.end());
  std::vector<double> a(mf.xi.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::abs(mf.xi.values[k]);
  s.int_abs_xi = integrate(*mf.xi.grid, a);
  return s;
}

double boundary_energy(const ScalarField& u, double eps, const PotentialSpec& pot) {
  const PolarGrid& g = *u.grid;
  const std::vector<double> ub = boundary_trace(u);
  const std::size_t nt = g.ntheta();
  std::vector<double> e(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    const double up = ub[(j + 1) % nt];
    const double um = ub[(j + nt - 1) % nt];
    const double ut = (up - um) / (2.0 * g.dtheta() * g.radius());
    e[j] = 0.5 * eps * ut * ut + pot.w(ub[j]) / eps;
  }
  return integrate_boundary(g, e);
}

namespace {

// Lagrange weights at r = R for values at the three outermost ring centres.
struct Stencil {
  double v[3];
  double d[3];
};

Stencil outer_stencil(const PolarGrid& g) {
  const double x[3] = {g.r(g.nr() - 1) - g.radius(), g.r(g.nr() - 2) - g.radius(),
                       g.r(g.nr() - 3) - g.radius()};
  Stencil s{};
  for (int m = 0; m < 3; ++m) {
    double denom = 1.0;
    for (int l = 0; l < 3; ++l)
      if (l != m) denom *= x[m] - x[l];
    double val = 1.0, der = 0.0;
    for (int l = 0; l < 3; ++l) {
      if (l == m) continue;
      val *= -x[l];
      double prod = 1.0;
      for (int k = 0; k < 3; ++k)
        if (k != m && k != l) prod *= -x[k];
      der += prod;
    }
    s.v[m] = val / denom;
    s.d[m] = der / denom;
  }
  return s;
}

}  // namespace

std::vector<double> boundary_normal_derivative(const ScalarField& f) {
  const PolarGrid& g = *f.grid;
  const Stencil s = outer_stencil(g);
  const std::size_t n = g.nr();
  std::vector<double> out(g.ntheta());
  for (std::size_t j = 0; j < g.ntheta(); ++j)
    out[j] = s.d[0] * f(n - 1, j) + s.d[1] * f(n - 2, j) + s.d[2] * f(n - 3, j);
  return out;
}

std::vector<double> boundary_value_quadratic(const ScalarField& f) {
  const PolarGrid& g = *f.grid;
  const Stencil s = outer_stencil(g);
  const std::size_t n = g.nr();
  std::vector<double> out(g.ntheta());
  for (std::size_t j = 0; j < g.ntheta(); ++j)
    out[j] = s.v[0] * f(n - 1, j) + s.v[1] * f(n - 2, j) + s.v[2] * f(n - 3, j);
  return out;
}

double ball_mass(const MeasureFields& mf, const Vec2& y, double r) {
  const PolarGrid& g = *mf.e.grid;
  std::vector<double> masked(mf.e.size(), 0.0);
  const double r2 = r * r;
  const double ry = y.norm();
  for (std::size_t i = 0; i < g.nr(); ++i) {
    if (std::abs(g.r(i) - ry) > r) continue;
    for (std::size_t j = 0; j < g.ntheta(); ++j)
      if ((g.point(i, j) - y).squaredNorm() <= r2) masked[g.index(i, j)] = mf.e(i, j);
  }
  return integrate(g, masked);
}

DensityReport density_ratios(const MeasureFields& mf, std::span<const BallSample> samples,
                             const DiskGeometry& geom) {
  DensityReport rep;
  for (const BallSample& s : samples) {
    if (!(s.r > 0.0) || s.r > geom.c2() / 4.0 * (1.0 + 1e-12))
      throw std::invalid_argument("density sample radius must lie in (0, c2/4]");
    const double ratio = ball_mass(mf, s.y, s.r) / s.r;
    rep.ratios.push_back(ratio);
    rep.samples.push_back(s);
    rep.d0 = std::max(rep.d0, ratio);
  }
  return rep;
}

std::vector<BallSample> random_ball_samples(std::size_t count, unsigned seed,
                                            const DiskGeometry& geom, double rmin, double rmax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BallSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double rr = geom.radius() * std::sqrt(unit(rng));
    const double th = 2.0 * std::numbers::pi * unit(rng);
    const double r = rmin + (rmax - rmin) * unit(rng);
    out.push_back({Vec2(rr * std::cos(th), rr * std::sin(th)), r});
  }
  return out;
}

TestFunction TestFunction::constant(double c) {
  return {"constant",
          [c](const Vec2&, double) { return c; },
          [](const Vec2&, double) { return Vec2::Zero().eval(); },
          [](const Vec2&, double) { return Mat2::Zero().eval(); },
          [](const Vec2&, double) { return 0.0; }};
}

TestFunction TestFunction::radial_cosine(double radius) {
  const double k = std::numbers::pi / (radius * radius);
  return {"radial_cosine",
          [k](const Vec2& x, double) { return 2.0 + std::cos(k * x.squaredNorm()); },
          [k](const Vec2& x, double) -> Vec2 {
            return -2.0 * k * std::sin(k * x.squaredNorm()) * x;
          },
          [k](const Vec2& x, double) -> Mat2 {
            const double q = k * x.squaredNorm();
            return -2.0 * k * std::sin(q) * Mat2::Identity() -
                   4.0 * k * k * std::cos(q) * (x * x.transpose());
          },
          [](const Vec2&, double) { return 0.0; }};
}

double c2_norm(const TestFunction& phi, const DiskGeometry& geom, double t) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  const int nr = 200, nt = 256;
  for (int i = 0; i <= nr; ++i) {
    const double r = geom.radius() * i / nr;
    for (int j = 0; j < nt; ++j) {
      const double th = 2.0 * std::numbers::pi * j / nt;
      const Vec2 x(r * std::cos(th), r * std::sin(th));
      s0 = std::max(s0, std::abs(phi.value(x, t)));
      s1 = std::max(s1, phi.grad(x, t).norm());
      const Eigen::SelfAdjointEigenSolver<Mat2> es(phi.hess(x, t));
      s2 = std::max(s2, es.eigenvalues().cwiseAbs().maxCoeff());
    }
  }
  return s0 + s1 + s2;
}

double boundary_flux(const TestFunction& phi, const DiskGeometry& geom, double t,
                     std::size_t samples) {
  double m = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples);
    const Vec2 nu(std::cos(th), std::sin(th));
    m = std::max(m, std::abs(phi.grad(geom.radius() * nu, t).dot(nu)));
  }
  return m;
}

void require_neumann(const TestFunction& phi, const DiskGeometry& geom, double tol) {
  const double f = boundary_flux(phi, geom);
  if (f > tol)
    throw std::invalid_argument("test function '" + phi.name +
                                "' has nonzero normal derivative on the boundary");
}

double phi_mass(const MeasureFields& mf, const TestFunction& phi) {
  const PolarGrid& g = *mf.e.grid;
  std::vector<double> v(mf.e.size());
  for (std::size_t i = 0; i < g.nr(); ++i)
    for (std::size_t j = 0; j < g.ntheta(); ++j)
      v[g.index(i, j)] = phi.value(g.point(i, j), mf.t()) * mf.e(i, j);
  return integrate(g, v);
}

double semidecreasing_violation(std::span<const double> t, std::span<const double> mass,
                                double c1, double phi_c2_norm) {
  if (t.size() != mass.size()) throw std::invalid_argument("semidecreasing: size mismatch");
  double worst = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double a = mass[k - 1] - c1 * phi_c2_norm * t[k - 1];
    const double b = mass[k] - c1 * phi_c2_norm * t[k];
    worst = std::max(worst, b - a);
  }
  return worst;
}

double semidecreasing_check(std::span<const double> t, std::span<const double> mass,
                            const TestFunction& phi, const DiskGeometry& geom, double c1) {
  require_neumann(phi, geom);
  return semidecreasing_violation(t, mass, c1, c2_norm(phi, geom));
}

}  // namespace acn
