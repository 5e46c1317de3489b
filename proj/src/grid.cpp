#include "acn/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acn {

PolarGrid::PolarGrid(std::size_t nr, std::size_t ntheta, double radius)
    : nr_(nr), ntheta_(ntheta), radius_(radius) {
  if (nr < 8 || ntheta < 8) throw std::invalid_argument("polar grid needs nr >= 8 and ntheta >= 8");
  if (ntheta % 2 != 0) throw std::invalid_argument("polar grid needs an even ntheta");
  if (!(radius > 0.0)) throw std::invalid_argument("polar grid radius must be positive");
  dr_ = radius / static_cast<double>(nr);
  dtheta_ = 2.0 * std::numbers::pi / static_cast<double>(ntheta);
  cos_.resize(ntheta);
  sin_.resize(ntheta);
  for (std::size_t j = 0; j < ntheta; ++j) {
    cos_[j] = std::cos(theta(j));
    sin_[j] = std::sin(theta(j));
  }
}

GridPtr make_grid(std::size_t nr, std::size_t ntheta, double radius) {
  return std::make_shared<const PolarGrid>(nr, ntheta, radius);
}

ScalarField::ScalarField(GridPtr g, double time)
    : grid(std::move(g)), values(grid->size(), 0.0), t(time) {}

ScalarField::ScalarField(GridPtr g, std::vector<double> v, double time)
    : grid(std::move(g)), values(std::move(v)), t(time) {
  if (values.size() != grid->size()) throw std::invalid_argument("field size does not match grid");
}

GradientField gradient_polar(const ScalarField& u) {
  const PolarGrid& g = *u.grid;
  const std::size_t nr = g.nr();
  const std::size_t nt = g.ntheta();
  GradientField out{ScalarField(u.grid, u.t), ScalarField(u.grid, u.t)};
  const double inv2dr = 0.5 / g.dr();
  const double inv2dt = 0.5 / g.dtheta();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < nr; ++i) {
    const double ri = g.r(i);
    for (std::size_t j = 0; j < nt; ++j) {
      const double inner = i == 0 ? u(0, g.opposite(j)) : u(i - 1, j);
      const double outer = i + 1 == nr ? u(i, j) : u(i + 1, j);
      const double ur = (outer - inner) * inv2dr;
      const std::size_t jp = j + 1 == nt ? 0 : j + 1;
      const std::size_t jm = j == 0 ? nt - 1 : j - 1;
      const double ut = (u(i, jp) - u(i, jm)) * inv2dt / ri;
      out.gx.values[g.index(i, j)] = ur;
      out.gy.values[g.index(i, j)] = ut;
    }
  }
  return out;
}

GradientField gradient(const ScalarField& u) {
  GradientField polar = gradient_polar(u);
  const PolarGrid& g = *u.grid;
  for (std::size_t i = 0; i < g.nr(); ++i) {
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
      const std::size_t k = g.index(i, j);
      const double ur = polar.gx.values[k];
      const double ut = polar.gy.values[k];
      const double c = g.cos_theta(j);
      const double s = g.sin_theta(j);
      polar.gx.values[k] = ur * c - ut * s;
      polar.gy.values[k] = ur * s + ut * c;
    }
  }
  return polar;
}

ScalarField grad_sq(const ScalarField& u) {
  const PolarGrid& g = *u.grid;
  const std::size_t nr = g.nr();
  const std::size_t nt = g.ntheta();
  ScalarField out(u.grid, u.t);
  const double inv_dr = 1.0 / g.dr();
  const double inv_dt = 1.0 / g.dtheta();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < nr; ++i) {
    const double ri = g.r(i);
    for (std::size_t j = 0; j < nt; ++j) {
      const double c = u(i, j);
      const double dp = i + 1 == nr ? 0.0 : (u(i + 1, j) - c) * inv_dr;
      const double dm = i == 0 ? 0.0 : (c - u(i - 1, j)) * inv_dr;
      const std::size_t jp = j + 1 == nt ? 0 : j + 1;
      const std::size_t jm = j == 0 ? nt - 1 : j - 1;
      const double tp = (u(i, jp) - c) * inv_dt / ri;
      const double tm = (c - u(i, jm)) * inv_dt / ri;
      const double radial = (g.r_face(i + 1) * dp * dp + g.r_face(i) * dm * dm) / (2.0 * ri);
      out.values[g.index(i, j)] = radial + 0.5 * (tp * tp + tm * tm);
    }
  }
  return out;
}

ScalarField laplacian(const ScalarField& u) {
  const PolarGrid& g = *u.grid;
  const std::size_t nr = g.nr();
  const std::size_t nt = g.ntheta();
  ScalarField out(u.grid, u.t);
  const double dr2 = g.dr() * g.dr();
  const double dt2 = g.dtheta() * g.dtheta();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < nr; ++i) {
    const double ri = g.r(i);
    const double am = g.r_face(i) / (ri * dr2);
    const double ap = i + 1 == nr ? 0.0 : g.r_face(i + 1) / (ri * dr2);
    const double b = 1.0 / (ri * ri * dt2);
    for (std::size_t j = 0; j < nt; ++j) {
      const double c = u(i, j);
      double acc = 0.0;
      if (i > 0) acc += am * (u(i - 1, j) - c);
      if (i + 1 < nr) acc += ap * (u(i + 1, j) - c);
      const std::size_t jp = j + 1 == nt ? 0 : j + 1;
      const std::size_t jm = j == 0 ? nt - 1 : j - 1;
      acc += b * (u(i, jp) - 2.0 * c + u(i, jm));
      out.values[g.index(i, j)] = acc;
    }
  }
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 64) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double integrate(const PolarGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw std::invalid_argument("integrate: size mismatch");
  std::vector<double> rings(grid.nr());
  const std::size_t nt = grid.ntheta();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < grid.nr(); ++i)
    rings[i] = pairwise_sum(values.subspan(i * nt, nt)) * grid.area(i);
  return pairwise_sum(rings);
}

double integrate(const ScalarField& f) { return integrate(*f.grid, f.values); }

std::vector<double> boundary_trace(const ScalarField& u) {
  const PolarGrid& g = *u.grid;
  const std::size_t last = g.nr() - 1;
  std::vector<double> out(g.ntheta());
  for (std::size_t j = 0; j < g.ntheta(); ++j) out[j] = (9.0 * u(last, j) - u(last - 1, j)) / 8.0;
  return out;
}

double integrate_boundary(const PolarGrid& grid, std::span<const double> boundary_samples) {
  if (boundary_samples.size() != grid.ntheta())
    throw std::invalid_argument("integrate_boundary: expected one sample per sector");
  return pairwise_sum(boundary_samples) * grid.radius() * grid.dtheta();
}

double interpolate(const ScalarField& f, const Vec2& x) {
  const PolarGrid& g = *f.grid;
  const double rad = x.norm();
  if (rad > g.radius() * (1.0 + 1e-12)) throw std::domain_error("interpolate: point outside the disk");
  const std::size_t nt = g.ntheta();
  double theta = std::atan2(x.y(), x.x());
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  double phi = theta / g.dtheta() - 0.5;
  const double fl = std::floor(phi);
  const double wt = phi - fl;
  const auto base = static_cast<long>(fl);
  const long n = static_cast<long>(nt);
  const std::size_t j0 = static_cast<std::size_t>(((base % n) + n) % n);
  const std::size_t j1 = (j0 + 1) % nt;

  auto ring_value = [&](std::size_t i, std::size_t ja, std::size_t jb) {
    return (1.0 - wt) * f(i, ja) + wt * f(i, jb);
  };

  const double rho = rad / g.dr() - 0.5;
  if (rho >= static_cast<double>(g.nr() - 1)) return ring_value(g.nr() - 1, j0, j1);
  if (rho < 0.0) {
    const double r0 = g.r(0);
    const double w = (rad + r0) / (2.0 * r0);
    const double across = ring_value(0, g.opposite(j0), g.opposite(j1));
    return (1.0 - w) * across + w * ring_value(0, j0, j1);
  }
  const auto i0 = static_cast<std::size_t>(rho);
  const double wr = rho - static_cast<double>(i0);
  return (1.0 - wr) * ring_value(i0, j0, j1) + wr * ring_value(i0 + 1, j0, j1);
}

}  // namespace acn
