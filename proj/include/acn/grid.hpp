#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "acn/geometry.hpp"

namespace acn {

/// Cell-centred polar grid on the disk of radius R.
///
/// Ring i has centre radius r_i = (i + 1/2) dr, sector j has centre angle
/// theta_j = (j + 1/2) dtheta. Values are stored row-major with the ring
/// index outer. No cell sits on the pole; the innermost ring closes with a
/// zero radial flux and, for gradients, with the diametrically opposite
/// cell as ghost. Ntheta must therefore be even.
class PolarGrid {
 public:
  PolarGrid(std::size_t nr, std::size_t ntheta, double radius);

  [[nodiscard]] std::size_t nr() const { return nr_; }
  [[nodiscard]] std::size_t ntheta() const { return ntheta_; }
  [[nodiscard]] std::size_t size() const { return nr_ * ntheta_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double dr() const { return dr_; }
  [[nodiscard]] double dtheta() const { return dtheta_; }

  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const { return i * ntheta_ + j; }
  [[nodiscard]] double r(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dr_; }
  [[nodiscard]] double r_face(std::size_t i) const { return static_cast<double>(i) * dr_; }
  [[nodiscard]] double theta(std::size_t j) const {
    return (static_cast<double>(j) + 0.5) * dtheta_;
  }
  [[nodiscard]] double cos_theta(std::size_t j) const { return cos_[j]; }
  [[nodiscard]] double sin_theta(std::size_t j) const { return sin_[j]; }
  [[nodiscard]] double area(std::size_t i) const { return r(i) * dr_ * dtheta_; }
  [[nodiscard]] Vec2 point(std::size_t i, std::size_t j) const {
    return {r(i) * cos_[j], r(i) * sin_[j]};
  }
  [[nodiscard]] std::size_t opposite(std::size_t j) const { return (j + ntheta_ / 2) % ntheta_; }

  /// Boundary sample points (R, theta_j).
  [[nodiscard]] Vec2 boundary_point(std::size_t j) const {
    return {radius_ * cos_[j], radius_ * sin_[j]};
  }

  friend bool operator==(const PolarGrid& a, const PolarGrid& b) {
    return a.nr_ == b.nr_ && a.ntheta_ == b.ntheta_ && a.radius_ == b.radius_;
  }

 private:
  std::size_t nr_;
  std::size_t ntheta_;
  double radius_;
  double dr_;
  double dtheta_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

using GridPtr = std::shared_ptr<const PolarGrid>;

GridPtr make_grid(std::size_t nr, std::size_t ntheta, double radius);

/// Immutable-by-convention snapshot of cell values on a grid.
struct ScalarField {
  GridPtr grid;
  std::vector<double> values;
  double t = 0.0;

  ScalarField() = default;
  ScalarField(GridPtr g, double time = 0.0);
  ScalarField(GridPtr g, std::vector<double> v, double time = 0.0);

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return values[grid->index(i, j)];
  }
  [[nodiscard]] std::size_t size() const { return values.size(); }
};

/// Sample f(x) at every cell centre.
template <class F>
ScalarField sample_field(const GridPtr& grid, F&& f, double t = 0.0) {
  ScalarField out(grid, t);
  for (std::size_t i = 0; i < grid->nr(); ++i)
    for (std::size_t j = 0; j < grid->ntheta(); ++j) out.values[grid->index(i, j)] = f(grid->point(i, j));
  return out;
}

struct GradientField {
  ScalarField gx;
  ScalarField gy;
};

/// Centred differences in r and theta, mirror ghost at r = R, opposite-cell
/// ghost across the pole, periodic in theta; returned as Cartesian
/// components.
GradientField gradient(const ScalarField& u);

/// Polar components (u_r, u_theta / r) of the centred gradient.
GradientField gradient_polar(const ScalarField& u);

/// |grad u|^2 per cell as the average of the squared face differences of
/// the two radial and two angular faces. Its area integral equals the
/// Dirichlet form of `laplacian`, so energies built from it obey the
/// discrete energy law of the time stepper.
ScalarField grad_sq(const ScalarField& u);

/// Conservative flux-form Laplacian with zero flux at r = 0 and r = R.
ScalarField laplacian(const ScalarField& u);

/// Fixed-order pairwise sum; bit-reproducible for a given input order.
double pairwise_sum(std::span<const double> v);

/// Area integral sum_ij v_ij r_i dr dtheta (rings reduced first, then
/// summed pairwise across rings).
double integrate(const ScalarField& f);
double integrate(const PolarGrid& grid, std::span<const double> values);

/// Boundary trace of u by the quadratic extrapolation compatible with the
/// Neumann mirror: u(R) = (9 u_{N-1} - u_{N-2}) / 8.
std::vector<double> boundary_trace(const ScalarField& u);

/// Trapezoid rule over the boundary samples theta_j: sum_j v_j R dtheta.
double integrate_boundary(const PolarGrid& grid, std::span<const double> boundary_samples);

/// Bilinear interpolation in (r, theta). Radii beyond the last ring centre
/// take the last ring's value; radii inside the first ring interpolate
/// through the pole to the opposite cell. Throws std::domain_error for
/// |x| > R.
double interpolate(const ScalarField& f, const Vec2& x);

}  // namespace acn
