#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "acn/geometry.hpp"
#include "acn/measures.hpp"

namespace acn {

template <int N>
using VecN = Eigen::Matrix<double, N, 1>;
template <int N>
using MatN = Eigen::Matrix<double, N, N>;

/// Backward heat kernel rho_(y,s)(x,t) = (4 pi tau)^{-(N-1)/2}
/// exp(-|x-y|^2 / (4 tau)), tau = s - t. Only defined for t < s.
template <int N>
class HeatKernel {
 public:
  HeatKernel(const VecN<N>& y, double s) : y_(y), s_(s) {}

  [[nodiscard]] const VecN<N>& y() const { return y_; }
  [[nodiscard]] double s() const { return s_; }

  [[nodiscard]] double tau(double t) const {
    if (!(t < s_)) throw std::domain_error("kernel evaluated at t >= s");
    return s_ - t;
  }

  /// Value at an arbitrary spatial point (also used at reflected points).
  [[nodiscard]] double value(const VecN<N>& x, double t) const {
    const double tt = tau(t);
    return std::pow(4.0 * std::numbers::pi * tt, -0.5 * (N - 1)) *
           std::exp(-(x - y_).squaredNorm() / (4.0 * tt));
  }
  [[nodiscard]] VecN<N> grad(const VecN<N>& x, double t) const {
    return -value(x, t) * (x - y_) / (2.0 * tau(t));
  }
  [[nodiscard]] MatN<N> hess(const VecN<N>& x, double t) const {
    const double tt = tau(t);
    const VecN<N> z = x - y_;
    return value(x, t) * (z * z.transpose() / (4.0 * tt * tt) - MatN<N>::Identity() / (2.0 * tt));
  }
  [[nodiscard]] double dt(const VecN<N>& x, double t) const {
    const double tt = tau(t);
    return value(x, t) * ((N - 1) / (2.0 * tt) - (x - y_).squaredNorm() / (4.0 * tt * tt));
  }

 private:
  VecN<N> y_;
  double s_;
};

/// Reflected kernel rho~(x,t) = rho(x~, t), x~ the mirror image of x across
/// the sphere |x| = R.
///
/// Two sets of derivatives are provided. `grad`/`hess` are the true
/// derivatives of x -> rho(x~(x)). `grad_frame`/`hess_frame` use the
/// boundary frame of the tubular neighbourhood, grad x~ = I - 2 nu (x) nu,
/// which agrees with the true Jacobian on the sphere itself and is the
/// form under which the curvature identity closes exactly.
template <int N>
class ReflectedKernel {
 public:
  ReflectedKernel(const VecN<N>& y, double s, double radius) : base_(y, s), radius_(radius) {}

  [[nodiscard]] const HeatKernel<N>& base() const { return base_; }
  [[nodiscard]] double radius() const { return radius_; }

  [[nodiscard]] VecN<N> reflect(const VecN<N>& x) const { return reflect_across_sphere(x, radius_); }

  [[nodiscard]] double value(const VecN<N>& x, double t) const { return base_.value(reflect(x), t); }
  [[nodiscard]] double dt(const VecN<N>& x, double t) const { return base_.dt(reflect(x), t); }

  [[nodiscard]] VecN<N> grad(const VecN<N>& x, double t) const {
    return jacobian(x).transpose() * base_.grad(reflect(x), t);
  }

  [[nodiscard]] MatN<N> hess(const VecN<N>& x, double t) const {
    const VecN<N> xt = reflect(x);
    const MatN<N> J = jacobian(x);
    const VecN<N> g = base_.grad(xt, t);
    const double n = x.norm();
    const double n3 = n * n * n;
    const double gx = g.dot(x);
    // sum_k g_k d_l d_j x~_k
    MatN<N> second = -2.0 * radius_ / n3 *
                         (x * g.transpose() + g * x.transpose() + gx * MatN<N>::Identity()) +
                     6.0 * radius_ * gx / (n3 * n * n) * (x * x.transpose());
    return J.transpose() * base_.hess(xt, t) * J + second;
  }

  [[nodiscard]] VecN<N> grad_frame(const VecN<N>& x, double t) const {
    const VecN<N> z = reflect(x) - base_.y();
    return -value(x, t) * mirror(x) * z / (2.0 * base_.tau(t));
  }

  [[nodiscard]] MatN<N> hess_frame(const VecN<N>& x, double t) const {
    const double tt = base_.tau(t);
    const VecN<N> z = reflect(x) - base_.y();
    const VecN<N> bz = mirror(x) * z;
    const MatN<N> hq = 2.0 * MatN<N>::Identity() - 4.0 * frame_m(x, z);
    return value(x, t) * (bz * bz.transpose() / (4.0 * tt * tt) - hq / (4.0 * tt));
  }

  /// d x~_k / d x_j.
  [[nodiscard]] MatN<N> jacobian(const VecN<N>& x) const {
    const double n = x.norm();
    if (n == 0.0) throw std::domain_error("reflection undefined at focal point");
    const VecN<N> nu = x / n;
    return (2.0 * radius_ / n - 1.0) * MatN<N>::Identity() - (2.0 * radius_ / n) * nu * nu.transpose();
  }

 private:
  HeatKernel<N> base_;
  double radius_;

  [[nodiscard]] static MatN<N> mirror(const VecN<N>& x) {
    const VecN<N> nu = x.normalized();
    return MatN<N>::Identity() - 2.0 * nu * nu.transpose();
  }
  // M_ij = sum_k d_j(nu_i nu_k) z_k.
  [[nodiscard]] static MatN<N> frame_m(const VecN<N>& x, const VecN<N>& z) {
    const double n = x.norm();
    const VecN<N> nu = x / n;
    const MatN<N> P = MatN<N>::Identity() - nu * nu.transpose();
    return (nu.dot(z) * P + nu * (P * z).transpose()) / n;
  }
};

/// (a.grad rho)^2/rho + (I - a(x)a) : hess rho + d_t rho. Zero where rho
/// underflows.
template <int N>
double identity_residual_standard(const HeatKernel<N>& k, const VecN<N>& x, double t,
                                  const VecN<N>& a) {
  const double rho = k.value(x, t);
  if (rho == 0.0) return 0.0;
  const double ag = a.dot(k.grad(x, t));
  const MatN<N> P = MatN<N>::Identity() - a * a.transpose();
  return ag * ag / rho + (P.cwiseProduct(k.hess(x, t))).sum() + k.dt(x, t);
}

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of the reflected-kernel identity. The right side,
/// sum_ijk (delta_ij - a_i a_j) d_j(nu_i nu_k) (x~_k - y_k) rho~ / tau, is
/// evaluated from d_j nu_i = (delta_ij - nu_i nu_j)/|x| without the frame
/// matrix used by the left side. Requires x in the tube N_R minus the centre.
template <int N>
IdentitySides identity_residual_reflected(const ReflectedKernel<N>& k, const VecN<N>& x, double t,
                                          const VecN<N>& a) {
  const double n = x.norm();
  if (n == 0.0 || n > k.radius() * (1.0 + 1e-12))
    throw std::domain_error("reflection undefined outside the tubular neighbourhood");
  IdentitySides out;
  const double rho = k.value(x, t);
  if (rho == 0.0) return out;
  const double ag = a.dot(k.grad_frame(x, t));
  const MatN<N> P = MatN<N>::Identity() - a * a.transpose();
  out.lhs = ag * ag / rho + (P.cwiseProduct(k.hess_frame(x, t))).sum() + k.dt(x, t);

  const VecN<N> nu = x / n;
  const VecN<N> z = k.reflect(x) - k.base().y();
  auto dnu = [&](int i, int j) { return ((i == j ? 1.0 : 0.0) - nu[i] * nu[j]) / n; };
  double sum = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int m = 0; m < N; ++m)
        sum += P(i, j) * (dnu(i, j) * nu[m] + nu[i] * dnu(m, j)) * z[m];
  out.rhs = sum * rho / k.base().tau(t);
  return out;
}

/// rho_1 = eta(x - y) rho and rho_2 = eta(x~ - y) rho~ on the disk (n = 2).
class TruncatedKernels {
 public:
  TruncatedKernels(const Vec2& y, double s, const DiskGeometry& geom);

  [[nodiscard]] double rho1(const Vec2& x, double t) const;
  /// 0 where the reflected cutoff vanishes, and identically 0 when y lies
  /// outside N_{c2/2} (interior probe).
  [[nodiscard]] double rho2(const Vec2& x, double t) const;
  [[nodiscard]] bool uses_reflection() const { return reflected_; }

 private:
  HeatKernel<2> k_;
  DiskGeometry geom_;
  CutoffEta eta_;
  bool reflected_;
};

struct MonotonicityProbe {
  Vec2 y;
  double s = 0.0;
};

struct MonotonicityReport {
  std::vector<double> t, G, budget, envelope, defect;
  std::vector<bool> valid;  // defect defined (interior sample, s - t >= window)
  double sup_defect = -INFINITY;
  double c3 = 0.0;
};

/// Streams G(t) = exp(C3 (s-t)^{1/4}) int (rho_1 + rho_2) dmu_t and the
/// budget int (rho_1 + rho_2) / (2(s-t)) dxi_t, one sample at a time.
class MonotonicityTracker {
 public:
  MonotonicityTracker(MonotonicityProbe probe, const DiskGeometry& geom, double c3,
                      double window);

  void observe(const MeasureFields& mf);
  [[nodiscard]] MonotonicityReport report() const;
  [[nodiscard]] const MonotonicityProbe& probe() const { return probe_; }
  [[nodiscard]] double last_G() const { return G_.empty() ? 0.0 : G_.back(); }

 private:
  MonotonicityProbe probe_;
  DiskGeometry geom_;
  TruncatedKernels kernels_;
  double c3_;
  double window_;
  std::vector<double> t_, G_, budget_, env_;
};

/// rho_x^r(y) = (sqrt(2 pi) r)^{-1} exp(-|x-y|^2 / (2 r^2)) in the plane.
double gaussian_density(const Vec2& x, double r, const Vec2& y);

struct AppendixSample {
  Vec2 x;
  double r = 0.0;
  double R = 0.0;   // tail radius for item (2)
  Vec2 x0;          // shifted centre for item (3)
  double r_big = 0.0;  // larger scale for item (4)
};

struct AppendixReport {
  std::size_t samples = 0;
  std::size_t fail1 = 0, fail2 = 0;
  double worst1 = 0.0;  // max int rho / D
  double worst2 = 0.0;  // max tail / bound
  double delta3 = 0.0;  // smallest delta making (3) hold on every sample
  double delta4 = 0.0;  // same for (4)
};

std::vector<AppendixSample> appendix_samples(std::size_t count, unsigned seed,
                                             const DiskGeometry& geom, double rmin, double rmax,
                                             double gamma1 = 0.1, double gamma2 = 0.1);

AppendixReport kernel_mass_checks(const MeasureFields& mf, double D,
                                  std::span<const AppendixSample> samples);

struct KernelSelftestReport {
  int n = 2;
  std::size_t samples = 0;
  double worst_standard = 0.0;   // max |res| / (|d_t rho| + 1)
  double worst_reflected = 0.0;  // max |lhs - rhs| / (|lhs| + |rhs| + 1)
  std::size_t worst_index = 0;
  bool pass = false;
};

/// Seeded random identity checks; t < s by construction.
KernelSelftestReport kernel_selftest(int n, std::size_t samples, unsigned seed,
                                     double tol_standard = 1e-10, double tol_reflected = 1e-8);

}  // namespace acn
