#include "acn/kernels.hpp"

#include <algorithm>
#include <random>

namespace acn {

TruncatedKernels::TruncatedKernels(const Vec2& y, double s, const DiskGeometry& geom)
    : k_(y, s), geom_(geom), eta_(geom.c2()) {
  // The reflected cutoff can only be nonzero if y is within c2/2 of the
  // boundary, since |x~ - y| >= R - |y|.
  reflected_ = geom.radius() - y.norm() < geom.c2() / 2.0;
}

double TruncatedKernels::rho1(const Vec2& x, double t) const {
  const double r = (x - k_.y()).norm();
  if (r >= eta_.c2() / 2.0) return 0.0;
  return eta_(r) * k_.value(x, t);
}

double TruncatedKernels::rho2(const Vec2& x, double t) const {
  if (!reflected_) return 0.0;
  const double n = x.norm();
  if (n == 0.0 || geom_.radius() - n >= eta_.c2() / 2.0) return 0.0;
  const Vec2 xt = reflect_across_sphere(x, geom_.radius());
  const double r = (xt - k_.y()).norm();
  if (r >= eta_.c2() / 2.0) return 0.0;
  return eta_(r) * k_.value(xt, t);
}

MonotonicityTracker::MonotonicityTracker(MonotonicityProbe probe, const DiskGeometry& geom,
                                         double c3, double window)
    : probe_(probe), geom_(geom), kernels_(probe.y, probe.s, geom), c3_(c3), window_(window) {
  if (probe.y.norm() > geom.radius()) throw std::invalid_argument("probe centre outside the disk");
}

void MonotonicityTracker::observe(const MeasureFields& mf) {
  const double t = mf.t();
  const double tau = probe_.s - t;
  if (!(tau > 0.0)) throw std::invalid_argument("monotonicity probe time s must exceed every sample");
  const PolarGrid& g = *mf.e.grid;
  std::vector<double> we(mf.e.size(), 0.0), wx(mf.e.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < g.nr(); ++i) {
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
      const Vec2 x = g.point(i, j);
      const double w = kernels_.rho1(x, t) + kernels_.rho2(x, t);
      if (w == 0.0) continue;
      const std::size_t k = g.index(i, j);
      we[k] = w * mf.e.values[k];
      wx[k] = w * mf.xi.values[k];
    }
  }
  const double env = std::exp(c3_ * std::pow(tau, 0.25));
  t_.push_back(t);
  env_.push_back(env);
  G_.push_back(env * integrate(g, we));
  budget_.push_back(integrate(g, wx) / (2.0 * tau));
}

MonotonicityReport MonotonicityTracker::report() const {
  MonotonicityReport r;
  r.c3 = c3_;
  r.t = t_;
  r.G = G_;
  r.budget = budget_;
  r.envelope = env_;
  const std::size_t n = t_.size();
  r.defect.assign(n, 0.0);
  r.valid.assign(n, false);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (probe_.s - t_[k] < window_) continue;
    const double dG = (G_[k + 1] - G_[k - 1]) / (t_[k + 1] - t_[k - 1]);
    r.defect[k] = dG - env_[k] * budget_[k];
    r.valid[k] = true;
    r.sup_defect = std::max(r.sup_defect, r.defect[k]);
  }
  return r;
}

double gaussian_density(const Vec2& x, double r, const Vec2& y) {
  return std::exp(-(x - y).squaredNorm() / (2.0 * r * r)) / (std::sqrt(2.0 * std::numbers::pi) * r);
}

std::vector<AppendixSample> appendix_samples(std::size_t count, unsigned seed,
                                             const DiskGeometry& geom, double rmin, double rmax,
                                             double gamma1, double gamma2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<AppendixSample> out;
  for (std::size_t k = 0; k < count; ++k) {
    AppendixSample s;
    const double rr = geom.radius() * std::sqrt(unit(rng));
    const double th = 2.0 * std::numbers::pi * unit(rng);
    s.x = Vec2(rr * std::cos(th), rr * std::sin(th));
    s.r = rmin + (rmax - rmin) * unit(rng);
    s.R = s.r * (1.0 + 2.0 * unit(rng));
    const double shift = gamma1 * s.r * unit(rng);
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    s.x0 = s.x + shift * Vec2(std::cos(phi), std::sin(phi));
    s.r_big = s.r * (1.0 + gamma2 * unit(rng));
    out.push_back(s);
  }
  return out;
}

namespace {

double gaussian_mass(const MeasureFields& mf, const Vec2& x, double r, double exclude_radius = 0.0) {
  const PolarGrid& g = *mf.e.grid;
  std::vector<double> v(mf.e.size(), 0.0);
  for (std::size_t i = 0; i < g.nr(); ++i)
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
      const Vec2 p = g.point(i, j);
      if (exclude_radius > 0.0 && (p - x).norm() < exclude_radius) continue;
      v[g.index(i, j)] = gaussian_density(x, r, p) * mf.e(i, j);
    }
  return integrate(g, v);
}

}  // namespace

AppendixReport kernel_mass_checks(const MeasureFields& mf, double D,
                                  std::span<const AppendixSample> samples) {
  AppendixReport rep;
  rep.samples = samples.size();
  for (const AppendixSample& s : samples) {
    const double I = gaussian_mass(mf, s.x, s.r);
    const double ratio1 = D > 0.0 ? I / D : (I > 0.0 ? INFINITY : 0.0);
    rep.worst1 = std::max(rep.worst1, ratio1);
    if (I > D) ++rep.fail1;

    const double tail = gaussian_mass(mf, s.x, s.r, s.R);
    const double bound = 2.0 * std::exp(-3.0 * s.R * s.R / (8.0 * s.r * s.r)) * D;
    rep.worst2 = std::max(rep.worst2, bound > 0.0 ? tail / bound : (tail > 0.0 ? INFINITY : 0.0));
    if (tail > bound) ++rep.fail2;

    const double I0 = gaussian_mass(mf, s.x0, s.r);
    rep.delta3 = std::max(rep.delta3, (I0 - I) / (I + D));
    const double Ibig = gaussian_mass(mf, s.x, s.r_big);
    rep.delta4 = std::max(rep.delta4, (Ibig - I) / (I + D));
  }
  return rep;
}

namespace {

template <int N>
VecN<N> random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  VecN<N> a;
  do {
    for (int i = 0; i < N; ++i) a[i] = nd(rng);
  } while (a.norm() < 1e-6);
  return a.normalized();
}

template <int N>
VecN<N> random_in_shell(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const VecN<N> dir = random_unit<N>(rng);
  return (rmin + (rmax - rmin) * unit(rng)) * dir;
}

template <int N>
void standard_samples(KernelSelftestReport& rep, std::mt19937_64& rng, std::size_t samples) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const VecN<N> x = random_in_shell<N>(rng, 0.0, 1.0);
    const VecN<N> y = random_in_shell<N>(rng, 0.0, 1.0);
    const double t = unit(rng);
    const double s = t + 0.01 + 0.99 * unit(rng);
    const VecN<N> a = random_unit<N>(rng);
    const HeatKernel<N> kern(y, s);
    const double res = identity_residual_standard(kern, x, t, a);
    const double rel = std::abs(res) / (std::abs(kern.dt(x, t)) + 1.0);
    if (rel > rep.worst_standard) {
      rep.worst_standard = rel;
      rep.worst_index = k;
    }
  }
}

template <int N>
void reflected_samples(KernelSelftestReport& rep, std::mt19937_64& rng, std::size_t samples) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double R = 1.0;
  for (std::size_t k = 0; k < samples; ++k) {
    // x and y in N_{c2/2} of the unit ball
    const auto x = random_in_shell<N>(rng, 0.5 * R, R);
    const auto y = random_in_shell<N>(rng, 0.5 * R, R);
    const double t = unit(rng);
    const double s = t + 0.01 + 0.99 * unit(rng);
    const auto a = random_unit<N>(rng);
    const ReflectedKernel<N> kern(y, s, R);
    const IdentitySides sides = identity_residual_reflected(kern, x, t, a);
    const double rel = std::abs(sides.lhs - sides.rhs) / (std::abs(sides.lhs) + std::abs(sides.rhs) + 1.0);
    if (rel > rep.worst_reflected) {
      rep.worst_reflected = rel;
      rep.worst_index = k;
    }
  }
}

}  // namespace

KernelSelftestReport kernel_selftest(int n, std::size_t samples, unsigned seed, double tol_standard,
                                     double tol_reflected) {
  if (n != 2 && n != 3) throw std::invalid_argument("kernel self-test supports n = 2 or 3");
  KernelSelftestReport rep;
  rep.n = n;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  if (n == 2)
    standard_samples<2>(rep, rng, samples);
  else
    standard_samples<3>(rep, rng, samples);

  if (n == 2)
    reflected_samples<2>(rep, rng, samples);
  else
    reflected_samples<3>(rep, rng, samples);
  rep.pass = rep.worst_standard <= tol_standard && rep.worst_reflected <= tol_reflected;
  return rep;
}

}  // namespace acn
