#include "acn/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acn {

PotentialSpec PotentialSpec::quartic() {
  PotentialSpec p;
  p.name_ = "quartic";
  p.w_ = [](double u) {
    const double a = 1.0 - u * u;
    return 0.25 * a * a;
  };
  p.w1_ = [](double u) { return u * u * u - u; };
  p.w2_ = [](double u) { return 3.0 * u * u - 1.0; };
  p.gamma_ = 0.0;
  p.alpha_ = std::sqrt(2.0 / 3.0);
  p.kappa_ = 1.0;
  p.quartic_ = true;
  return p;
}

PotentialSpec PotentialSpec::custom(std::string name, Fn w, Fn w1, Fn w2,
                                    double gamma, double alpha, double kappa) {
  if (!w || !w1 || !w2) throw std::invalid_argument("potential: W, W', W'' must all be provided");
  if (!(gamma > -1.0 && gamma < 1.0)) throw std::invalid_argument("potential: gamma must lie in (-1,1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("potential: alpha must lie in (0,1)");
  if (!(kappa > 0.0)) throw std::invalid_argument("potential: kappa must be positive");
  PotentialSpec p;
  p.name_ = std::move(name);
  p.w_ = std::move(w);
  p.w1_ = std::move(w1);
  p.w2_ = std::move(w2);
  p.gamma_ = gamma;
  p.alpha_ = alpha;
  p.kappa_ = kappa;
  return p;
}

PotentialSpec PotentialSpec::scaled_quartic(double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("potential: scale factor must be positive");
  const PotentialSpec q = quartic();
  return custom(
      "quartic*" + std::to_string(factor),
      [q, factor](double u) { return factor * q.w(u); },
      [q, factor](double u) { return factor * q.w1(u); },
      [q, factor](double u) { return factor * q.w2(u); }, 0.0, std::sqrt(2.0 / 3.0), factor);
}

PotentialValues PotentialSpec::eval(double u) const { return {w_(u), w1_(u), w2_(u)}; }

void PotentialSpec::validate(int samples) const {
  constexpr double tol = 1e-12;
  if (std::abs(w_(1.0)) > tol || std::abs(w_(-1.0)) > tol)
    throw std::invalid_argument("potential " + name_ + ": W(+-1) != 0");
  for (int k = 0; k < samples; ++k) {
    const double u = -1.5 + 3.0 * k / (samples - 1);
    if (w_(u) < -tol) throw std::invalid_argument("potential " + name_ + ": W < 0 at a sample");
    const double d = w1_(u);
    if (u > gamma_ + tol && u < 1.0 - tol && !(d < 0.0))
      throw std::invalid_argument("potential " + name_ + ": W' >= 0 on (gamma,1)");
    if (u < gamma_ - tol && u > -1.0 + tol && !(d > 0.0))
      throw std::invalid_argument("potential " + name_ + ": W' <= 0 on (-1,gamma)");
    const double a = std::abs(u);
    if (a >= alpha_ && a <= 1.0 && w2_(u) < kappa_ - 1e-9)
      throw std::invalid_argument("potential " + name_ + ": W'' < kappa on alpha <= |u| <= 1");
  }
}

PotentialValues eval_potential(const PotentialSpec& spec, double u) { return spec.eval(u); }

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw std::runtime_error("adaptive Simpson: tolerance not reached");
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double surface_tension(const PotentialSpec& spec, double abs_tol) {
  auto integrand = [&spec](double u) { return std::sqrt(2.0 * std::max(spec.w(u), 0.0)); };
  // Split at gamma so each half is a single smooth hump.
  const double g = spec.gamma();
  return adaptive_simpson(integrand, -1.0, g, 0.5 * abs_tol) +
         adaptive_simpson(integrand, g, 1.0, 0.5 * abs_tol);
}

StandingWave::StandingWave(const PotentialSpec& spec) : spec_(spec) {
  if (spec_.is_quartic()) return;

  // Fixed-step RK4 on Phi' = +-sqrt(2 W(Phi)) from Phi(0) = 0.
  auto integrate = [this](double direction) {
    std::vector<double> table{0.0};
    auto rhs = [this, direction](double p) {
      return direction * std::sqrt(2.0 * std::max(spec_.w(p), 0.0));
    };
    double p = 0.0;
    const double h = step_;
    const std::size_t max_steps = static_cast<std::size_t>(60.0 / h);
    for (std::size_t k = 0; k < max_steps; ++k) {
      const double k1 = rhs(p);
      const double k2 = rhs(p + 0.5 * h * k1);
      const double k3 = rhs(p + 0.5 * h * k2);
      const double k4 = rhs(p + h * k3);
      p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      table.push_back(p);
      if (std::abs(std::abs(p) - 1.0) < 1e-15) break;
    }
    return table;
  };
  pos_ = integrate(+1.0);
  neg_ = integrate(-1.0);
}

double StandingWave::table_value(const std::vector<double>& table, double s, double sign) const {
  // Cubic Hermite interpolation using Phi' = sign * sqrt(2W(Phi)) at the nodes.
  const double x = std::abs(s) / step_;
  const auto k = static_cast<std::size_t>(x);
  if (k + 1 >= table.size()) return table.back();
  const double t = x - static_cast<double>(k);
  const double p0 = table[k];
  const double p1 = table[k + 1];
  const double m0 = sign * std::sqrt(2.0 * std::max(spec_.w(p0), 0.0)) * step_;
  const double m1 = sign * std::sqrt(2.0 * std::max(spec_.w(p1), 0.0)) * step_;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
         (t3 - t2) * m1;
}

double StandingWave::phi(double s) const {
  if (spec_.is_quartic()) return std::tanh(s / std::sqrt(2.0));
  return s >= 0.0 ? table_value(pos_, s, 1.0) : table_value(neg_, s, -1.0);
}

double StandingWave::dphi(double s) const {
  if (spec_.is_quartic()) {
    const double c = 1.0 / std::cosh(s / std::sqrt(2.0));
    return c * c / std::sqrt(2.0);
  }
  return std::sqrt(2.0 * std::max(spec_.w(phi(s)), 0.0));
}

double StandingWave::d2phi(double s) const {
  if (spec_.is_quartic()) {
    const double c = 1.0 / std::cosh(s / std::sqrt(2.0));
    return -std::tanh(s / std::sqrt(2.0)) * c * c;
  }
  return spec_.w1(phi(s));
}

double standing_wave_residual(const PotentialSpec& spec, std::span<const double> s_samples) {
  const StandingWave wave(spec);
  double worst = 0.0;
  for (double s : s_samples) {
    if (!std::isfinite(s)) throw std::invalid_argument("standing_wave_residual: non-finite sample");
    double second = 0.0;
    if (spec.is_quartic()) {
      second = wave.d2phi(s);
    } else {
      constexpr double h = 1e-4;
      second = (wave.phi(s + h) - 2.0 * wave.phi(s) + wave.phi(s - h)) / (h * h);
    }
    worst = std::max(worst, std::abs(second - spec.w1(wave.phi(s))));
  }
  return worst;
}

}  // namespace acn
