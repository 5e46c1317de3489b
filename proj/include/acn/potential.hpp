#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace acn {

/// W, W' and W'' evaluated at one point.
struct PotentialValues {
  double w = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
};

/// Double-well potential with equal wells at +-1.
///
/// The quartic well (1-u^2)^2/4 is built in with gamma = 0, alpha = sqrt(2/3)
/// and kappa = 1. Other C^3 wells are supplied through `custom`; their
/// structural constants are only checked by sampling (`validate`).
class PotentialSpec {
 public:
  using Fn = std::function<double(double)>;

  static PotentialSpec quartic();
  static PotentialSpec custom(std::string name, Fn w, Fn w1, Fn w2,
                              double gamma, double alpha, double kappa);

  /// Quartic well multiplied by a positive constant (used in scaling tests).
  static PotentialSpec scaled_quartic(double factor);

  [[nodiscard]] PotentialValues eval(double u) const;
  [[nodiscard]] double w(double u) const { return w_(u); }
  [[nodiscard]] double w1(double u) const { return w1_(u); }
  [[nodiscard]] double w2(double u) const { return w2_(u); }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] bool is_quartic() const { return quartic_; }

  /// Sampled check of W(+-1)=0, W>=0 on [-1.5,1.5], the sign pattern of W'
  /// around gamma and W'' >= kappa for alpha <= |u| <= 1. Throws
  /// std::invalid_argument naming the first violated condition.
  void validate(int samples = 3001) const;

 private:
  PotentialSpec() = default;

  std::string name_;
  Fn w_, w1_, w2_;
  double gamma_ = 0.0;
  double alpha_ = 0.0;
  double kappa_ = 0.0;
  bool quartic_ = false;
};

PotentialValues eval_potential(const PotentialSpec& spec, double u);

/// sigma = int_{-1}^{1} sqrt(2 W(u)) du by adaptive Simpson quadrature.
/// Throws std::runtime_error if the recursion depth is exhausted before
/// the absolute tolerance is met.
double surface_tension(const PotentialSpec& spec, double abs_tol = 1e-10);

/// Adaptive Simpson integration of f over [a, b]; also used as the test
/// oracle for closed-form integrals.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 50);

/// One-dimensional standing wave Phi with Phi'' = W'(Phi), Phi(0) = 0,
/// Phi(+-inf) = +-1.
class StandingWave {
 public:
  explicit StandingWave(const PotentialSpec& spec);

  [[nodiscard]] double phi(double s) const;
  [[nodiscard]] double dphi(double s) const;
  [[nodiscard]] double d2phi(double s) const;

 private:
  PotentialSpec spec_;
  // Tabulated half-profile for non-quartic wells: phi_[k] = Phi(k * step),
  // k >= 0. Negative arguments use the odd/even reflection if the well is
  // symmetric, otherwise a second table.
  double step_ = 1e-3;
  std::vector<double> pos_;
  std::vector<double> neg_;
  double table_value(const std::vector<double>& table, double s, double sign) const;
};

/// max_s |Phi''(s) - W'(Phi(s))| over the given samples.
double standing_wave_residual(const PotentialSpec& spec, std::span<const double> s_samples);

}  // namespace acn
