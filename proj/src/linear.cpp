#include "acn/linear.hpp"

#include <stdexcept>

namespace acn {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) return;
  std::vector<double> c(n);
  double bet = diag[0];
  if (bet == 0.0) throw std::runtime_error("tridiagonal: zero pivot");
  rhs[0] /= bet;
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = upper[k - 1] / bet;
    bet = diag[k] - lower[k] * c[k];
    if (bet == 0.0) throw std::runtime_error("tridiagonal: zero pivot");
    rhs[k] = (rhs[k] - lower[k] * rhs[k - 1]) / bet;
  }
  for (std::size_t k = n - 1; k-- > 0;) rhs[k] -= c[k + 1] * rhs[k + 1];
}

void CyclicTridiagonal::factor(std::span<const double> diag, double off) {
  const std::size_t n = diag.size();
  if (n < 3) throw std::invalid_argument("cyclic tridiagonal needs n >= 3");
  off_ = off;
  cprime_.assign(n, 0.0);
  denom_.assign(n, 0.0);
  // Sherman-Morrison split A = T + u v^T with u = (gamma, 0, ..., off),
  // v = (1, 0, ..., off / gamma).
  gamma_ = -diag[0];
  std::vector<double> d(diag.begin(), diag.end());
  d[0] -= gamma_;
  d[n - 1] -= off * off / gamma_;
  // denom_ holds reciprocal pivots.
  denom_[0] = 1.0 / d[0];
  for (std::size_t k = 1; k < n; ++k) {
    cprime_[k] = off * denom_[k - 1];
    denom_[k] = 1.0 / (d[k] - off * cprime_[k]);
  }
  q_.assign(n, 0.0);
  q_[0] = gamma_;
  q_[n - 1] = off;
  thomas(q_);
  vq_scale_ = 1.0 + q_[0] + off / gamma_ * q_[n - 1];
}

void CyclicTridiagonal::thomas(std::span<double> x) const {
  const std::size_t n = denom_.size();
  x[0] *= denom_[0];
  for (std::size_t k = 1; k < n; ++k) x[k] = (x[k] - off_ * x[k - 1]) * denom_[k];
  for (std::size_t k = n - 1; k-- > 0;) x[k] -= cprime_[k + 1] * x[k + 1];
}

void CyclicTridiagonal::solve(std::span<double> rhs) const {
  const std::size_t n = denom_.size();
  thomas(rhs);
  const double vy = rhs[0] + off_ / gamma_ * rhs[n - 1];
  const double f = vy / vq_scale_;
  for (std::size_t k = 0; k < n; ++k) rhs[k] -= f * q_[k];
}

}  // namespace acn
