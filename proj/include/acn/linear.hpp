#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace acn {

/// Thomas algorithm for a tridiagonal system. `lower[0]` and `upper[n-1]`
/// are ignored. Requires a nonsingular system without pivoting (diagonally
/// dominant in all our uses).
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

/// Symmetric cyclic tridiagonal matrix with a varying diagonal and one
/// constant off-diagonal value. Factored once, solved many times
/// (Sherman-Morrison on top of Thomas).
class CyclicTridiagonal {
 public:
  CyclicTridiagonal() = default;
  void factor(std::span<const double> diag, double off);
  void solve(std::span<double> rhs) const;
  [[nodiscard]] std::size_t size() const { return denom_.size(); }

 private:
  double off_ = 0.0;
  double gamma_ = 0.0;
  double vq_scale_ = 0.0;
  std::vector<double> cprime_;
  std::vector<double> denom_;
  std::vector<double> q_;
  void thomas(std::span<double> x) const;
};

}  // namespace acn
