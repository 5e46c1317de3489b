#pragma once

#include <functional>
#include <string>
#include <vector>

#include "acn/geometry.hpp"
#include "acn/grid.hpp"
#include "acn/measures.hpp"
#include "acn/potential.hpp"
#include "acn/solver.hpp"

namespace acn {

/// C^1 vector field g with Jacobian J(i, j) = d_j g_i.
struct VectorTestField {
  std::string name;
  std::function<Vec2(const Vec2&)> value;
  std::function<Mat2(const Vec2&)> jacobian;
  /// g(x) . x/|x| on the boundary. Fields that are tangent by construction
  /// supply a closed form so that it is exactly zero in floating point.
  std::function<double(const Vec2&)> normal_component;

  [[nodiscard]] double normal_at(const Vec2& x, const Vec2& nu) const {
    return normal_component ? normal_component(x) : value(x).dot(nu);
  }

  static VectorTestField constant(const Vec2& c);
  /// (1 + x1 + x2^2) (-x2, x1): polynomial, tangent to every circle |x| = const,
  /// so g . nu vanishes identically on the boundary.
  static VectorTestField tangential_polynomial();
  /// x b(|x|) with b(r) = (1 - ((r - c)/w)^2)^3 on |r - c| < w, else 0.
  static VectorTestField radial_bump(double center, double width);
};

/// Discrete varifold: one atom per cell with |grad u| > g_tol, weight
/// e * area and tangent projection I - a (x) a.
struct DiscreteVarifold {
  GridPtr grid;
  std::vector<std::size_t> cells;
  std::vector<double> weight;
  std::vector<Vec2> normal;  // a = grad u / |grad u|
  std::vector<std::size_t> null_cells;
  std::vector<double> null_weight;  // W/eps * area
  double mass = 0.0;

  [[nodiscard]] Mat2 projection(std::size_t k) const {
    return Mat2::Identity() - normal[k] * normal[k].transpose();
  }
};

DiscreteVarifold build_varifold(const ScalarField& u, double eps, const PotentialSpec& pot,
                                double g_tol);
inline double default_g_tol(double eps) { return 1e-10 / eps; }

/// delta V(g) = sum_k w_k (grad g : P_k).
double first_variation_direct(const DiscreteVarifold& v, const VectorTestField& g);

struct FirstVariationReport {
  double lhs = 0.0;
  double curvature_term = 0.0;    // int (g . grad u)(eps Lap u - W'/eps)
  double discrepancy_term = 0.0;  // int grad g : (a (x) a) xi over {grad u != 0}
  double boundary_term = 0.0;     // int_bdry (g . nu) e
  double null_term = 0.0;         // -int_{grad u = 0} div g W/eps
  double rhs = 0.0;
  double mass = 0.0;
  [[nodiscard]] double relative_gap() const {
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + mass);
  }
};

FirstVariationReport first_variation_pde_rhs(const ScalarField& u, double eps,
                                             const PotentialSpec& pot, const VectorTestField& g,
                                             double g_tol);

/// h = f grad u / (eps |grad u|^2 + delta) with f = -eps Lap u + W'/eps.
/// With this sign delta V(g) = -int h . g d||V|| on the interface ridge.
GradientField mean_curvature_field(const ScalarField& u, double eps, const PotentialSpec& pot,
                                   double delta_reg);
inline double default_delta_reg(double eps) { return 1e-8 / eps; }

/// Two-sided Brakke ledger for one test function, accumulated along a run.
/// Identity side: sum over steps of dt [int (-f^2 phi/eps + f grad phi . grad u)
/// + int d_t phi dmu] with f = -eps (u^{k+1} - u^k)/dt. Varifold side:
/// int (-phi |h|^2 + grad phi . h) dmu at each sample.
class BrakkeLedger : public RunObserver {
 public:
  BrakkeLedger(TestFunction phi, const DiskGeometry& geom, PotentialSpec pot);

  void on_step(const State& prev, const State& next, double dt) override;
  void on_sample(const State& s, DiagnosticsRow& row) override;

  struct Interval {
    double t1 = 0.0, t2 = 0.0;
    double lhs_change = 0.0;       // int phi dmu |_{t1}^{t2}
    double identity_change = 0.0;  // identity side over the interval
    double varifold_integral = 0.0;
    [[nodiscard]] double identity_defect() const {
      return lhs_change == 0.0 ? std::abs(identity_change)
                               : std::abs(lhs_change - identity_change) / std::abs(lhs_change);
    }
    [[nodiscard]] double margin() const { return varifold_integral - lhs_change; }
  };

  /// Uses the samples nearest to t1 and t2; the varifold side by the
  /// trapezoid rule over the samples in between.
  [[nodiscard]] Interval interval(double t1, double t2) const;

  [[nodiscard]] const TestFunction& phi() const { return phi_; }
  [[nodiscard]] const std::vector<double>& times() const { return t_; }
  [[nodiscard]] const std::vector<double>& mass() const { return lhs_; }

 private:
  TestFunction phi_;
  DiskGeometry geom_;
  PotentialSpec pot_;
  double identity_ = 0.0;
  std::vector<double> t_, lhs_, id_, var_;
};

}  // namespace acn
