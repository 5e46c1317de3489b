#include "acn/varifold.hpp"

#include <cmath>
#include <limits>

namespace acn {

VectorTestField VectorTestField::constant(const Vec2& c) {
  return {"constant", [c](const Vec2&) { return c; },
          [](const Vec2&) { return Mat2::Zero().eval(); },
          {}};
}

VectorTestField VectorTestField::tangential_polynomial() {
  return {"tangential",
          [](const Vec2& x) -> Vec2 {
            const double q = 1.0 + x.x() + x.y() * x.y();
            return {-q * x.y(), q * x.x()};
          },
          [](const Vec2& x) -> Mat2 {
            const double q = 1.0 + x.x() + x.y() * x.y();
            const double qx = 1.0, qy = 2.0 * x.y();
            Mat2 J;
            J << -qx * x.y(), -qy * x.y() - q,
                 qx * x.x() + q, qy * x.x();
            return J;
          },
          [](const Vec2& x) {
            // q (x1 x2 - x2 x1) / |x|; both products round identically
            const double q = 1.0 + x.x() + x.y() * x.y();
            return q * (x.x() * x.y() - x.y() * x.x()) / x.norm();
          }};
}

VectorTestField VectorTestField::radial_bump(double center, double width) {
  auto b = [=](double r) {
    const double s = (r - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return q * q * q;
  };
  auto db = [=](double r) {
    const double s = (r - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return -6.0 * s * q * q / width;
  };
  return {"radial_bump", [b](const Vec2& x) -> Vec2 { return b(x.norm()) * x; },
          [b, db](const Vec2& x) -> Mat2 {
            const double r = x.norm();
            Mat2 J = b(r) * Mat2::Identity();
            if (r > 0.0) J += db(r) / r * (x * x.transpose());
            return J;
          },
          {}};
}

DiscreteVarifold build_varifold(const ScalarField& u, double eps, const PotentialSpec& pot,
                                double g_tol) {
  if (!(g_tol > 0.0)) throw std::invalid_argument("g_tol must be positive");
  const PolarGrid& g = *u.grid;
  const GradientField grad = gradient(u);
  const MeasureFields mf = measure_fields(u, eps, pot);
  DiscreteVarifold v;
  v.grid = u.grid;
  std::vector<double> w(u.size(), 0.0);
  for (std::size_t i = 0; i < g.nr(); ++i) {
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
      const std::size_t k = g.index(i, j);
      const Vec2 d(grad.gx.values[k], grad.gy.values[k]);
      const double n = d.norm();
      if (n > g_tol) {
        v.cells.push_back(k);
        v.weight.push_back(mf.e.values[k] * g.area(i));
        v.normal.push_back(d / n);
        w[k] = mf.e.values[k];
      } else {
        v.null_cells.push_back(k);
        v.null_weight.push_back(pot.w(u.values[k]) / eps * g.area(i));
      }
    }
  }
  v.mass = integrate(g, w);
  return v;
}

namespace {

Vec2 cell_point(const PolarGrid& g, std::size_t k) {
  return g.point(k / g.ntheta(), k % g.ntheta());
}

}  // namespace

double first_variation_direct(const DiscreteVarifold& v, const VectorTestField& g) {
  const PolarGrid& grid = *v.grid;
  std::vector<double> terms(grid.size(), 0.0);
  for (std::size_t m = 0; m < v.cells.size(); ++m) {
    const std::size_t k = v.cells[m];
    const Mat2 J = g.jacobian(cell_point(grid, k));
    const Vec2& a = v.normal[m];
    terms[k] = v.weight[m] * (J.trace() - a.dot(J * a));
  }
  return pairwise_sum(terms);
}

FirstVariationReport first_variation_pde_rhs(const ScalarField& u, double eps,
                                             const PotentialSpec& pot, const VectorTestField& g,
                                             double g_tol) {
  const PolarGrid& grid = *u.grid;
  const DiscreteVarifold v = build_varifold(u, eps, pot, g_tol);
  FirstVariationReport rep;
  rep.lhs = first_variation_direct(v, g);
  rep.mass = v.mass;

  const GradientField grad = gradient(u);
  const ScalarField lap = laplacian(u);
  const MeasureFields mf = measure_fields(u, eps, pot);
  std::vector<double> t1(u.size()), t2(u.size(), 0.0), t4(u.size(), 0.0);
  for (std::size_t i = 0; i < grid.nr(); ++i) {
    for (std::size_t j = 0; j < grid.ntheta(); ++j) {
      const std::size_t k = grid.index(i, j);
      const Vec2 x = grid.point(i, j);
      const Vec2 du(grad.gx.values[k], grad.gy.values[k]);
      t1[k] = g.value(x).dot(du) * (eps * lap.values[k] - pot.w1(u.values[k]) / eps);
      const Mat2 J = g.jacobian(x);
      const double n = du.norm();
      if (n > g_tol) {
        const Vec2 a = du / n;
        t2[k] = a.dot(J * a) * mf.xi.values[k];
      } else {
        t4[k] = -J.trace() * pot.w(u.values[k]) / eps;
      }
    }
  }
  rep.curvature_term = integrate(grid, t1);
  rep.discrepancy_term = integrate(grid, t2);
  rep.null_term = integrate(grid, t4);

  // boundary term from the boundary trace, as in boundary_energy
  const std::vector<double> ub = boundary_trace(u);
  const std::size_t nt = grid.ntheta();
  std::vector<double> tb(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    const Vec2 p = grid.boundary_point(j);
    const Vec2 nu(grid.cos_theta(j), grid.sin_theta(j));
    const double gn = g.normal_at(p, nu);
    if (gn == 0.0) {
      tb[j] = 0.0;
      continue;
    }
    const double ut = (ub[(j + 1) % nt] - ub[(j + nt - 1) % nt]) / (2.0 * grid.dtheta() * grid.radius());
    tb[j] = gn * (0.5 * eps * ut * ut + pot.w(ub[j]) / eps);
  }
  rep.boundary_term = integrate_boundary(grid, tb);
  rep.rhs = rep.curvature_term + rep.discrepancy_term + rep.boundary_term + rep.null_term;
  return rep;
}

GradientField mean_curvature_field(const ScalarField& u, double eps, const PotentialSpec& pot,
                                   double delta_reg) {
  const GradientField grad = gradient(u);
  const ScalarField lap = laplacian(u);
  GradientField h{ScalarField(u.grid, u.t), ScalarField(u.grid, u.t)};
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double f = -eps * lap.values[k] + pot.w1(u.values[k]) / eps;
    const double gx = grad.gx.values[k], gy = grad.gy.values[k];
    const double denom = eps * (gx * gx + gy * gy) + delta_reg;
    h.gx.values[k] = f * gx / denom;
    h.gy.values[k] = f * gy / denom;
  }
  return h;
}

BrakkeLedger::BrakkeLedger(TestFunction phi, const DiskGeometry& geom, PotentialSpec pot)
    : phi_(std::move(phi)), geom_(geom), pot_(std::move(pot)) {
  require_neumann(phi_, geom_);
}

void BrakkeLedger::on_step(const State& prev, const State& next, double dt) {
  const PolarGrid& g = *next.u.grid;
  const double eps = next.eps;
  const double t = next.t();
  const GradientField grad = gradient(next.u);
  const MeasureFields mf = measure_fields(next.u, eps, pot_);
  std::vector<double> v(next.u.size());
  for (std::size_t i = 0; i < g.nr(); ++i) {
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
      const std::size_t k = g.index(i, j);
      const Vec2 x = g.point(i, j);
      const double f = -eps * (next.u.values[k] - prev.u.values[k]) / dt;
      const Vec2 du(grad.gx.values[k], grad.gy.values[k]);
      v[k] = -f * f * phi_.value(x, t) / eps + f * phi_.grad(x, t).dot(du) +
             phi_.dt(x, t) * mf.e.values[k];
    }
  }
  identity_ += dt * integrate(g, v);
}

void BrakkeLedger::on_sample(const State& s, DiagnosticsRow& row) {
  const PolarGrid& g = *s.u.grid;
  const double eps = s.eps;
  const double t = s.t();
  const MeasureFields mf = measure_fields(s.u, eps, pot_);
  const GradientField h = mean_curvature_field(s.u, eps, pot_, default_delta_reg(eps));
  std::vector<double> m(s.u.size()), vs(s.u.size());
  for (std::size_t i = 0; i < g.nr(); ++i) {
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
      const std::size_t k = g.index(i, j);
      const Vec2 x = g.point(i, j);
      const Vec2 hk(h.gx.values[k], h.gy.values[k]);
      const double p = phi_.value(x, t);
      m[k] = p * mf.e.values[k];
      vs[k] = (-p * hk.squaredNorm() + phi_.grad(x, t).dot(hk)) * mf.e.values[k];
    }
  }
  t_.push_back(t);
  lhs_.push_back(integrate(g, m));
  id_.push_back(identity_);
  var_.push_back(integrate(g, vs));
  row.brakke_lhs.push_back(lhs_.back());
  row.brakke_rhs.push_back(identity_);
  row.brakke_varifold.push_back(var_.back());
}

BrakkeLedger::Interval BrakkeLedger::interval(double t1, double t2) const {
  if (t_.empty()) throw std::runtime_error("Brakke ledger has no samples");
  auto nearest = [&](double t) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < t_.size(); ++k)
      if (std::abs(t_[k] - t) < std::abs(t_[best] - t)) best = k;
    return best;
  };
  const std::size_t a = nearest(t1), b = nearest(t2);
  Interval r;
  r.t1 = t_[a];
  r.t2 = t_[b];
  r.lhs_change = lhs_[b] - lhs_[a];
  r.identity_change = id_[b] - id_[a];
  for (std::size_t k = a; k < b; ++k) r.varifold_integral += 0.5 * (t_[k + 1] - t_[k]) * (var_[k] + var_[k + 1]);
  return r;
}

}  // namespace acn
