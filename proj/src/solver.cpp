#include "acn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace acn {

Scheme parse_scheme(const std::string& name) {
  if (name == "linearized-implicit") return Scheme::LinearizedImplicit;
  if (name == "imex-adi") return Scheme::ImexAdi;
  if (name == "explicit") return Scheme::Explicit;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::LinearizedImplicit: return "linearized-implicit";
    case Scheme::ImexAdi: return "imex-adi";
    case Scheme::Explicit: return "explicit";
  }
  return "?";
}

std::vector<std::string> SolverConfig::validate(const PolarGrid& grid) const {
  if (!(eps > 0.0)) throw std::invalid_argument("solver.eps must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("solver.t_end must be nonnegative");
  if (save_every < 1) throw std::invalid_argument("solver.save_every must be >= 1");
  const double h = time_step();
  if (h > 0.2 * eps * eps * (1.0 + 1e-12))
    throw std::invalid_argument("solver.dt exceeds the reaction bound 0.2 eps^2");
  if (scheme == Scheme::Explicit) {
    const double rmin_dtheta = grid.r(0) * grid.dtheta();
    const double cfl = 0.2 * std::min(grid.dr() * grid.dr(), rmin_dtheta * rmin_dtheta);
    if (h > cfl * (1.0 + 1e-12))
      throw std::invalid_argument("solver.dt exceeds the explicit diffusion bound");
  }
  std::vector<std::string> warn;
  if (grid.dr() > eps / 4.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "grid under-resolves the interface radially: dr = " << grid.dr() << " > eps/4";
    warn.push_back(os.str());
  }
  if (grid.radius() * grid.dtheta() > eps / 4.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "grid under-resolves the interface at the outer ring: R dtheta = "
       << grid.radius() * grid.dtheta() << " > eps/4";
    warn.push_back(os.str());
  }
  return warn;
}

State init_well_prepared(const GridPtr& grid, double eps, const InterfaceSpec& iface,
                         const PotentialSpec& pot) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double R = grid->radius();
  if (iface.kind == InterfaceSpec::Kind::Concentric) {
    if (iface.r0 <= 2.0 * eps) throw std::invalid_argument("degenerate interface: r0 <= 2 eps");
    if (iface.r0 >= R) throw std::invalid_argument("interface radius must be inside the disk");
  } else if (std::abs(iface.b) >= R) {
    throw std::invalid_argument("chord offset must satisfy |b| < R");
  }
  const StandingWave phi(pot);
  State s;
  s.u = sample_field(grid, [&](const Vec2& x) { return phi.phi(iface.signed_distance(x) / eps); });
  s.eps = eps;
  return s;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b, std::vector<double>& tmp) {
  tmp.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) tmp[k] = a[k] * b[k];
  return pairwise_sum(tmp);
}

}  // namespace

TimeStepper::TimeStepper(GridPtr grid, SolverConfig cfg, PotentialSpec pot)
    : grid_(std::move(grid)), cfg_(cfg), pot_(std::move(pot)), dt_(cfg.time_step()) {
  const std::size_t n = grid_->size();
  react_.resize(n);
  x_.resize(n);
  r_.resize(n);
  z_.resize(n);
  p_.resize(n);
  q_.resize(n);
  tmp_.resize(n);
  rings_.resize(grid_->nr());
}

State TimeStepper::step(const State& s) {
  State next;
  next.eps = s.eps;
  next.step = s.step + 1;
  std::vector<double> out(s.u.size());
  switch (cfg_.scheme) {
    case Scheme::LinearizedImplicit: linearized_implicit(s.u.values, out, next.step); break;
    case Scheme::ImexAdi: imex_adi(s.u.values, out, next.step); break;
    case Scheme::Explicit: explicit_euler(s.u.values, out); break;
  }
  for (double v : out)
    if (!std::isfinite(v)) throw NumericalAbort("non-finite value in u", next.step);
  next.u = ScalarField(s.u.grid, std::move(out), s.u.t + dt_);
  return next;
}

// Area-weighted operator A = a (c I - dt L): symmetric positive definite
// while 1 + dt W''/eps^2 > 0, which dt <= 0.2 eps^2 guarantees for the
// quartic well.
void TimeStepper::apply_operator(std::span<const double> x, std::span<double> y) const {
  const PolarGrid& g = *grid_;
  const std::size_t nr = g.nr(), nt = g.ntheta();
  const double h = dt_;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < nr; ++i) {
    const double ri = g.r(i);
    const double area = g.area(i);
    const double am = i == 0 ? 0.0 : g.r_face(i) * g.dtheta() / g.dr();
    const double ap = i + 1 == nr ? 0.0 : g.r_face(i + 1) * g.dtheta() / g.dr();
    const double b = g.dr() / (ri * g.dtheta());
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t k = i * nt + j;
      const double c = x[k];
      const std::size_t jp = j + 1 == nt ? 0 : j + 1;
      const std::size_t jm = j == 0 ? nt - 1 : j - 1;
      double flux = b * (2.0 * c - x[i * nt + jp] - x[i * nt + jm]);
      if (i > 0) flux += am * (c - x[k - nt]);
      if (i + 1 < nr) flux += ap * (c - x[k + nt]);
      y[k] = area * react_[k] * c + h * flux;
    }
  }
}

// Symmetric block Gauss-Seidel with one cyclic tridiagonal block per ring.
void TimeStepper::precondition(std::span<const double> r, std::span<double> z) {
  const PolarGrid& g = *grid_;
  const std::size_t nr = g.nr(), nt = g.ntheta();
  const double h = dt_;
  auto coupling = [&](std::size_t i) { return -h * g.r_face(i + 1) * g.dtheta() / g.dr(); };
  // forward: (D + L) y = r
  for (std::size_t i = 0; i < nr; ++i) {
    std::span<double> zi = z.subspan(i * nt, nt);
    for (std::size_t j = 0; j < nt; ++j) zi[j] = r[i * nt + j];
    if (i > 0) {
      const double c = coupling(i - 1);
      for (std::size_t j = 0; j < nt; ++j) zi[j] -= c * z[(i - 1) * nt + j];
    }
    rings_[i].solve(zi);
  }
  // backward: z_i = y_i - D_i^{-1} U z_{i+1}
  std::vector<double> w(nt);
  for (std::size_t i = nr - 1; i-- > 0;) {
    const double c = coupling(i);
    for (std::size_t j = 0; j < nt; ++j) w[j] = c * z[(i + 1) * nt + j];
    rings_[i].solve(w);
    for (std::size_t j = 0; j < nt; ++j) z[i * nt + j] -= w[j];
  }
}

void TimeStepper::linearized_implicit(const std::vector<double>& u, std::vector<double>& out,
                                      long step) {
  const PolarGrid& g = *grid_;
  const std::size_t nr = g.nr(), nt = g.ntheta();
  const double h = dt_;
  const double e2 = cfg_.eps * cfg_.eps;
  std::vector<double>& rhs = q_;
  for (std::size_t i = 0; i < nr; ++i) {
    const double area = g.area(i);
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t k = i * nt + j;
      const PotentialValues w = pot_.eval(u[k]);
      react_[k] = 1.0 + h * w.w2 / e2;
      rhs[k] = area * (u[k] + h * (w.w2 * u[k] - w.w1) / e2);
    }
  }
  std::vector<double> diag(nt);
  for (std::size_t i = 0; i < nr; ++i) {
    const double ri = g.r(i);
    const double area = g.area(i);
    const double am = i == 0 ? 0.0 : g.r_face(i) * g.dtheta() / g.dr();
    const double ap = i + 1 == nr ? 0.0 : g.r_face(i + 1) * g.dtheta() / g.dr();
    const double b = g.dr() / (ri * g.dtheta());
    for (std::size_t j = 0; j < nt; ++j)
      diag[j] = area * react_[i * nt + j] + h * (am + ap + 2.0 * b);
    rings_[i].factor(diag, -h * b);
  }

  // PCG from the linear extrapolation of the last two states.
  if (prev_step_ == step - 1 && prev_in_.size() == u.size()) {
    for (std::size_t k = 0; k < u.size(); ++k) x_[k] = 2.0 * u[k] - prev_in_[k];
  } else {
    x_ = u;
  }
  prev_in_ = u;
  prev_step_ = step;
  apply_operator(x_, r_);
  for (std::size_t k = 0; k < r_.size(); ++k) r_[k] = rhs[k] - r_[k];
  const double bnorm = std::sqrt(dot(rhs, rhs, tmp_));
  const double stop = cfg_.linear_tol * (bnorm > 0.0 ? bnorm : 1.0);
  double rnorm = std::sqrt(dot(r_, r_, tmp_));
  int it = 0;
  if (rnorm > stop) {
    precondition(r_, z_);
    p_ = z_;
    double rz = dot(r_, z_, tmp_);
    std::vector<double> ap(r_.size());
    for (it = 1; it <= cfg_.max_iterations; ++it) {
      apply_operator(p_, ap);
      const double pap = dot(p_, ap, tmp_);
      if (!(pap > 0.0)) throw NumericalAbort("implicit solve lost positive definiteness", step);
      const double alpha = rz / pap;
      for (std::size_t k = 0; k < x_.size(); ++k) {
        x_[k] += alpha * p_[k];
        r_[k] -= alpha * ap[k];
      }
      rnorm = std::sqrt(dot(r_, r_, tmp_));
      if (rnorm <= stop) break;
      precondition(r_, z_);
      const double rz_new = dot(r_, z_, tmp_);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t k = 0; k < p_.size(); ++k) p_[k] = z_[k] + beta * p_[k];
    }
    if (it > cfg_.max_iterations) throw NumericalAbort("implicit solve did not converge", step);
  }
  last_iters_ = it;
  out = x_;
}

void TimeStepper::implicit_theta(std::vector<double>& v) {
  const PolarGrid& g = *grid_;
  const std::size_t nr = g.nr(), nt = g.ntheta();
  std::vector<double> diag(nt);
  for (std::size_t i = 0; i < nr; ++i) {
    const double ri = g.r(i);
    const double b = dt_ / (ri * ri * g.dtheta() * g.dtheta());
    std::fill(diag.begin(), diag.end(), 1.0 + 2.0 * b);
    rings_[i].factor(diag, -b);
    rings_[i].solve(std::span<double>(v).subspan(i * nt, nt));
  }
}

void TimeStepper::implicit_r(std::vector<double>& v) {
  const PolarGrid& g = *grid_;
  const std::size_t nr = g.nr(), nt = g.ntheta();
  std::vector<double> lo(nr), di(nr), up(nr);
  const double dr2 = g.dr() * g.dr();
  for (std::size_t i = 0; i < nr; ++i) {
    const double ri = g.r(i);
    const double am = i == 0 ? 0.0 : dt_ * g.r_face(i) / (ri * dr2);
    const double ap = i + 1 == nr ? 0.0 : dt_ * g.r_face(i + 1) / (ri * dr2);
    lo[i] = -am;
    up[i] = -ap;
    di[i] = 1.0 + am + ap;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < nt; ++j) {
    std::vector<double> col(nr);
    for (std::size_t i = 0; i < nr; ++i) col[i] = v[i * nt + j];
    solve_tridiagonal(lo, di, up, col);
    for (std::size_t i = 0; i < nr; ++i) v[i * nt + j] = col[i];
  }
}

void TimeStepper::imex_adi(const std::vector<double>& u, std::vector<double>& out, long step) {
  const double e2 = cfg_.eps * cfg_.eps;
  out.resize(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] - dt_ * pot_.w1(u[k]) / e2;
  if (step % 2 == 0) {
    implicit_theta(out);
    implicit_r(out);
  } else {
    implicit_r(out);
    implicit_theta(out);
  }
}

void TimeStepper::explicit_euler(const std::vector<double>& u, std::vector<double>& out) {
  const ScalarField f(grid_, u);
  const ScalarField lap = laplacian(f);
  const double e2 = cfg_.eps * cfg_.eps;
  out.resize(u.size());
  for (std::size_t k = 0; k < u.size(); ++k)
    out[k] = u[k] + dt_ * (lap.values[k] - pot_.w1(u[k]) / e2);
}

double total_energy(const ScalarField& u, double eps, const PotentialSpec& pot) {
  const ScalarField g2 = grad_sq(u);
  std::vector<double> e(u.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = 0.5 * eps * g2.values[k] + pot.w(u.values[k]) / eps;
  return integrate(*u.grid, e);
}

double sup_eps_gradient(const State& s) {
  const GradientField g = gradient(s.u);
  double m = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k)
    m = std::max(m, std::hypot(g.gx.values[k], g.gy.values[k]));
  return s.eps * m;
}

double max_abs(const ScalarField& u) {
  double m = 0.0;
  for (double v : u.values) m = std::max(m, std::abs(v));
  return m;
}

double energy_identity_defect(const DiagnosticsTable& table) {
  if (table.empty()) throw std::invalid_argument("energy_identity_defect: empty table");
  const auto& a = table.front();
  const auto& b = table.back();
  if (!a.E_total || !b.E_total || !b.dissipation)
    throw std::invalid_argument("energy_identity_defect: table lacks energy columns");
  const double e0 = *a.E_total;
  const double num = std::abs(*b.E_total + *b.dissipation - (a.dissipation ? *a.dissipation : 0.0) - e0);
  if (e0 == 0.0) return num;
  return num / std::abs(e0);
}

StepPlan plan_steps(const SolverConfig& cfg) {
  const double h0 = cfg.time_step();
  StepPlan p;
  p.steps = cfg.t_end > 0.0 ? static_cast<long>(std::ceil(cfg.t_end / h0 - 1e-9)) : 0;
  p.dt = p.steps > 0 ? cfg.t_end / static_cast<double>(p.steps) : h0;
  return p;
}

RunResult run(const State& init, const SolverConfig& cfg, const PotentialSpec& pot,
              std::span<RunObserver* const> observers) {
  const PolarGrid& grid = *init.u.grid;
  SolverConfig c = cfg;
  c.eps = init.eps;
  c.validate(grid);
  const StepPlan plan = plan_steps(c);
  const long nsteps = plan.steps;
  c.dt = plan.dt;
  TimeStepper stepper(init.u.grid, c, pot);

  RunResult res;
  res.dt = stepper.dt();
  res.steps = nsteps;
  double dissipation = 0.0;

  auto sample = [&](const State& s) {
    DiagnosticsRow row;
    row.t = s.t();
    row.step = s.step;
    row.E_total = total_energy(s.u, s.eps, pot);
    row.dissipation = dissipation;
    row.sup_eps_grad = sup_eps_gradient(s);
    row.max_abs_u = max_abs(s.u);
    for (RunObserver* o : observers) o->on_sample(s, row);
    res.table.push_back(std::move(row));
  };

  State cur = init;
  sample(cur);
  std::vector<double> du(cur.u.size());
  for (long n = 1; n <= nsteps; ++n) {
    State next = stepper.step(cur);
    res.linear_iterations += stepper.last_iterations();
    const double h = stepper.dt();
    for (std::size_t k = 0; k < du.size(); ++k) {
      const double v = (next.u.values[k] - cur.u.values[k]) / h;
      du[k] = v * v;
    }
    dissipation += h * cur.eps * integrate(grid, du);
    for (RunObserver* o : observers) o->on_step(cur, next, h);
    cur = std::move(next);
    if (n % c.save_every == 0 || n == nsteps) sample(cur);
  }
  res.final_state = std::move(cur);
  return res;
}

IntervalRun run_interval(double half_length, std::size_t cells, double eps, double t_end,
                         double dt, const PotentialSpec& pot, double center) {
  if (cells < 4) throw std::invalid_argument("interval needs at least 4 cells");
  IntervalRun out;
  out.h = 2.0 * half_length / static_cast<double>(cells);
  const StandingWave phi(pot);
  out.x.resize(cells);
  out.u0.resize(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    out.x[k] = -half_length + (static_cast<double>(k) + 0.5) * out.h;
    out.u0[k] = phi.phi((out.x[k] - center) / eps);
  }
  out.u = out.u0;
  const long nsteps = t_end > 0.0 ? static_cast<long>(std::ceil(t_end / dt - 1e-9)) : 0;
  const double h = nsteps > 0 ? t_end / static_cast<double>(nsteps) : dt;
  const double lam = h / (out.h * out.h);
  const double e2 = eps * eps;
  std::vector<double> lo(cells), di(cells), up(cells), rhs(cells);
  for (long n = 0; n < nsteps; ++n) {
    for (std::size_t k = 0; k < cells; ++k) {
      const PotentialValues w = pot.eval(out.u[k]);
      const double left = k == 0 ? 0.0 : lam;
      const double right = k + 1 == cells ? 0.0 : lam;
      lo[k] = -left;
      up[k] = -right;
      di[k] = 1.0 + left + right + h * w.w2 / e2;
      rhs[k] = out.u[k] + h * (w.w2 * out.u[k] - w.w1) / e2;
    }
    solve_tridiagonal(lo, di, up, rhs);
    out.u = rhs;
  }
  return out;
}

double interval_zero(const IntervalRun& r, bool final_state) {
  const auto& u = final_state ? r.u : r.u0;
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    if ((u[k] <= 0.0) != (u[k + 1] <= 0.0)) {
      const double s = u[k] / (u[k] - u[k + 1]);
      return r.x[k] + s * (r.x[k + 1] - r.x[k]);
    }
  }
  throw std::runtime_error("no interface");
}

}  // namespace acn
