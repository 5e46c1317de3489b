#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "acn/diagnostics.hpp"
#include "acn/grid.hpp"
#include "acn/linear.hpp"
#include "acn/potential.hpp"

namespace acn {

enum class Scheme {
  LinearizedImplicit,  ///< coupled implicit diffusion + linearized implicit reaction (default)
  ImexAdi,             ///< explicit reaction, Strang-alternated line-implicit diffusion
  Explicit             ///< forward Euler
};

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

struct SolverConfig {
  double eps = 0.03;
  double dt = 0.0;  // 0 selects 0.2 eps^2
  double t_end = 0.0;
  Scheme scheme = Scheme::LinearizedImplicit;
  int save_every = 1;
  double linear_tol = 1e-12;  // relative residual of the implicit solve
  int max_iterations = 1000;

  [[nodiscard]] double time_step() const { return dt > 0.0 ? dt : 0.2 * eps * eps; }

  /// Throws std::invalid_argument for hard violations (eps <= 0,
  /// dt > 0.2 eps^2, explicit CFL, t_end < 0). Returns resolution warnings.
  std::vector<std::string> validate(const PolarGrid& grid) const;
};

/// Number of steps and the step actually used: t_end is split into
/// ceil(t_end / dt) equal steps, so the used step never exceeds dt.
struct StepPlan {
  double dt = 0.0;
  long steps = 0;
};
StepPlan plan_steps(const SolverConfig& cfg);

struct State {
  ScalarField u;
  double eps = 0.0;
  long step = 0;
  [[nodiscard]] double t() const { return u.t; }
};

/// Initial interface. Signed distance is positive on the "inside": the
/// disk r < r0 for concentric, the half plane x2 < b for chord/diameter.
struct InterfaceSpec {
  enum class Kind { Concentric, Chord };
  Kind kind = Kind::Concentric;
  double r0 = 0.5;
  double b = 0.0;

  static InterfaceSpec concentric(double r0) { return {Kind::Concentric, r0, 0.0}; }
  static InterfaceSpec diameter() { return {Kind::Chord, 0.0, 0.0}; }
  static InterfaceSpec chord(double b) { return {Kind::Chord, 0.0, b}; }

  [[nodiscard]] double signed_distance(const Vec2& x) const {
    return kind == Kind::Concentric ? r0 - x.norm() : b - x.y();
  }
};

/// u0 = Phi(d(x)/eps). Throws std::invalid_argument for r0 <= 2 eps,
/// r0 >= R or |b| >= R.
State init_well_prepared(const GridPtr& grid, double eps, const InterfaceSpec& iface,
                         const PotentialSpec& pot);

class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, long step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
  [[nodiscard]] long step() const { return step_; }

 private:
  long step_;
};

/// Advances the Allen-Cahn equation u_t = Lap u - W'(u)/eps^2 with zero
/// flux at r = R. Holds scratch storage; not thread-safe per instance.
class TimeStepper {
 public:
  TimeStepper(GridPtr grid, SolverConfig cfg, PotentialSpec pot);

  [[nodiscard]] State step(const State& s);
  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] int last_iterations() const { return last_iters_; }
  [[nodiscard]] const SolverConfig& config() const { return cfg_; }

 private:
  GridPtr grid_;
  SolverConfig cfg_;
  PotentialSpec pot_;
  double dt_;
  int last_iters_ = 0;
  // scratch for the implicit solves
  std::vector<double> react_, x_, r_, z_, p_, q_, tmp_;
  std::vector<CyclicTridiagonal> rings_;
  // previous input, for the extrapolated initial guess
  std::vector<double> prev_in_;
  long prev_step_ = -1;

  void linearized_implicit(const std::vector<double>& u, std::vector<double>& out, long step);
  void imex_adi(const std::vector<double>& u, std::vector<double>& out, long step);
  void explicit_euler(const std::vector<double>& u, std::vector<double>& out);

  void apply_operator(std::span<const double> x, std::span<double> y) const;
  void precondition(std::span<const double> r, std::span<double> z);
  void implicit_theta(std::vector<double>& v);
  void implicit_r(std::vector<double>& v);
};

/// Hooks invoked by `run`. on_step sees every consecutive pair of states;
/// on_sample may add columns to the row of a sampled state.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_step(const State& /*prev*/, const State& /*next*/, double /*dt*/) {}
  virtual void on_sample(const State& /*s*/, DiagnosticsRow& /*row*/) {}
};

struct RunResult {
  State final_state;
  DiagnosticsTable table;
  double dt = 0.0;
  long steps = 0;
  long linear_iterations = 0;
};

/// Advances to t_end. Samples the initial state, every save_every steps and
/// the final state. Each row carries t, E_total, cumulative dissipation,
/// sup eps|grad u| and max|u|. Throws NumericalAbort on non-finite values.
RunResult run(const State& init, const SolverConfig& cfg, const PotentialSpec& pot,
              std::span<RunObserver* const> observers = {});

/// E = int (eps/2 |grad u|^2 + W(u)/eps) dx with the scheme-consistent
/// |grad u|^2 of `grad_sq`.
double total_energy(const ScalarField& u, double eps, const PotentialSpec& pot);

/// |E(T) + sum dt D - E(0)| / E(0) from a run table (0 if E(0) = 0 and the
/// numerator vanishes). Throws on an empty table.
double energy_identity_defect(const DiagnosticsTable& table);

/// max over cells of eps |grad u| with the centred gradient.
double sup_eps_gradient(const State& s);

double max_abs(const ScalarField& u);

/// 1-D Allen-Cahn on [-L, L] with Neumann ends, linearized implicit Euler.
/// Used only for solver verification.
struct IntervalRun {
  std::vector<double> x;
  std::vector<double> u0;
  std::vector<double> u;
  double h = 0.0;
};
IntervalRun run_interval(double half_length, std::size_t cells, double eps, double t_end,
                         double dt, const PotentialSpec& pot, double center = 0.0);

/// Position of the first sign change of u (linear interpolation).
double interval_zero(const IntervalRun& r, bool final_state = true);

}  // namespace acn
