#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "acn/config.hpp"
#include "acn/interface.hpp"
#include "acn/kernels.hpp"
#include "acn/measures.hpp"
#include "acn/solver.hpp"
#include "acn/varifold.hpp"

namespace acn {

struct ExperimentConfig {
  std::string scenario = "concentric";  // concentric | diameter | chord | selftest-1d
  double R = 1.0;
  std::size_t nr = 0, ntheta = 0;  // 0 = auto from grid_scale
  double grid_scale = 4.0;         // auto grid: dr = R dtheta = eps / grid_scale
  SolverConfig solver;
  double r0 = 0.6;
  double b = 0.3;

  bool measures = true;
  std::vector<MonotonicityProbe> probes;
  double c3 = 1.0;
  std::optional<double> c4;

  std::optional<double> analysis_t;  // state-level checks (first variation, density)
  std::vector<std::string> varifold_fields;
  double bump_center = 0.5, bump_width = 0.25;
  std::vector<std::string> brakke_phi;
  std::optional<double> brakke_t1, brakke_t2;
  std::size_t density_samples = 0;
  std::size_t appendix_samples = 0;
  unsigned seed = 1;
  bool semidecreasing = false;

  std::vector<double> radius_times;
  std::optional<double> energy_time;
  std::optional<double> angle_from;
  double angle_tol = 5.0;
  // width of the contact-angle fitting band, in units of eps
  double angle_band = 2.0;
  bool stationary = false;

  std::vector<double> snapshot_times;

  double interval_half_length = 1.0;
  std::size_t interval_cells = 400;

  std::vector<std::string> warnings;

  [[nodiscard]] std::size_t n_probes() const { return probes.size(); }
};

/// Builds and validates an experiment from a parsed config. Throws
/// ConfigError on unknown keys, bad values or violated preconditions.
ExperimentConfig load_experiment(const Config& cfg);

/// Grid for the configuration (explicit or auto-scaled to eps).
GridPtr experiment_grid(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";
  bool pass = false;
};

struct AngleSample {
  double t = 0.0;
  std::vector<ContactAngle> angles;
};

struct ExperimentResult {
  ExperimentConfig config;
  GridPtr grid;
  RunResult run;
  double runtime_s = 0.0;
  double E0 = 0.0;
  std::vector<CheckResult> checks;
  std::vector<MonotonicityReport> monotonicity;
  std::vector<std::string> brakke_names;
  std::vector<BrakkeLedger::Interval> brakke;
  std::vector<std::string> variation_names;
  std::vector<FirstVariationReport> variation;
  std::optional<DensityReport> density;
  std::optional<AppendixReport> appendix;
  std::optional<double> semidecreasing_violation;
  std::vector<AngleSample> angles;
  std::vector<double> heights;  // chord position per sample
  std::optional<State> analysis_state;
  std::optional<double> boundary_energy_integral;
  std::vector<std::string> notes;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] const CheckResult* check(const std::string& name) const;
};

/// Runs one experiment. If out_dir is non-empty, writes diagnostics.csv,
/// report.txt, snapshots and interface_*.csv there. Throws NumericalAbort
/// on blow-up.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

void write_report(std::ostream& os, const ExperimentResult& r);

struct SweepRow {
  double eps = 0.0;
  std::size_t nr = 0, ntheta = 0;
  double dt = 0.0;
  double t_match = 0.0;
  double int_abs_xi = 0.0;
  double sup_xi = 0.0;
  double sup_defect = 0.0;
  double sup_eps_grad = 0.0;
  double runtime_s = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double c4_fit = 0.0;
  std::vector<CheckResult> checks;
  std::vector<ExperimentResult> runs;
  [[nodiscard]] bool passed() const;
};

/// C4 budget fitted on the coarsest run of a sweep and then held fixed.
double fit_c4(double sup_defect_coarsest);

/// Runs the configuration once per eps (strictly decreasing), with the grid
/// auto-scaled to each eps, and compares the runs at t_match.
SweepResult run_sweep(const ExperimentConfig& base, const std::vector<double>& eps_list,
                      const std::filesystem::path& out_dir, double t_match = 0.05);

void write_sweep_csv(std::ostream& os, const SweepResult& s);

/// 1-D standing wave, grid and potential invariants. Returns the checks.
std::vector<CheckResult> selftest();

}  // namespace acn
