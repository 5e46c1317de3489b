#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

namespace acn {

using Cell = std::optional<double>;

/// One time sample of the scalar diagnostics. Unset cells are written as
/// empty CSV fields.
struct DiagnosticsRow {
  double t = 0.0;
  long step = 0;
  Cell E_total, E_boundary, dissipation;
  Cell sup_xi, int_abs_xi;
  Cell radius_est, angle_min, angle_max;
  Cell sup_eps_grad;
  std::vector<Cell> G;            // one per monotonicity probe
  std::vector<Cell> brakke_lhs;   // int phi dmu, one per test function
  std::vector<Cell> brakke_rhs;   // cumulative identity side
  // Not part of the CSV schema; kept for checks and report.txt.
  double max_abs_u = 0.0;
  std::vector<Cell> brakke_varifold;
  std::vector<Cell> phi_mass;     // int phi dmu for the semidecreasing check
};

using DiagnosticsTable = std::vector<DiagnosticsRow>;

/// Fixed column order: t, E_total, E_boundary, dissipation, sup_xi,
/// int_abs_xi, radius_est, angle_min, angle_max, sup_eps_grad, then G_k,
/// brakke_lhs_k, brakke_rhs_k (1-based k).
void write_csv(std::ostream& os, const DiagnosticsTable& table, std::size_t n_probes,
               std::size_t n_phi);

}  // namespace acn
