#include "acn/diagnostics.hpp"

#include <iomanip>
#include <ostream>

namespace acn {

namespace {

void put(std::ostream& os, const Cell& c) {
  os << ',';
  if (c) os << *c;
}

void put_at(std::ostream& os, const std::vector<Cell>& v, std::size_t k) {
  put(os, k < v.size() ? v[k] : Cell{});
}

}  // namespace

void write_csv(std::ostream& os, const DiagnosticsTable& table, std::size_t n_probes,
               std::size_t n_phi) {
  os << "t,E_total,E_boundary,dissipation,sup_xi,int_abs_xi,radius_est,angle_min,angle_max,"
        "sup_eps_grad";
  for (std::size_t k = 1; k <= n_probes; ++k) os << ",G_" << k;
  for (std::size_t k = 1; k <= n_phi; ++k) os << ",brakke_lhs_" << k << ",brakke_rhs_" << k;
  os << '\n' << std::setprecision(17);
  for (const auto& r : table) {
    os << r.t;
    put(os, r.E_total);
    put(os, r.E_boundary);
    put(os, r.dissipation);
    put(os, r.sup_xi);
    put(os, r.int_abs_xi);
    put(os, r.radius_est);
    put(os, r.angle_min);
    put(os, r.angle_max);
    put(os, r.sup_eps_grad);
    for (std::size_t k = 0; k < n_probes; ++k) put_at(os, r.G, k);
    for (std::size_t k = 0; k < n_phi; ++k) {
      put_at(os, r.brakke_lhs, k);
      put_at(os, r.brakke_rhs, k);
    }
    os << '\n';
  }
}

}  // namespace acn
