#pragma once

#include <iosfwd>
#include <string>

#include "acn/grid.hpp"

namespace acn {

struct Snapshot {
  ScalarField u;
  double eps = 0.0;
};

// Plain-text snapshot, version 1:
//   ac-snap 1 / n 2 / nr / ntheta / R / eps / t, then nr*ntheta values,
//   ring-major, 17 significant digits.
void write_snapshot(std::ostream& os, const ScalarField& u, double eps);
void write_snapshot(const std::string& path, const ScalarField& u, double eps);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

}  // namespace acn
