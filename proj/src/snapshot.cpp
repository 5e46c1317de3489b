#include "acn/snapshot.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace acn {

void write_snapshot(std::ostream& os, const ScalarField& u, double eps) {
  const PolarGrid& g = *u.grid;
  os << std::setprecision(17);
  os << "ac-snap 1\n"
     << "n 2\n"
     << "nr " << g.nr() << "\n"
     << "ntheta " << g.ntheta() << "\n"
     << "R " << g.radius() << "\n"
     << "eps " << eps << "\n"
     << "t " << u.t << "\n";
  for (std::size_t i = 0; i < g.nr(); ++i) {
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
      if (j) os << ' ';
      os << u(i, j);
    }
    os << '\n';
  }
}

void write_snapshot(const std::string& path, const ScalarField& u, double eps) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open snapshot for writing: " + path);
  write_snapshot(f, u, eps);
}

namespace {

template <class T>
T expect(std::istream& is, const char* key) {
  std::string k;
  T v{};
  if (!(is >> k >> v) || k != key)
    throw std::runtime_error(std::string("snapshot: expected '") + key + "' header line");
  return v;
}

}  // namespace

Snapshot read_snapshot(std::istream& is) {
  if (expect<int>(is, "ac-snap") != 1) throw std::runtime_error("snapshot: unsupported version");
  if (expect<int>(is, "n") != 2) throw std::runtime_error("snapshot: only n = 2 is supported");
  const auto nr = expect<std::size_t>(is, "nr");
  const auto nt = expect<std::size_t>(is, "ntheta");
  const auto radius = expect<double>(is, "R");
  const auto eps = expect<double>(is, "eps");
  const auto t = expect<double>(is, "t");
  auto grid = make_grid(nr, nt, radius);
  std::vector<double> v(grid->size());
  for (double& x : v)
    if (!(is >> x)) throw std::runtime_error("snapshot: truncated value block");
  return {ScalarField(grid, std::move(v), t), eps};
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open snapshot: " + path);
  return read_snapshot(f);
}

}  // namespace acn
