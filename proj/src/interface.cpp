#include "acn/interface.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace acn {

namespace {

// Node layer i = nr is the boundary trace at r = R.
struct Nodes {
  const PolarGrid& g;
  const ScalarField& u;
  std::vector<double> trace;
  [[nodiscard]] double value(std::size_t i, std::size_t j) const {
    return i == g.nr() ? trace[j] : u(i, j);
  }
  [[nodiscard]] Vec2 point(std::size_t i, std::size_t j) const {
    return i == g.nr() ? g.boundary_point(j) : g.point(i, j);
  }
};

// Edge keys: radial edge (i,j)-(i+1,j), angular edge (i,j)-(i,j+1) and
// spoke from the pole to (0,j).
using EdgeKey = std::array<std::size_t, 3>;  // {kind, i, j}
constexpr std::size_t kRadial = 0, kAngular = 1, kSpoke = 2;

bool positive(double v) { return v > 0.0; }

}  // namespace

std::vector<Polyline> zero_level_set(const ScalarField& u) {
  const PolarGrid& g = *u.grid;
  const Nodes nodes{g, u, boundary_trace(u)};
  const std::size_t nr = g.nr(), nt = g.ntheta();

  bool pos = false, neg = false;
  for (double v : u.values) (positive(v) ? pos : neg) = true;
  if (!(pos && neg)) throw std::runtime_error("no interface");

  // the pole carries the mean of the first ring, closing the hole r < r_0
  double pole = 0.0;
  for (std::size_t j = 0; j < nt; ++j) pole += u(0, j);
  pole /= static_cast<double>(nt);

  auto crossing = [&](const EdgeKey& e) -> Vec2 {
    const std::size_t i = e[1], j = e[2];
    if (e[0] == kSpoke) {
      const double b = u(0, j);
      return pole / (pole - b) * g.point(0, j);
    }
    const std::size_t i2 = e[0] == kRadial ? i + 1 : i;
    const std::size_t j2 = e[0] == kRadial ? j : (j + 1) % nt;
    const double a = nodes.value(i, j), b = nodes.value(i2, j2);
    const double s = a / (a - b);
    return nodes.point(i, j) + s * (nodes.point(i2, j2) - nodes.point(i, j));
  };

  std::map<EdgeKey, std::vector<EdgeKey>> adj;
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t jp = (j + 1) % nt;
      const double c[4] = {nodes.value(i, j), nodes.value(i + 1, j), nodes.value(i + 1, jp),
                           nodes.value(i, jp)};
      const EdgeKey e[4] = {{kRadial, i, j}, {kAngular, i + 1, j}, {kRadial, i, jp}, {kAngular, i, j}};
      // edge m joins corners (0,1), (1,2), (3,2), (0,3)
      const int ends[4][2] = {{0, 1}, {1, 2}, {3, 2}, {0, 3}};
      std::vector<int> cut;
      for (int m = 0; m < 4; ++m)
        if (positive(c[ends[m][0]]) != positive(c[ends[m][1]])) cut.push_back(m);
      auto link = [&](int a, int b) {
        adj[e[a]].push_back(e[b]);
        adj[e[b]].push_back(e[a]);
      };
      if (cut.size() == 2) {
        link(cut[0], cut[1]);
      } else if (cut.size() == 4) {
        const double mean = 0.25 * (c[0] + c[1] + c[2] + c[3]);
        if (positive(mean) == positive(c[0])) {
          link(0, 1);
          link(2, 3);
        } else {
          link(3, 0);
          link(1, 2);
        }
      }
    }
  }

  for (std::size_t j = 0; j < nt; ++j) {
    const std::size_t jp = (j + 1) % nt;
    const EdgeKey e[3] = {{kSpoke, 0, j}, {kAngular, 0, j}, {kSpoke, 0, jp}};
    const double c[3] = {pole, u(0, j), u(0, jp)};
    const int ends[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    std::vector<int> cut;
    for (int m = 0; m < 3; ++m)
      if (positive(c[ends[m][0]]) != positive(c[ends[m][1]])) cut.push_back(m);
    if (cut.size() == 2) {
      adj[e[cut[0]]].push_back(e[cut[1]]);
      adj[e[cut[1]]].push_back(e[cut[0]]);
    }
  }

  auto on_boundary = [&](const EdgeKey& e) { return e[0] == kAngular && e[1] == nr; };
  std::map<EdgeKey, int> used;
  std::vector<Polyline> out;
  auto walk = [&](EdgeKey start) {
    Polyline pl;
    EdgeKey cur = start;
    used[cur] = 1;
    pl.points.push_back(crossing(cur));
    while (true) {
      const auto& nb = adj[cur];
      bool advanced = false;
      for (const EdgeKey& n : nb) {
        if (used.count(n)) continue;
        used[n] = 1;
        pl.points.push_back(crossing(n));
        cur = n;
        advanced = true;
        break;
      }
      if (advanced) continue;
      for (const EdgeKey& n : nb)
        if (n == start && pl.points.size() > 2) pl.closed = true;
      break;
    }
    pl.front_on_boundary = on_boundary(start);
    pl.back_on_boundary = !pl.closed && on_boundary(cur);
    out.push_back(std::move(pl));
  };
  // open chains first, from their ends
  for (const auto& [key, nb] : adj)
    if (nb.size() == 1 && !used.count(key)) walk(key);
  for (const auto& [key, nb] : adj)
    if (!used.count(key)) walk(key);
  return out;
}

std::optional<double> radius_estimate(const ScalarField& u) {
  const PolarGrid& g = *u.grid;
  const std::vector<double> tr = boundary_trace(u);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < g.ntheta(); ++j) {
    for (std::size_t i = 0; i < g.nr(); ++i) {
      const double a = u(i, j);
      const double b = i + 1 == g.nr() ? tr[j] : u(i + 1, j);
      const double rb = i + 1 == g.nr() ? g.radius() : g.r(i + 1);
      if (positive(a) != positive(b)) {
        sum += g.r(i) + a / (a - b) * (rb - g.r(i));
        ++count;
        break;
      }
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::vector<ContactAngle> contact_angles(const ScalarField& u, const std::vector<Polyline>& lines,
                                         double band) {
  const PolarGrid& g = *u.grid;
  const double R = g.radius();
  std::vector<ContactAngle> out;
  auto fit = [&](const std::vector<Vec2>& pts) {
    Vec2 c = Vec2::Zero();
    for (const Vec2& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    Mat2 cov = Mat2::Zero();
    for (const Vec2& p : pts) cov += (p - c) * (p - c).transpose();
    const Eigen::SelfAdjointEigenSolver<Mat2> es(cov);
    Vec2 d = es.eigenvectors().col(1);
    const Vec2 nu_c = c.normalized();
    if (d.dot(nu_c) > 0.0) d = -d;  // inward
    const double cd = c.dot(d);
    const double disc = cd * cd - c.squaredNorm() + R * R;
    const double s = -cd - std::sqrt(std::max(disc, 0.0));
    const Vec2 p = c + s * d;
    const Vec2 nu = p.normalized();
    Vec2 tau(-nu.y(), nu.x());
    const double off = std::min(band, 0.25 * R);
    const Vec2 base = p - 0.5 * off * nu;
    const double up = interpolate(u, base + 0.5 * off * tau);
    const double dn = interpolate(u, base - 0.5 * off * tau);
    if (dn > up) tau = -tau;
    ContactAngle ca;
    ca.point = p;
    ca.degrees = std::atan2(-d.dot(nu), d.dot(tau)) * 180.0 / std::numbers::pi;
    ca.fitted_points = pts.size();
    out.push_back(ca);
  };
  for (const Polyline& pl : lines) {
    if (pl.closed || pl.points.size() < 2) continue;
    auto collect = [&](bool from_front) {
      std::vector<Vec2> pts;
      const std::size_t n = pl.points.size();
      for (std::size_t m = 0; m < n; ++m) {
        const Vec2& p = pl.points[from_front ? m : n - 1 - m];
        if (p.norm() < R - band) break;
        pts.push_back(p);
      }
      return pts;
    };
    if (pl.front_on_boundary) {
      const auto pts = collect(true);
      if (pts.size() >= 2) fit(pts);
    }
    if (pl.back_on_boundary) {
      const auto pts = collect(false);
      if (pts.size() >= 2) fit(pts);
    }
  }
  return out;
}

double mean_height(const std::vector<Polyline>& lines) {
  double s = 0.0;
  std::size_t n = 0;
  for (const Polyline& pl : lines)
    for (const Vec2& p : pl.points) {
      s += p.y();
      ++n;
    }
  if (n == 0) throw std::runtime_error("no interface");
  return s / static_cast<double>(n);
}

void write_interface_csv(std::ostream& os, const std::vector<Polyline>& lines) {
  os << "x,y,segment\n" << std::setprecision(12);
  for (std::size_t k = 0; k < lines.size(); ++k)
    for (const Vec2& p : lines[k].points) os << p.x() << ',' << p.y() << ',' << k << '\n';
}

}  // namespace acn
