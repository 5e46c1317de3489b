#include <doctest.h>

#include <sstream>

#include "acn/config.hpp"
#include "acn/diagnostics.hpp"
#include "acn/experiment.hpp"
#include "acn/snapshot.hpp"

using namespace acn;

TEST_CASE("snapshot roundtrip is bit exact") {
  const GridPtr g = make_grid(12, 16, 1.5);
  const ScalarField u = sample_field(g, [](const Vec2& x) { return std::tanh(x.x() / 0.07) + 1e-17 * x.y(); }, 0.0123);
  std::stringstream ss;
  write_snapshot(ss, u, 0.05);
  const Snapshot s = read_snapshot(ss);
  CHECK(*s.u.grid == *g);
  CHECK(s.eps == 0.05);
  CHECK(s.u.t == u.t);
  CHECK(s.u.values == u.values);
  std::stringstream bad("not a snapshot\n");
  CHECK_THROWS(read_snapshot(bad));
}

TEST_CASE("diagnostics csv schema") {
  DiagnosticsTable t(2);
  t[0].t = 0.0;
  t[0].E_total = 1.5;
  t[0].G = {0.25};
  t[0].brakke_lhs = {1.0};
  t[0].brakke_rhs = {0.0};
  t[1].t = 0.1;
  std::ostringstream os;
  write_csv(os, t, 1, 1);
  std::istringstream is(os.str());
  std::string header, row0, row1;
  std::getline(is, header);
  std::getline(is, row0);
  std::getline(is, row1);
  CHECK(header ==
        "t,E_total,E_boundary,dissipation,sup_xi,int_abs_xi,radius_est,angle_min,angle_max,sup_eps_grad,G_1,"
        "brakke_lhs_1,brakke_rhs_1");
  CHECK(row1.find("nan") == std::string::npos);
  CHECK(row1 == "0.10000000000000001,,,,,,,,,,,,");
}

TEST_CASE("config parsing") {
  std::istringstream ok("# comment\nsolver.eps = 0.05\nprobe.1.y = 0.9, 0\nlist = 1, 2,3\nflag = true\n");
  const Config c = Config::parse(ok);
  CHECK(c.num("solver.eps", 0.0) == 0.05);
  CHECK(c.vec2("probe.1.y") == Vec2(0.9, 0.0));
  CHECK(c.nums("list") == std::vector<double>{1, 2, 3});
  CHECK(c.flag("flag", false));
  CHECK(c.unused().empty());
  CHECK(c.line_of("list") == 4);

  std::istringstream dup("a = 1\na = 2\n");
  CHECK_THROWS_AS(Config::parse(dup), ConfigError);
  std::istringstream malformed("a 1\n");
  CHECK_THROWS_WITH_AS(Config::parse(malformed), doctest::Contains("line 1"), ConfigError);
  std::istringstream num("solver.eps = abc\n");
  const Config bad = Config::parse(num);
  CHECK_THROWS_WITH_AS(bad.num("solver.eps", 0.0), doctest::Contains("solver.eps"), ConfigError);
}

TEST_CASE("experiment config validation") {
  std::istringstream unknown("scenario = concentric\nsolver.epz = 0.05\n");
  CHECK_THROWS_WITH_AS(load_experiment(Config::parse(unknown)), doctest::Contains("solver.epz"), ConfigError);
  std::istringstream scen("scenario = square\n");
  CHECK_THROWS_AS(load_experiment(Config::parse(scen)), ConfigError);
  std::istringstream odd("grid.nr = 32\ngrid.ntheta = 33\nsolver.eps = 0.1\n");
  CHECK_THROWS_AS(load_experiment(Config::parse(odd)), ConfigError);
  std::istringstream degenerate("grid.nr = 32\ngrid.ntheta = 32\nsolver.eps = 0.2\ninterface.r0 = 0.3\n");
  CHECK_THROWS_AS(load_experiment(Config::parse(degenerate)), ConfigError);
  std::istringstream probe("solver.eps = 0.1\nsolver.t_end = 0.1\nprobe.1.y = 0.5, 0\nprobe.1.s = 0.05\n");
  CHECK_THROWS_AS(load_experiment(Config::parse(probe)), ConfigError);
  std::istringstream fine("grid.nr = 16\ngrid.ntheta = 32\nsolver.eps = 0.1\n");
  const ExperimentConfig e = load_experiment(Config::parse(fine));
  CHECK_FALSE(e.warnings.empty());
}

TEST_CASE("auto grid from eps") {
  ExperimentConfig e;
  e.solver.eps = 0.08;
  const GridPtr g = experiment_grid(e);
  CHECK(g->nr() == 50);
  CHECK(g->ntheta() == 316);
  CHECK(g->ntheta() % 2 == 0);
}
