#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "acn/experiment.hpp"

using namespace acn;

TEST_CASE("zero-duration diameter run") {
  std::istringstream is("scenario = diameter\ngrid.nr = 32\ngrid.ntheta = 160\nsolver.eps = 0.1\n");
  const ExperimentConfig cfg = load_experiment(Config::parse(is));
  const auto dir = std::filesystem::temp_directory_path() / "acn_zero_run";
  std::filesystem::remove_all(dir);
  const ExperimentResult r = run_experiment(cfg, dir);
  CHECK(r.run.table.size() == 1);
  CHECK(r.passed());
  std::ifstream csv(dir / "diagnostics.csv");
  std::string header, row, extra;
  std::getline(csv, header);
  std::getline(csv, row);
  CHECK_FALSE(std::getline(csv, extra));
  CHECK(std::filesystem::exists(dir / "report.txt"));
}

TEST_CASE("single-element sweep") {
  std::istringstream is("scenario = concentric\nsolver.eps = 0.1\nsolver.t_end = 0.01\ninterface.r0 = 0.5\n"
                        "diagnostics.measures = true\n");
  const ExperimentConfig cfg = load_experiment(Config::parse(is));
  const SweepResult s = run_sweep(cfg, {0.1}, {}, 0.01);
  REQUIRE(s.rows.size() == 1);
  CHECK(s.checks.empty());
  CHECK(s.rows[0].nr == 40);
  CHECK_THROWS_AS(run_sweep(cfg, {0.05, 0.1}, {}, 0.01), std::invalid_argument);
}

TEST_CASE("fast self test") {
  for (const auto& c : selftest()) {
    INFO(c.name);
    CHECK(c.pass);
  }
}
