#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "acn/potential.hpp"

using namespace acn;

TEST_CASE("quartic well values") {
  const auto p = PotentialSpec::quartic();
  CHECK(p.w(1.0) == 0.0);
  CHECK(p.w(-1.0) == 0.0);
  CHECK(p.w(0.0) == doctest::Approx(0.25));
  CHECK(p.w1(0.0) == 0.0);
  CHECK(p.w2(0.0) == doctest::Approx(-1.0));
  CHECK(p.w2(std::sqrt(2.0 / 3.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.alpha() == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(p.kappa() == 1.0);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("surface tension") {
  const auto p = PotentialSpec::quartic();
  const double sigma = surface_tension(p);
  CHECK(std::abs(sigma - 2.0 * std::sqrt(2.0) / 3.0) <= 1e-8);
  CHECK(std::abs(sigma - 0.94280904) <= 1e-8);
  CHECK(surface_tension(PotentialSpec::scaled_quartic(4.0)) == doctest::Approx(2.0 * sigma).epsilon(1e-9));

  // symmetric integrand: twice the half-range integral
  const double half = adaptive_simpson([&](double u) { return std::sqrt(2.0 * p.w(u)); }, 0.0, 1.0, 1e-12);
  CHECK(sigma == doctest::Approx(2.0 * half).epsilon(1e-9));
}

TEST_CASE("standing wave") {
  const auto p = PotentialSpec::quartic();
  const StandingWave phi(p);
  CHECK(phi.phi(0.0) == 0.0);
  // tanh(8/sqrt 2) is 2.5e-5 short of 1
  CHECK(std::abs(phi.phi(8.0) - std::tanh(8.0 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(phi.phi(-8.0) + std::tanh(8.0 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(phi.phi(20.0) - 1.0) < 1e-6);
  CHECK(phi.dphi(0.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  std::vector<double> s{0.0};
  CHECK(standing_wave_residual(p, s) <= 1e-12);
  for (int k = -40; k <= 40; ++k) s.push_back(0.2 * k);
  CHECK(standing_wave_residual(p, s) <= 1e-12);
}

TEST_CASE("invalid custom potential is rejected") {
  // single well: W(1) != 0
  auto bad = PotentialSpec::custom(
      "bad", [](double u) { return u * u; }, [](double u) { return 2.0 * u; }, [](double) { return 2.0; }, 0.0,
      0.5, 1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
