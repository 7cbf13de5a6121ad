#include "doctest.h"

#include <cmath>

#include "conformal_zeta/constants.hpp"
#include "conformal_zeta/errors.hpp"
#include "conformal_zeta/field_io.hpp"
#include "conformal_zeta/functionals.hpp"
#include "conformal_zeta/laws.hpp"
#include "conformal_zeta/optimizer.hpp"

using namespace cz;

TEST_CASE("constant start on the round sphere is already critical") {
  const auto P = dim_params(4);
  const auto g = make_grid(4, 128);
  const auto bg = ConformalBackground::round_sphere(P, g);
  OptimizerConfig cfg;
  cfg.start = ZonalField::constant(g, 1.0);
  cfg.exponent_schedule = {P.p};
  const auto r = maximize_mass_functional(bg, cfg);
  CHECK(r.converged);
  CHECK(r.iterations <= 1);
  CHECK(r.residual < 1e-10);
  CHECK(std::abs(r.value + P.b_n * P.yamabe_sphere) < 1e-14);

  const auto el = euler_lagrange_residual(ZonalField::constant(g, 1.0), bg);
  CHECK(std::abs(el.lambda - 2.0 * P.c_n) < 1e-15);
  CHECK(el.residual < 1e-12);
  const auto mc = constant_mass_check(ZonalField::constant(g, 1.0), bg);
  CHECK(std::abs(mc.mean + P.b_n * 12.0) < 1e-15);
  CHECK(mc.reldev < 1e-12);
}

TEST_CASE("perturbed start converges onto the dilation orbit") {
  const auto P = dim_params(4);
  const auto g = make_grid(4, 128);
  const auto bg = ConformalBackground::round_sphere(P, g);
  OptimizerConfig cfg;
  cfg.start = ZonalField::from_function(g, [](double x) { return 1.0 + 0.3 * x; });
  const auto r = maximize_mass_functional(bg, cfg);
  REQUIRE(r.converged);
  const double target = -P.b_n * P.yamabe_sphere;
  CHECK(std::abs(r.value / target - 1.0) < 1e-6);
  CHECK(r.residual < 1e-8);
  CHECK(r.monotone);
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] >= r.history[i - 1]);
  const auto fit = fit_dilation_orbit(r.u_star);
  CHECK(fit.sup_residual < 1e-4);
  CHECK(std::abs(euler_lagrange_residual(dilation_factor(0.8, g), bg).residual) < 1e-8);
}

TEST_CASE("seeded starts reach the same value") {
  const auto P = dim_params(4);
  const auto g = make_grid(4, 128);
  const auto bg = ConformalBackground::round_sphere(P, g);
  double first = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    OptimizerConfig cfg;
    cfg.seed = seed;
    const auto r = maximize_mass_functional(bg, cfg);
    REQUIRE(r.converged);
    if (seed == 1) first = r.value;
    CHECK(std::abs(r.value / first - 1.0) < 1e-6);
    const auto again = maximize_mass_functional(bg, cfg);
    CHECK(again.value == r.value);
    CHECK(again.iterations == r.iterations);
  }
}

TEST_CASE("bump mass background reaches a constant-mass metric") {
  const auto P = dim_params(4);
  const auto mnor = read_field_for(CZ_DATA_DIR "/bump_mnor_n4.json", 4);
  const auto bg = ConformalBackground::sphere_with_mass(P, mnor);
  OptimizerConfig cfg;
  const auto r = maximize_mass_functional(bg, cfg);
  REQUIRE(r.converged);
  CHECK(r.residual < 1e-8);
  CHECK(r.mass_reldev < 1e-6);
  const auto el = euler_lagrange_residual(r.u_star, bg);
  CHECK(std::abs(r.mass_mean + el.lambda) < 1e-8);
  CHECK(r.value > -P.b_n * P.yamabe_sphere);
}

TEST_CASE("invalid configurations and non-convergence") {
  const auto P = dim_params(4);
  const auto g = make_grid(4, 64);
  const auto bg = ConformalBackground::round_sphere(P, g);
  OptimizerConfig bad;
  bad.exponent_schedule = {3.0, 2.5, P.p};
  CHECK_THROWS_AS(maximize_mass_functional(bg, bad), InvalidArgument);
  bad.exponent_schedule = {3.0, 3.5};
  CHECK_THROWS_AS(maximize_mass_functional(bg, bad), InvalidArgument);
  OptimizerConfig floor;
  floor.positivity_floor = 0.0;
  CHECK_THROWS_AS(maximize_mass_functional(bg, floor), InvalidArgument);

  OptimizerConfig short_run;
  short_run.max_iters = 1;
  short_run.seed = 4;
  const auto r = maximize_mass_functional(bg, short_run);
  CHECK_FALSE(r.converged);
  CHECK(r.residual > 1e-8);
  CHECK_FALSE(r.message.empty());
}
