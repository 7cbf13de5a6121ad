#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "conformal_zeta/constants.hpp"
#include "conformal_zeta/errors.hpp"
#include "conformal_zeta/field_io.hpp"
#include "conformal_zeta/functionals.hpp"
#include "conformal_zeta/laws.hpp"
#include "conformal_zeta/test_functions.hpp"

using namespace cz;

TEST_CASE("bubble profile") {
  for (int n : {4, 6, 8}) {
    CHECK(u_alpha(1.0, 0.0, n) == 1.0);
    double prev = u_alpha(0.1, 0.0, n);
    for (int i = 1; i <= 100; ++i) {
      const double r = 0.02 * i;
      const double v = u_alpha(0.1, r, n);
      CHECK(v < prev);
      prev = v;
      const double h = 1e-6;
      const double fd = (u_alpha(0.1, r + h, n) - u_alpha(0.1, r - h, n)) / (2.0 * h);
      CHECK(u_alpha_dr(0.1, r, n) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("cutoff function") {
  const double eps = 0.3;
  CHECK(cutoff_eta(eps, 0.0) == 1.0);
  CHECK(cutoff_eta(eps, 0.5 * eps) == 1.0);
  CHECK(cutoff_eta(eps, 2.0 * eps) == 0.0);
  CHECK(cutoff_eta(eps, 3.0 * eps) == 0.0);
  double prev = 1.0;
  for (int i = 1; i < 1000; ++i) {
    const double r = eps + eps * i / 1000.0;
    const double v = cutoff_eta(eps, r);
    CHECK(v >= 0.0);
    CHECK(v <= prev);
    CHECK(cutoff_eta_dr(eps, r) <= 0.0);
    if (i >= 100 && i <= 900) {
      CHECK(v < prev);
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
    prev = v;
  }
}

TEST_CASE("flat-space norm does not depend on alpha") {
  for (int n : {4, 6}) {
    const double target = std::pow(2.0, -n) * sphere_volume(n);
    for (double alpha : {0.01, 0.1, 1.0, 10.0}) {
      CAPTURE(alpha);
      CHECK(std::abs(flat_norm_integral(alpha, n) - target) < 1e-8);
    }
  }
}

TEST_CASE("concentrating test functions on the sphere") {
  const auto g = make_grid(4, 256);
  TestFunctionParams tp{0.03, 0.3, 4};
  const auto psi = psi_alpha(tp, g);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    CHECK(psi[i] >= 0.0);
    if (std::acos(g->nodes()[i]) > 2.0 * tp.epsilon) CHECK(psi[i] == 0.0);
  }
  const auto I = psi_integrals(tp);
  const double flat = std::pow(2.0, -4) * sphere_volume(4);
  CHECK(std::abs(I.lp / flat - 1.0) < 0.05);
  CHECK(I.dirichlet > 0.0);
  CHECK(I.l2 > 0.0);

  TestFunctionParams bad{0.0, 0.3, 4};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  TestFunctionParams wide{0.1, 2.0, 4};
  CHECK_THROWS_AS(wide.validate(), InvalidArgument);
}

TEST_CASE("Lee-Parker integral") {
  CHECK(lee_parker_integral(1.0, 1.0, 0, 4) == doctest::Approx(0.5 * (std::log(2.0) - 0.5)).epsilon(1e-10));
  CHECK(lee_parker_integral(1e-6, 1.0, 0, 4) < 1e-9);
  double prev = 0.0;
  for (double eps : {0.1, 0.5, 1.0, 2.0}) {
    const double v = lee_parker_integral(0.1, eps, 2, 6);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(lee_parker_integral(0.1, 1.0, -4, 4), InvalidArgument);
}

TEST_CASE("rate fit on synthetic data") {
  const auto a = log_spaced(1e-3, 1e-1, 20);
  REQUIRE(a.size() == 20);
  CHECK(a.front() == doctest::Approx(1e-3));
  CHECK(a.back() == doctest::Approx(1e-1));
  std::vector<double> plain, logged;
  for (double x : a) {
    plain.push_back(3.0 * x * x);
    logged.push_back(0.7 * x * x * std::log(1.0 / x));
  }
  const auto p = rate_fit(a, plain, 6, 0);
  CHECK(p.exponent_fit == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(p.log_factor_detected);
  const auto l = rate_fit(a, logged, 4, 0);
  CHECK(l.exponent_fit == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(l.log_factor_detected);

  CHECK_THROWS_AS(rate_fit(log_spaced(1e-3, 1e-1, 5), std::vector<double>(5, 1.0), 4, 0), InvalidArgument);
  CHECK_THROWS_AS(rate_fit(log_spaced(1e-2, 1e-1, 10), std::vector<double>(10, 1.0), 4, 0), InvalidArgument);
  CHECK_THROWS_AS(rate_fit(log_spaced(1e-2, 2.0, 10), std::vector<double>(10, 1.0), 4, 0), InvalidArgument);
  CHECK_THROWS_AS(rate_fit(a, std::vector<double>(3, 1.0), 4, 0), InvalidArgument);
}

TEST_CASE("Lee-Parker rates follow the predicted branch") {
  struct Case { int n; int k; double exponent; bool log; };
  for (const Case c : {Case{6, 0, 2.0, false}, Case{4, 0, 2.0, true}, Case{8, 2, 4.0, false},
                       Case{6, 2, 4.0, true}, Case{4, 1, 2.0, false}}) {
    CAPTURE(c.n);
    CAPTURE(c.k);
    const auto r = lee_parker_rates(c.n, c.k);
    CHECK(std::abs(r.exponent_fit - c.exponent) < 0.05);
    CHECK(r.log_factor_detected == c.log);
    CHECK(r.predicted_exponent == c.exponent);
    CHECK(r.r2 >= 0.999);
  }
  CHECK(predicted_branch(6, 0) == RateBranch::k_plus_2);
  CHECK(predicted_branch(4, 0) == RateBranch::k_plus_2_log);
  CHECK(predicted_branch(4, 1) == RateBranch::n_minus_2);
}

TEST_CASE("sweep on the round sphere stays below the sphere value") {
  const auto P = dim_params(4);
  const auto g = make_grid(4, 256);
  const auto bg = ConformalBackground::round_sphere(P, g);
  const auto alphas = log_spaced(1e-3, 1e-1, 12);
  const auto rows = functional_sweep(alphas, 0.3, bg);
  REQUIRE(rows.size() == alphas.size());
  std::vector<double> margins;
  for (const auto& r : rows) {
    CHECK(r.m_psi <= r.sphere_value + 1e-9);
    CHECK(r.margin < 0.0);
    CHECK(r.mu == 0.0);
    margins.push_back(-r.margin);
  }
  const auto fit = rate_fit(alphas, margins, 4, 0);
  CHECK(fit.exponent_fit >= 0.9);
}

TEST_CASE("positive bump in dimension six lifts the sweep above the sphere value") {
  const auto P = dim_params(6);
  const auto g = make_grid(6, 64);
  const auto mnor = ZonalField::from_function(g, [](double x) { return 0.05 * std::exp(-20.0 * (1.0 - x)); });
  const auto bg = ConformalBackground::sphere_with_mass(P, mnor);
  const auto rows = functional_sweep(log_spaced(1e-3, 1e-1, 10), 0.3, bg);
  CHECK(rows.front().margin > 0.0);
  CHECK(rows.front().mu > 0.0);
}

TEST_CASE("constant normalized mass shifts the sweep by the mnor term") {
  const auto P = dim_params(6);
  const auto g = make_grid(6, 256);
  const double mu = 0.01;
  const auto bg0 = ConformalBackground::round_sphere(P, g);
  const auto bg = ConformalBackground::sphere_with_mass(P, ZonalField::constant(g, mu));
  for (double alpha : {1e-3, 3e-3, 1e-2}) {
    TestFunctionParams tp{alpha, 0.3, 6};
    const auto I = psi_integrals(tp);
    const double shift = psi_mass_functional(tp, bg) - psi_mass_functional(tp, bg0);
    CHECK(shift == doctest::Approx(mu * I.l2 / std::pow(I.lp, 2.0 / P.p)).epsilon(1e-9));
    // the l2 term decays like alpha^2 in dimension six
    CHECK(std::abs(I.l2 / (alpha * alpha)) < 50.0);
  }
}

TEST_CASE("radial quadrature agrees with the zonal grid") {
  const auto P = dim_params(4);
  const auto g = make_grid(4, 512);
  const auto mnor = read_field_for(CZ_DATA_DIR "/bump_mnor_n4.json", 4);
  const auto mnor512 = ZonalField::from_coeffs(g, mnor.coeffs());
  const auto bg = ConformalBackground::sphere_with_mass(P, mnor512);
  for (double alpha : {0.05, 0.1, 0.2}) {
    TestFunctionParams tp{alpha, 0.3, 4};
    const double radial = psi_mass_functional(tp, bg);
    const double grid = mass_functional(psi_alpha(tp, g) + 0.0, bg);
    CHECK(std::abs(radial - grid) < 1e-6 * std::abs(radial));
  }
}

TEST_CASE("sweep csv") {
  const std::vector<SweepRow> rows{{0.01, -0.1, -0.2, 0.1, 0.0}};
  const auto csv = sweep_csv(rows);
  CHECK(csv.rfind("alpha,M_psi,sphere_value,margin,mu\n", 0) == 0);
  CHECK(csv.find("0.01,-0.1,-0.2,0.1,0") != std::string::npos);
}
