#pragma once

#include <functional>
#include <string>
#include <vector>

#include "conformal_zeta/laws.hpp"

namespace cz {

// Concentrating test functions centered at the north pole, with r the polar angle.

struct TestFunctionParams {
  double alpha = 0.1;
  double epsilon = 0.3;
  int n = 4;

  void validate() const;
};

/// ((r^2 + alpha^2)/alpha)^{(2-n)/2}
double u_alpha(double alpha, double r, int n);
double u_alpha_dr(double alpha, double r, int n);

/// Smooth cutoff, 1 for r <= epsilon and 0 for r >= 2 epsilon.
double cutoff_eta(double epsilon, double r);
double cutoff_eta_dr(double epsilon, double r);

/// eta * u_alpha on the zonal grid, zero beyond 2 epsilon.
ZonalField psi_alpha(const TestFunctionParams& tp, GridPtr grid);

/// Integrals of psi_alpha over S^n by adaptive quadrature in the polar angle.
struct PsiIntegrals {
  double dirichlet = 0.0;   // int |d psi|^2
  double l2 = 0.0;          // int psi^2
  double lp = 0.0;          // int psi^p
  double weighted = 0.0;    // int w psi^2 for the supplied weight w(theta)
};
PsiIntegrals psi_integrals(const TestFunctionParams& tp,
                           const std::function<double(double)>& weight_of_theta = {});

/// int_0^epsilon u_alpha(r)^2 r^{k+n-1} dr, relative error <= 1e-10. Requires k > -n.
double lee_parker_integral(double alpha, double epsilon, int k, int n);

/// int_{R^n} u_alpha^p dx, which equals 2^{-n} omega_n for every alpha.
double flat_norm_integral(double alpha, int n);

enum class RateBranch { k_plus_2, k_plus_2_log, n_minus_2 };
std::string_view to_string(RateBranch b);
RateBranch predicted_branch(int n, int k);

struct RateFitReport {
  int n = 0;
  int k = 0;
  double exponent_fit = 0.0;
  bool log_factor_detected = false;
  double r2 = 0.0;
  double rss_plain = 0.0;
  double rss_log = 0.0;
  RateBranch predicted = RateBranch::k_plus_2;
  double predicted_exponent = 0.0;
};

/// Fits log I = c + e log(alpha), with and without an extra log(1/alpha) factor, and keeps the
/// model with the smaller residual. Needs >= 8 samples spanning >= 2 decades, all alpha < 1.
RateFitReport rate_fit(const std::vector<double>& alphas, const std::vector<double>& values, int n, int k);

/// Default epsilon for Lee-Parker rate fits.
inline constexpr double kRateEpsilon = 2.0;

/// Samples lee_parker_integral on `count` log-spaced alphas in [lo, hi] and fits the rate.
RateFitReport lee_parker_rates(int n, int k, double lo = 1e-3, double hi = 1e-1, int count = 25,
                               double epsilon = kRateEpsilon);

std::vector<double> log_spaced(double lo, double hi, int count);

struct SweepRow {
  double alpha = 0.0;
  double m_psi = 0.0;
  double sphere_value = 0.0;
  double margin = 0.0;
  double mu = 0.0;
};

/// M_g(psi_alpha) on a round-sphere background with the given normalized mass, evaluated by
/// polar-angle quadrature (mnor is interpolated from its zonal coefficients).
double psi_mass_functional(const TestFunctionParams& tp, const ConformalBackground& bg);

std::vector<SweepRow> functional_sweep(const std::vector<double>& alphas, double epsilon,
                                       const ConformalBackground& bg);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace cz
