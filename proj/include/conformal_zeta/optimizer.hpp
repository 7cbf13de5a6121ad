#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conformal_zeta/laws.hpp"

namespace cz {

struct OptimizerConfig {
  double step0 = 1.0;                 // 1 is a full inverse-iteration step
  double tol_residual = 1e-8;
  int max_iters = 4000;               // over all stages
  std::vector<double> exponent_schedule;  // empty: {p-1/2, p-1/4, p-1/8, p}
  double positivity_floor = 1e-8;
  std::uint64_t seed = 0;
  double start_perturbation = 0.3;    // amplitude of the seeded start 1 + r
  int start_degree = 6;
  std::optional<ZonalField> start;    // overrides the seeded start

  std::vector<double> schedule_for(double p) const;
};

struct StageSummary {
  double exponent = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double value = 0.0;
};

struct OptimizerResult {
  ZonalField u_star;
  double value = 0.0;        // M_g(u_star)
  double lambda = 0.0;
  double residual = 0.0;
  double mass_mean = 0.0;
  double mass_reldev = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;      // accepted stage values never decreased
  std::vector<StageSummary> stages;
  std::vector<double> history;  // accepted values of the critical (last) stage
  std::string message;
};

OptimizerResult maximize_mass_functional(const ConformalBackground& bg, const OptimizerConfig& cfg);

struct EulerLagrange {
  double lambda = 0.0;
  double residual = 0.0;
};
/// Lambda = int u P u / int u^p and ||P u - Lambda u^{p-1}||_2 / ||P u||_2.
EulerLagrange euler_lagrange_residual(const ZonalField& u, const ConformalBackground& bg);

struct MassCheck {
  double mean = 0.0;
  double reldev = 0.0;
};
/// Mean and relative standard deviation of the mass of u^{4/(n-2)} g, weighted by its volume form.
MassCheck constant_mass_check(const ZonalField& u, const ConformalBackground& bg);

struct OrbitFit {
  double t = 0.0;
  double sup_residual = 0.0;
};
/// Best dilation u_t matching u after L^p normalization of both, in the sup norm.
OrbitFit fit_dilation_orbit(const ZonalField& u, double t_max = 4.0);

}  // namespace cz
