#include "conformal_zeta/functionals.hpp"

#include <cmath>
#include <string>

#include "conformal_zeta/errors.hpp"

namespace cz {

namespace {

double nonzero_norm_sq(const ZonalField& u, double p, const char* where) {
  const double nrm = lp_norm(u, p);
  if (!(nrm > 0.0)) throw InvalidArgument(std::string(where) + ": field is identically zero");
  return nrm * nrm;
}

}  // namespace

MassFunctionalForms mass_functional_forms(const ZonalField& u, const ConformalBackground& bg) {
  require_same_grid(u, bg.scal, "mass_functional");
  const auto& P = bg.params;
  const double nrm2 = nonzero_norm_sq(u, P.p, "mass_functional");
  MassFunctionalForms f;
  f.p_form = -inner(u, p_operator_apply(u, bg)) / nrm2;
  const double yam = inner(u, yamabe_apply(u, bg)) / (P.a_n * nrm2);
  f.decomposed = inner(bg.mnor * u, u) / nrm2 - P.b_n * yam;
  return f;
}

double mass_functional(const ZonalField& u, const ConformalBackground& bg) {
  const auto f = mass_functional_forms(u, bg);
  const double scale = std::max(std::abs(f.p_form), std::abs(f.decomposed));
  if (std::abs(f.p_form - f.decomposed) > 1e-10 * std::max(1.0, scale)) {
    throw NumericalError("mass_functional: P-form " + std::to_string(f.p_form) +
                         " and decomposed form " + std::to_string(f.decomposed) + " disagree");
  }
  return f.p_form;
}

double yamabe_functional(const ZonalField& u, const ConformalBackground& bg) {
  require_same_grid(u, bg.scal, "yamabe_functional");
  const double nrm2 = nonzero_norm_sq(u, bg.params.p, "yamabe_functional");
  return inner(u, yamabe_apply(u, bg)) / (bg.params.a_n * nrm2);
}

double trace_theorem_c(const ZonalField& u, const ConformalBackground& bg) {
  require_same_grid(u, bg.scal, "trace_theorem_c");
  if (!bg.is_round_sphere()) {
    throw InvalidArgument("trace_theorem_c: background is not the round sphere (mnor != 0 or scal != n(n-1))");
  }
  const double n = bg.params.n;
  return -bg.params.c_n * (inner(u, laplacian(u)) + 0.25 * n * (n - 2.0) * inner(u, u));
}

double sobolev_gap(const ZonalField& u, const ConformalBackground& bg) {
  require_same_grid(u, bg.scal, "sobolev_gap");
  const auto& P = bg.params;
  const double nrm2 = nonzero_norm_sq(u, P.p, "sobolev_gap");
  const double k = 0.25 * P.n * (P.n - 2.0);
  return inner(u, laplacian(u)) + k * inner(u, u) - k * std::pow(P.omega_n, 2.0 / P.n) * nrm2;
}

ZonalField dilation_factor(double t, GridPtr grid) {
  const double e = -0.5 * (grid->dimension() - 2.0);
  const double c = std::cosh(t), s = std::sinh(t);
  return ZonalField::from_function(std::move(grid), [=](double x) { return std::pow(c + s * x, e); });
}

FunctionalReport functional_report(const ZonalField& u, const ConformalBackground& bg) {
  FunctionalReport r;
  const auto& P = bg.params;
  r.mass_functional = mass_functional(u, bg);
  r.yamabe_functional = yamabe_functional(u, bg);
  r.volume = std::pow(lp_norm(u, P.p), P.p);
  r.trace = r.mass_functional * std::pow(r.volume, (P.n - 2.0) / P.n);
  r.sobolev_gap = sobolev_gap(u, bg);
  return r;
}

}  // namespace cz
