#pragma once

#include "conformal_zeta/laws.hpp"

namespace cz {

struct FunctionalReport {
  double mass_functional = 0.0;
  double yamabe_functional = 0.0;
  double trace = 0.0;        // mass_functional * volume^{(n-2)/n}
  double volume = 0.0;       // ||u||_p^p, the volume of u^{4/(n-2)} g
  double sobolev_gap = 0.0;
};

/// -int u P_g u / ||u||_p^2. Evaluated both through P_g and as
/// int mnor u^2/||u||_p^2 - b_n Y_g(u); throws NumericalError if they disagree by > 1e-10.
double mass_functional(const ZonalField& u, const ConformalBackground& bg);

/// The two forms separately, for diagnostics.
struct MassFunctionalForms {
  double p_form = 0.0;
  double decomposed = 0.0;
};
MassFunctionalForms mass_functional_forms(const ZonalField& u, const ConformalBackground& bg);

/// a_n^{-1} int u Y_g u / ||u||_p^2.
double yamabe_functional(const ZonalField& u, const ConformalBackground& bg);

/// -c_n (int u Delta u + n(n-2)/4 int u^2), the trace of the inverse subcritical GJMS operator
/// of u^{4/(n-2)} g_round. Only defined for round-sphere backgrounds.
double trace_theorem_c(const ZonalField& u, const ConformalBackground& bg);

/// int u Delta u + n(n-2)/4 int u^2 - n(n-2)/4 omega_n^{2/n} ||u||_p^2, nonnegative on S^n.
double sobolev_gap(const ZonalField& u, const ConformalBackground& bg);

/// Conformal factor (cosh t + sinh t cos theta)^{-(n-2)/2} of a sphere dilation.
ZonalField dilation_factor(double t, GridPtr grid);

FunctionalReport functional_report(const ZonalField& u, const ConformalBackground& bg);

}  // namespace cz
