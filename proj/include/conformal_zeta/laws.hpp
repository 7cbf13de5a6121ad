#pragma once

#include <optional>

#include "conformal_zeta/constants.hpp"
#include "conformal_zeta/zonal.hpp"

namespace cz {

/// Base geometry for all pointwise laws and functionals: a metric conformal to the round
/// S^n, described by its scalar curvature and normalized mass. The mass itself is always
/// reconstructed as m_g = mnor - b_n scal.
struct ConformalBackground {
  DimensionParams params;
  GridPtr grid;
  ZonalField scal;
  ZonalField mnor;

  ConformalBackground(DimensionParams params, ZonalField scal, ZonalField mnor);

  /// Unit round sphere: scal = n(n-1), mnor = 0.
  static ConformalBackground round_sphere(const DimensionParams& params, GridPtr grid);
  /// Round sphere metric with injected normalized-mass data.
  static ConformalBackground sphere_with_mass(const DimensionParams& params, ZonalField mnor);

  ZonalField mass() const;
  bool is_round_sphere() const;
};

/// Delta_h f for h = e^{2 phi} g.
ZonalField laplacian_conformal_transform(const ZonalField& f, const ZonalField& phi,
                                         const ConformalBackground& bg);

/// Y_g u = Delta u + a_n scal u.
ZonalField yamabe_apply(const ZonalField& u, const ConformalBackground& bg);

/// P_g u = c_n Delta u - m_g u.
ZonalField p_operator_apply(const ZonalField& u, const ConformalBackground& bg);

/// Mass of u^{4/(n-2)} g, i.e. -u^{-(n+2)/(n-2)} P_g u. Requires u > 0.
ZonalField mass_pushforward(const ZonalField& u, const ConformalBackground& bg);

/// Scalar curvature of u^{4/(n-2)} g, a_n^{-1} u^{-(n+2)/(n-2)} Y_g u. Requires u > 0.
ZonalField scal_pushforward(const ZonalField& u, const ConformalBackground& bg);

/// e^{-2 phi} mnor.
ZonalField normalized_mass_pushforward(const ZonalField& mnor, const ZonalField& phi);

/// The background after the change g -> e^{2 phi} g, with all data pushed forward.
/// The result lives on the same grid but its Laplacian is no longer the grid Laplacian,
/// so it is only used as a data container (curvature and mass fields).
struct PushedData {
  ZonalField scal;
  ZonalField mass;
  ZonalField mnor;
};
PushedData push_forward(const ZonalField& phi, const ConformalBackground& bg);

/// Integrates d/dt m_{g_t} = -2 phi m + (n-2) Q_{g_t} phi along g_t = e^{2 t phi} g with
/// Q_{g_t} = -q_n Delta_{g_t}, using classical RK4 with `steps` steps on t in [0, 1].
/// The flow reproduces mass_pushforward exactly when c_n = 2 q_n (calibrated constants).
ZonalField integrate_mass_variation(const ZonalField& phi, const ConformalBackground& bg,
                                    int steps = 64);

}  // namespace cz
