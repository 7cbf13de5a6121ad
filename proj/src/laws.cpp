#include "conformal_zeta/laws.hpp"

#include <cmath>
#include <string>

#include "conformal_zeta/errors.hpp"

namespace cz {

namespace {

void require_positive(const ZonalField& u, const char* where) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) {
      throw InvalidArgument(std::string(where) + ": conformal factor must be positive (value " +
                            std::to_string(u[i]) + " at node " + std::to_string(i) + ")");
    }
  }
}

void require_background_grid(const ZonalField& f, const ConformalBackground& bg, const char* where) {
  require_same_grid(f, bg.scal, where);
}

}  // namespace

ConformalBackground::ConformalBackground(DimensionParams p, ZonalField s, ZonalField m)
    : params(p), grid(s.grid_ptr()), scal(std::move(s)), mnor(std::move(m)) {
  require_same_grid(scal, mnor, "ConformalBackground");
  if (grid->dimension() != params.n) {
    throw GridMismatch("ConformalBackground: grid dimension " + std::to_string(grid->dimension()) +
                       " does not match n=" + std::to_string(params.n));
  }
}

ConformalBackground ConformalBackground::round_sphere(const DimensionParams& params, GridPtr grid) {
  auto scal = ZonalField::constant(grid, params.sphere_scal());
  auto mnor = ZonalField::constant(grid, 0.0);
  return ConformalBackground(params, std::move(scal), std::move(mnor));
}

ConformalBackground ConformalBackground::sphere_with_mass(const DimensionParams& params,
                                                          ZonalField mnor) {
  auto scal = ZonalField::constant(mnor.grid_ptr(), params.sphere_scal());
  return ConformalBackground(params, std::move(scal), std::move(mnor));
}

ZonalField ConformalBackground::mass() const { return mnor - scal * params.b_n; }

bool ConformalBackground::is_round_sphere() const {
  const double s0 = params.sphere_scal();
  for (std::size_t i = 0; i < scal.size(); ++i) {
    if (mnor[i] != 0.0 || std::abs(scal[i] - s0) > 1e-12 * s0) return false;
  }
  return true;
}

ZonalField laplacian_conformal_transform(const ZonalField& f, const ZonalField& phi,
                                         const ConformalBackground& bg) {
  require_same_grid(f, phi, "laplacian_conformal_transform");
  require_background_grid(f, bg, "laplacian_conformal_transform");
  const double n = bg.params.n;
  auto out = laplacian(f) - grad_dot(phi, f) * (n - 2.0);
  auto& v = out.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp(-2.0 * phi[i]);
  return out;
}

ZonalField yamabe_apply(const ZonalField& u, const ConformalBackground& bg) {
  require_background_grid(u, bg, "yamabe_apply");
  return laplacian(u) + bg.scal * u * bg.params.a_n;
}

ZonalField p_operator_apply(const ZonalField& u, const ConformalBackground& bg) {
  require_background_grid(u, bg, "p_operator_apply");
  return laplacian(u) * bg.params.c_n - bg.mass() * u;
}

ZonalField mass_pushforward(const ZonalField& u, const ConformalBackground& bg) {
  require_positive(u, "mass_pushforward");
  const double e = bg.params.pushforward_exponent();
  auto pu = p_operator_apply(u, bg);
  auto& v = pu.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -std::pow(u[i], -e) * v[i];
  return pu;
}

ZonalField scal_pushforward(const ZonalField& u, const ConformalBackground& bg) {
  require_positive(u, "scal_pushforward");
  const double e = bg.params.pushforward_exponent();
  auto yu = yamabe_apply(u, bg);
  auto& v = yu.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::pow(u[i], -e) / bg.params.a_n;
  return yu;
}

ZonalField normalized_mass_pushforward(const ZonalField& mnor, const ZonalField& phi) {
  require_same_grid(mnor, phi, "normalized_mass_pushforward");
  auto out = mnor;
  auto& v = out.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp(-2.0 * phi[i]);
  return out;
}

PushedData push_forward(const ZonalField& phi, const ConformalBackground& bg) {
  const double k = 0.5 * (bg.params.n - 2.0);
  const auto u = phi.map([k](double v) { return std::exp(k * v); });
  return PushedData{scal_pushforward(u, bg), mass_pushforward(u, bg),
                    normalized_mass_pushforward(bg.mnor, phi)};
}

ZonalField integrate_mass_variation(const ZonalField& phi, const ConformalBackground& bg,
                                    int steps) {
  require_background_grid(phi, bg, "integrate_mass_variation");
  if (steps < 1) throw InvalidArgument("integrate_mass_variation: steps must be >= 1");
  const double n = bg.params.n;
  const double q = bg.params.q_n;
  const auto lap_phi = laplacian(phi);
  const auto dphi_sq = grad_sq(phi);
  const std::size_t N = phi.size();

  // Pointwise linear ODE in m with forcing -(n-2) q e^{-2 t phi}(Delta phi - (n-2) t |dphi|^2).
  auto rhs = [&](double t, const std::vector<double>& m) {
    std::vector<double> d(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double lap_t = std::exp(-2.0 * t * phi[i]) * (lap_phi[i] - (n - 2.0) * t * dphi_sq[i]);
      d[i] = -2.0 * phi[i] * m[i] - (n - 2.0) * q * lap_t;
    }
    return d;
  };

  const auto m0 = bg.mass();
  std::vector<double> m(m0.values().begin(), m0.values().end());
  const double h = 1.0 / steps;
  std::vector<double> tmp(N);
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    const auto k1 = rhs(t, m);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = m[i] + 0.5 * h * k1[i];
    const auto k2 = rhs(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = m[i] + 0.5 * h * k2[i];
    const auto k3 = rhs(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = m[i] + h * k3[i];
    const auto k4 = rhs(t + h, tmp);
    for (std::size_t i = 0; i < N; ++i) m[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return ZonalField(phi.grid_ptr(), std::move(m));
}

}  // namespace cz
