#include "conformal_zeta/constants.hpp"

#include <cmath>
#include <numbers>

#include "conformal_zeta/errors.hpp"

namespace cz {

std::string_view to_string(ConstantVariant v) {
  return v == ConstantVariant::paper ? "paper" : "calibrated";
}

ConstantVariant parse_variant(std::string_view s) {
  if (s == "paper") return ConstantVariant::paper;
  if (s == "calibrated") return ConstantVariant::calibrated;
  throw InvalidArgument("unknown constant variant '" + std::string(s) +
                        "' (expected paper or calibrated)");
}

double sphere_volume(int dim) {
  const double h = 0.5 * (dim + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

DimensionParams dim_params(int n, ConstantVariant variant) {
  if (n < 4 || n % 2 != 0) {
    throw InvalidArgument("dimension must be even and >= 4, got n=" + std::to_string(n));
  }
  DimensionParams d;
  d.n = n;
  d.m = n / 2 - 1;
  d.p = 2.0 * n / (n - 2.0);
  d.a_n = (n - 2.0) / (4.0 * (n - 1.0));

  double half_factorial = 1.0;
  for (int k = 2; k <= n / 2; ++k) half_factorial *= k;
  d.q_n = (n - 2.0) / (6.0 * std::pow(4.0 * std::numbers::pi, n / 2) * half_factorial);
  d.c_n = d.q_n;
  if (variant == ConstantVariant::calibrated) d.c_n *= 2.0;
  d.b_n = d.a_n * d.c_n;

  d.omega_n = sphere_volume(n);
  d.yamabe_sphere = n * (n - 1.0) * std::pow(d.omega_n, 2.0 / n);
  d.variant = variant;
  return d;
}

}  // namespace cz
