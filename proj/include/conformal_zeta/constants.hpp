#pragma once

#include <string>
#include <string_view>

namespace cz {

// `paper` uses the printed Q-operator coefficient; `calibrated` doubles c_n and b_n so that
// the normalized mass of the round sphere computed from its spectrum vanishes.
enum class ConstantVariant { paper, calibrated };

std::string_view to_string(ConstantVariant v);
ConstantVariant parse_variant(std::string_view s);

/// Dimensional constants for the subcritical GJMS operator (order n-2) in even dimension n.
struct DimensionParams {
  int n = 4;
  int m = 1;            // n/2 - 1
  double p = 4.0;       // critical Sobolev exponent 2n/(n-2)
  double a_n = 0.0;     // Yamabe coefficient (n-2)/(4(n-1))
  double b_n = 0.0;     // normalized-mass coefficient a_n * c_n
  double c_n = 0.0;     // P_g = c_n Delta_g - m_g
  double q_n = 0.0;     // printed coefficient of Q_g = -q_n Delta_g (same in both variants)
  double omega_n = 0.0; // volume of the unit n-sphere
  double yamabe_sphere = 0.0;  // n(n-1) omega_n^{2/n}
  ConstantVariant variant = ConstantVariant::paper;

  double sphere_scal() const { return static_cast<double>(n) * (n - 1); }
  // u^{4/(n-2)} g has mass -u^{-pushforward_exponent} P_g u
  double pushforward_exponent() const { return (n + 2.0) / (n - 2.0); }
};

DimensionParams dim_params(int n, ConstantVariant variant = ConstantVariant::paper);

/// Volume of the unit sphere S^dim.
double sphere_volume(int dim);

}  // namespace cz
