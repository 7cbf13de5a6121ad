#pragma once

#include "conformal_zeta/constants.hpp"
#include "conformal_zeta/spectra.hpp"

namespace cz {

/// Laurent data (residue, constant term) of a zeta-type function at s = at.
struct LaurentValue {
  double residue = 0.0;
  double finite_part = 0.0;
  double at = 1.0;
};

/// Hurwitz zeta sum_{k>=0} (k+a)^{-s}, analytically continued (Euler-Maclaurin).
/// Requires a > 0 and |s-1| >= 1e-6.
double hurwitz_zeta(double s, double a);
double digamma(double a);
/// zeta_H(s, a) = 1/(s-1) - psi(a) + O(s-1).
LaurentValue hurwitz_laurent_at_1(double a);

struct ZetaOptions {
  int head_cutoff = 1000;       // degrees l <= head_cutoff are summed directly
  int max_order = 20;           // largest tail expansion order in 1/x^2
  double tail_tolerance = 1e-13;
};

/// Spectral zeta sum_l m_l lambda_l^{-s} of the subcritical GJMS operator, continued to
/// real s != 1.
double spectral_zeta(const SpectrumQuery& q, double s, const ZetaOptions& opt = {});

/// Residue and finite part of the spectral zeta function at s = 1.
LaurentValue spectral_zeta_at_1(const SpectrumQuery& q, const ZetaOptions& opt = {});

/// Same, restricted to degrees l = parity (mod 2) on S^n. The even part is the RP^n zeta.
LaurentValue spectral_zeta_parity_at_1(int n, int parity, const ZetaOptions& opt = {});

struct HomogeneousMass {
  double mass = 0.0;
  double normalized_mass = 0.0;
  double volume = 0.0;
  LaurentValue zeta;
};

/// On a homogeneous space the local zeta function is zeta(s)/vol, so the mass is the
/// finite part divided by the volume.
HomogeneousMass homogeneous_mass(const SpectrumQuery& q, const DimensionParams& params,
                                 const ZetaOptions& opt = {});

}  // namespace cz
