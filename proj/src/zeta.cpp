#include "conformal_zeta/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>

#include "conformal_zeta/errors.hpp"

namespace cz {

namespace {

using ld = long double;

constexpr int kBernoulliTerms = 24;

const std::array<ld, kBernoulliTerms + 1>& bernoulli_table() {
  static const auto table = [] {
    std::array<ld, kBernoulliTerms + 1> b{};
    for (int j = 0; j <= kBernoulliTerms; ++j) b[j] = boost::math::bernoulli_b2n<ld>(j);
    return b;
  }();
  return table;
}

struct Neumaier {
  ld sum = 0.0L;
  ld comp = 0.0L;
  void add(ld v) {
    const ld t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  ld value() const { return sum + comp; }
};

ld hurwitz_ld(ld s, ld a) {
  const auto& B = bernoulli_table();
  // Shift until M + a is large enough for the asymptotic remainder to be negligible. For
  // negative s the shifted head cancels against x^{1-s}/(s-1), so keep the shift short there.
  const ld target = s < 0.0L ? std::max(5.0L, 8.0L + 0.5L * s) : 12.0L + s;
  int M = 0;
  if (a < target) M = static_cast<int>(std::ceil(target - a));
  Neumaier acc;
  for (int k = 0; k < M; ++k) acc.add(std::pow(static_cast<ld>(k) + a, -s));
  const ld x = static_cast<ld>(M) + a;
  acc.add(std::pow(x, 1.0L - s) / (s - 1.0L));
  acc.add(0.5L * std::pow(x, -s));
  // sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) x^{-s-2j+1}
  ld poch = s;              // s (s+1) ... (s+2j-2)
  ld fact = 2.0L;           // (2j)!
  ld xp = std::pow(x, -s - 1.0L);
  const ld inv_x2 = 1.0L / (x * x);
  for (int j = 1; j <= kBernoulliTerms; ++j) {
    const ld term = B[j] / fact * poch * xp;
    acc.add(term);
    if (poch == 0.0L) break;
    if (std::fabs(term) < 1e-24L * std::fabs(acc.value())) break;
    poch *= (s + 2.0L * j - 1.0L) * (s + 2.0L * j);
    fact *= (2.0L * j + 1.0L) * (2.0L * j + 2.0L);
    xp *= inv_x2;
  }
  return acc.value();
}

ld digamma_ld(ld a) {
  const auto& B = bernoulli_table();
  Neumaier acc;
  while (a < 20.0L) {
    acc.add(-1.0L / a);
    a += 1.0L;
  }
  acc.add(std::log(a) - 0.5L / a);
  const ld inv2 = 1.0L / (a * a);
  ld p = inv2;
  for (int k = 1; k <= 12; ++k) {
    acc.add(-B[k] / (2.0L * k) * p);
    p *= inv2;
  }
  return acc.value();
}

// Degrees first, first+step, first+2 step, ... on S^n.
struct DegreeSet {
  int n;
  int first;
  int step;
};

// Value and derivative in beta, for tracking d/ds at s = 1.
struct Dual {
  ld v;
  ld d;
};

// Coefficients a_k(beta) of prod_i (1 - c_i y)^beta with c_i = (i + 1/2)^2, i = 0..n/2-2,
// so that lambda^beta = x^{2 beta (n/2-1)} sum_k a_k(beta) x^{-2k}.
std::vector<Dual> product_coefficients(int n, ld beta, int kmax) {
  std::vector<Dual> a(kmax + 1, Dual{0.0L, 0.0L});
  a[0] = {1.0L, 0.0L};
  for (int i = 0; i <= n / 2 - 2; ++i) {
    const ld c = (i + 0.5L) * (i + 0.5L);
    std::vector<Dual> f(kmax + 1);
    f[0] = {1.0L, 0.0L};
    for (int j = 1; j <= kmax; ++j) {
      // binom(beta, j) (-c)^j from binom(beta, j-1) (-c)^{j-1}
      const ld r = (beta - j + 1.0L) / j * (-c);
      f[j].v = f[j - 1].v * r;
      f[j].d = f[j - 1].d * r + f[j - 1].v * (-c) / j;
    }
    std::vector<Dual> out(kmax + 1, Dual{0.0L, 0.0L});
    for (int k = 0; k <= kmax; ++k) {
      for (int j = 0; j <= k; ++j) {
        out[k].v += a[k - j].v * f[j].v;
        out[k].d += a[k - j].d * f[j].v + a[k - j].v * f[j].d;
      }
    }
    a = std::move(out);
  }
  return a;
}

// Coefficients of the majorant prod_i (1 - c_i y)^{-|beta|}; all nonnegative.
std::vector<ld> majorant_coefficients(int n, ld abs_beta, int kmax) {
  std::vector<ld> a(kmax + 1, 0.0L);
  a[0] = 1.0L;
  for (int i = 0; i <= n / 2 - 2; ++i) {
    const ld c = (i + 0.5L) * (i + 0.5L);
    std::vector<ld> f(kmax + 1);
    f[0] = 1.0L;
    for (int j = 1; j <= kmax; ++j) f[j] = f[j - 1] * (abs_beta + j - 1.0L) / j * c;
    std::vector<ld> out(kmax + 1, 0.0L);
    for (int k = 0; k <= kmax; ++k)
      for (int j = 0; j <= k; ++j) out[k] += a[k - j] * f[j];
    a = std::move(out);
  }
  return a;
}

ld head_sum(const DegreeSet& d, int cutoff, ld s, int* last) {
  Neumaier acc;
  int l = d.first;
  for (; l <= cutoff; l += d.step) {
    ld lambda = 1.0L;
    for (int j = 1; j <= d.n - 2; ++j) lambda *= static_cast<ld>(l + j);
    const ld mult = static_cast<ld>(harmonic_multiplicity(d.n, l));
    const ld val = (s == 1.0L) ? mult / lambda : mult * std::pow(lambda, -s);
    acc.add(val);
  }
  *last = l - d.step;
  return acc.value();
}

// Tail engine. With x = l + (n-1)/2 the summand is
//   m_l lambda^{-s} = (2/(n-1)!) sum_k a_k(1-s) x^{gamma - 2k},  gamma = 1 + (n-2)(1-s),
// and sum_{x in X0 + step N} x^{-sigma} = step^{-sigma} zeta_H(sigma, X0/step).
struct TailSetup {
  ld x0;
  ld step;
  ld pref;  // 2/(n-1)!
  ld y0;    // 1/x0^2
};

TailSetup tail_setup(const DegreeSet& d, int last_head) {
  TailSetup t;
  const int first_tail = last_head + d.step;
  t.x0 = first_tail + 0.5L * (d.n - 1);
  t.step = d.step;
  ld f = 1.0L;
  for (int j = 2; j <= d.n - 1; ++j) f *= j;
  t.pref = 2.0L / f;
  t.y0 = 1.0L / (t.x0 * t.x0);
  return t;
}

ld power_sum(const TailSetup& t, ld sigma) {
  return std::pow(t.step, -sigma) * hurwitz_ld(sigma, t.x0 / t.step);
}

// Smallest order K whose remainder bound is below the tolerance, with the bound itself.
int choose_order(const DegreeSet& d, const TailSetup& t, ld s, const ZetaOptions& opt,
                 ld scale, ld* bound_out) {
  const ld beta = 1.0L - s;
  const ld gamma = 1.0L + (d.n - 2) * beta;
  const int extra = 60;
  const auto A = majorant_coefficients(d.n, std::fabs(beta), opt.max_order + extra);
  ld best = INFINITY;
  for (int K = 1; K <= opt.max_order; ++K) {
    const ld sigma = 2.0L * (K + 1) - gamma;
    if (sigma <= 1.0L + 1e-6L) continue;
    ld T = 0.0L;
    for (int k = K + 1; k <= opt.max_order + extra; ++k) T += A[k] * std::pow(t.y0, k);
    const ld bound = t.pref * T * std::pow(t.y0, -(K + 1)) * power_sum(t, sigma);
    best = std::min(best, bound);
    if (bound <= opt.tail_tolerance * std::min(1.0L, scale)) {
      *bound_out = bound;
      return K;
    }
  }
  throw NumericalError("spectral zeta tail: no expansion order up to " +
                       std::to_string(opt.max_order) + " meets tolerance " +
                       std::to_string(opt.tail_tolerance) + " (best bound " +
                       std::to_string(static_cast<double>(best)) + ")");
}

void validate_options(const ZetaOptions& opt) {
  if (opt.head_cutoff < 10) throw InvalidArgument("zeta: head_cutoff must be >= 10");
  if (opt.max_order < 1) throw InvalidArgument("zeta: max_order must be >= 1");
  if (!(opt.tail_tolerance > 0.0)) throw InvalidArgument("zeta: tail_tolerance must be positive");
}

ld zeta_value(const DegreeSet& d, ld s, const ZetaOptions& opt) {
  // Below s = 1 the head grows like L^{(n-2)(1-s)+2} and cancels against the continued
  // tail, so start from the shortest head and lengthen it only if the expansion needs it.
  int cutoff = s > 1.0L ? opt.head_cutoff : 0;
  int last = 0;
  ld head = 0.0L;
  ld bound = 0.0L;
  int K = 0;
  TailSetup t{};
  for (;;) {
    head = head_sum(d, cutoff, s, &last);
    t = tail_setup(d, last);
    try {
      K = choose_order(d, t, s, opt, s > 1.0L ? std::fabs(head) : 1.0L, &bound);
      break;
    } catch (const NumericalError&) {
      if (cutoff >= opt.head_cutoff) throw;
      cutoff = std::min(std::max(4, 2 * cutoff), opt.head_cutoff);
    }
  }
  const ld beta = 1.0L - s;
  const ld gamma = 1.0L + (d.n - 2) * beta;
  const auto a = product_coefficients(d.n, beta, K);
  Neumaier acc;
  acc.add(head);
  for (int k = 0; k <= K; ++k) {
    if (a[k].v == 0.0L) continue;
    const ld sigma = 2.0L * k - gamma;
    if (std::fabs(sigma - 1.0L) < 1e-6L) {
      throw InvalidArgument("spectral_zeta: s = " + std::to_string(static_cast<double>(s)) +
                            " is a pole of the continuation for n=" + std::to_string(d.n));
    }
    acc.add(t.pref * a[k].v * power_sum(t, sigma));
  }
  return acc.value();
}

LaurentValue zeta_laurent(const DegreeSet& d, const ZetaOptions& opt) {
  int last = 0;
  const ld head = head_sum(d, opt.head_cutoff, 1.0L, &last);
  const auto t = tail_setup(d, last);
  ld bound = 0.0L;
  const int K = choose_order(d, t, 1.0L, opt, std::fabs(head), &bound);
  const auto a = product_coefficients(d.n, 0.0L, K);
  const ld h = t.step;
  const ld scale = static_cast<ld>(d.n - 2);
  Neumaier res, fp;
  fp.add(head);
  for (int k = 0; k <= K; ++k) {
    // Laurent data in s of step^{-sigma} zeta_H(sigma, X0/step), sigma = 2k - 1 + (n-2)(s-1).
    ld R = 0.0L, F = 0.0L;
    if (k == 1) {
      R = 1.0L / (h * scale);
      F = (-digamma_ld(t.x0 / h) - std::log(h)) / h;
    } else {
      F = power_sum(t, 2.0L * k - 1.0L);
    }
    // a_k(1 - s): d/ds = -d/dbeta
    const ld ak = a[k].v;
    const ld dak = -a[k].d;
    res.add(t.pref * ak * R);
    fp.add(t.pref * (ak * F + dak * R));
  }
  LaurentValue out;
  out.residue = static_cast<double>(res.value());
  out.finite_part = static_cast<double>(fp.value());
  out.at = 1.0;
  return out;
}

DegreeSet degrees_for(const SpectrumQuery& q) {
  validate(q);
  if (q.op != OperatorKind::subcritical_gjms) {
    throw InvalidArgument("spectral zeta: only the subcritical GJMS operator has a positive "
                          "spectrum; the Laplacian has a zero mode");
  }
  return DegreeSet{q.n, 0, q.space == Space::projective ? 2 : 1};
}

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (!std::isfinite(s) || !std::isfinite(a)) throw InvalidArgument("hurwitz_zeta: non-finite argument");
  if (!(a > 0.0)) throw InvalidArgument("hurwitz_zeta: a must be positive");
  if (std::fabs(s - 1.0) < 1e-6) {
    throw InvalidArgument("hurwitz_zeta: s too close to the pole at 1; use hurwitz_laurent_at_1");
  }
  return static_cast<double>(hurwitz_ld(s, a));
}

double digamma(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("digamma: a must be positive");
  return static_cast<double>(digamma_ld(a));
}

LaurentValue hurwitz_laurent_at_1(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("hurwitz_laurent_at_1: a must be positive");
  return LaurentValue{1.0, -digamma(a), 1.0};
}

double spectral_zeta(const SpectrumQuery& q, double s, const ZetaOptions& opt) {
  validate_options(opt);
  const auto d = degrees_for(q);
  if (!std::isfinite(s)) throw InvalidArgument("spectral_zeta: non-finite s");
  if (std::fabs(s - 1.0) < 1e-6) {
    throw InvalidArgument("spectral_zeta: s = 1 is a pole of the continuation; use spectral_zeta_at_1");
  }
  return static_cast<double>(zeta_value(d, s, opt));
}

LaurentValue spectral_zeta_at_1(const SpectrumQuery& q, const ZetaOptions& opt) {
  validate_options(opt);
  return zeta_laurent(degrees_for(q), opt);
}

LaurentValue spectral_zeta_parity_at_1(int n, int parity, const ZetaOptions& opt) {
  validate_options(opt);
  validate(SpectrumQuery{Space::sphere, n, OperatorKind::subcritical_gjms});
  if (parity != 0 && parity != 1) throw InvalidArgument("spectral_zeta_parity_at_1: parity must be 0 or 1");
  return zeta_laurent(DegreeSet{n, parity, 2}, opt);
}

HomogeneousMass homogeneous_mass(const SpectrumQuery& q, const DimensionParams& params,
                                 const ZetaOptions& opt) {
  if (params.n != q.n) {
    throw InvalidArgument("homogeneous_mass: params dimension " + std::to_string(params.n) +
                          " does not match query n=" + std::to_string(q.n));
  }
  HomogeneousMass out;
  out.zeta = spectral_zeta_at_1(q, opt);
  out.volume = q.space == Space::projective ? 0.5 * params.omega_n : params.omega_n;
  out.mass = out.zeta.finite_part / out.volume;
  out.normalized_mass = out.mass + params.b_n * params.sphere_scal();
  return out;
}

}  // namespace cz
