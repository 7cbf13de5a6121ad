#include "conformal_zeta/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "conformal_zeta/errors.hpp"
#include "conformal_zeta/report_format.hpp"

namespace cz {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

template <class F>
double integrate_pieces(F f, const std::vector<double>& pts, double tol = 1e-11) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    double err = 0.0;
    total += GK::integrate(f, pts[i], pts[i + 1], 10, tol, &err);
  }
  return total;
}

// Geometric breakpoints resolving the peak of u_alpha at scale alpha.
std::vector<double> breakpoints(double alpha, double upper, std::vector<double> extra = {}) {
  std::vector<double> pts{0.0};
  for (double r = alpha / 64.0; r < upper; r *= 2.0) pts.push_back(r);
  for (double e : extra)
    if (e < upper) pts.push_back(e);
  pts.push_back(upper);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double smooth_sigma(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = smooth_sigma(x), b = smooth_sigma(1.0 - x);
  return a / (a + b);
}

double smoothstep_dx(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = smooth_sigma(x), b = smooth_sigma(1.0 - x);
  const double da = a / (x * x), db = b / ((1.0 - x) * (1.0 - x));
  return (da * b + a * db) / ((a + b) * (a + b));
}

}  // namespace

void TestFunctionParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("test function: alpha must be positive");
  if (!(epsilon > 0.0) || !(2.0 * epsilon < std::numbers::pi)) {
    throw InvalidArgument("test function: epsilon must lie in (0, pi/2)");
  }
  if (n < 4 || n % 2 != 0) throw InvalidArgument("test function: n must be even and >= 4");
}

double u_alpha(double alpha, double r, int n) {
  if (!(alpha > 0.0)) throw InvalidArgument("u_alpha: alpha must be positive");
  return std::pow((r * r + alpha * alpha) / alpha, 0.5 * (2.0 - n));
}

double u_alpha_dr(double alpha, double r, int n) {
  if (!(alpha > 0.0)) throw InvalidArgument("u_alpha_dr: alpha must be positive");
  return 0.5 * (2.0 - n) * std::pow((r * r + alpha * alpha) / alpha, -0.5 * n) * (2.0 * r / alpha);
}

double cutoff_eta(double epsilon, double r) { return smoothstep((2.0 * epsilon - r) / epsilon); }

double cutoff_eta_dr(double epsilon, double r) {
  return -smoothstep_dx((2.0 * epsilon - r) / epsilon) / epsilon;
}

ZonalField psi_alpha(const TestFunctionParams& tp, GridPtr grid) {
  tp.validate();
  if (grid->dimension() != tp.n) {
    throw GridMismatch("psi_alpha: grid dimension " + std::to_string(grid->dimension()) +
                       " does not match n=" + std::to_string(tp.n));
  }
  return ZonalField::from_function(std::move(grid), [&](double x) {
    const double r = std::acos(std::clamp(x, -1.0, 1.0));
    if (r >= 2.0 * tp.epsilon) return 0.0;
    return cutoff_eta(tp.epsilon, r) * u_alpha(tp.alpha, r, tp.n);
  });
}

PsiIntegrals psi_integrals(const TestFunctionParams& tp,
                           const std::function<double(double)>& weight_of_theta) {
  tp.validate();
  const int n = tp.n;
  const double p = 2.0 * n / (n - 2.0);
  const double area = sphere_volume(n - 1);
  const double a = tp.alpha, e = tp.epsilon;
  const auto pts = breakpoints(a, 2.0 * e, {e});
  auto vol = [n](double t) { return std::pow(std::sin(t), n - 1); };
  auto psi = [&](double t) { return cutoff_eta(e, t) * u_alpha(a, t, n); };
  auto dpsi = [&](double t) {
    return cutoff_eta_dr(e, t) * u_alpha(a, t, n) + cutoff_eta(e, t) * u_alpha_dr(a, t, n);
  };
  PsiIntegrals out;
  out.dirichlet = area * integrate_pieces([&](double t) { const double d = dpsi(t); return d * d * vol(t); }, pts);
  out.l2 = area * integrate_pieces([&](double t) { const double s = psi(t); return s * s * vol(t); }, pts);
  out.lp = area * integrate_pieces([&](double t) { return std::pow(psi(t), p) * vol(t); }, pts);
  if (weight_of_theta) {
    out.weighted = area * integrate_pieces(
                              [&](double t) { const double s = psi(t); return weight_of_theta(t) * s * s * vol(t); },
                              pts);
  }
  return out;
}

double lee_parker_integral(double alpha, double epsilon, int k, int n) {
  if (k <= -n) throw InvalidArgument("lee_parker_integral: k must be > -n");
  if (!(alpha > 0.0) || !(epsilon > 0.0)) throw InvalidArgument("lee_parker_integral: alpha, epsilon must be positive");
  const double pw = k + n - 1.0;
  auto f = [&](double r) {
    const double u = u_alpha(alpha, r, n);
    return u * u * std::pow(r, pw);
  };
  return integrate_pieces(f, breakpoints(alpha, epsilon));
}

double flat_norm_integral(double alpha, int n) {
  if (!(alpha > 0.0)) throw InvalidArgument("flat_norm_integral: alpha must be positive");
  const double p = 2.0 * n / (n - 2.0);
  auto f = [&](double r) { return std::pow(u_alpha(alpha, r, n), p) * std::pow(r, n - 1.0); };
  // The integrand decays like r^{-n-1}; beyond 1e8 alpha the remainder is below 1e-32 relative.
  return sphere_volume(n - 1) * integrate_pieces(f, breakpoints(alpha, 1e8 * alpha));
}

std::string_view to_string(RateBranch b) {
  switch (b) {
    case RateBranch::k_plus_2: return "k_plus_2";
    case RateBranch::k_plus_2_log: return "k_plus_2_log";
    case RateBranch::n_minus_2: return "n_minus_2";
  }
  return "?";
}

RateBranch predicted_branch(int n, int k) {
  if (n > k + 4) return RateBranch::k_plus_2;
  if (n == k + 4) return RateBranch::k_plus_2_log;
  return RateBranch::n_minus_2;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
  double tss = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i];
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    f.rss += r * r;
  }
  f.tss = syy;
  return f;
}

}  // namespace

RateFitReport rate_fit(const std::vector<double>& alphas, const std::vector<double>& values, int n, int k) {
  if (alphas.size() != values.size()) throw InvalidArgument("rate_fit: alphas and values differ in length");
  if (alphas.size() < 8) throw InvalidArgument("rate_fit: need at least 8 samples");
  const auto [lo, hi] = std::minmax_element(alphas.begin(), alphas.end());
  if (!(*lo > 0.0) || !(*hi < 1.0)) throw InvalidArgument("rate_fit: alphas must lie in (0, 1)");
  if (*hi / *lo < 100.0 * (1.0 - 1e-12)) throw InvalidArgument("rate_fit: samples must span at least 2 decades");
  std::vector<double> x, y, ylog;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(values[i] > 0.0)) throw InvalidArgument("rate_fit: values must be positive");
    x.push_back(std::log(alphas[i]));
    y.push_back(std::log(values[i]));
    ylog.push_back(std::log(values[i]) - std::log(std::log(1.0 / alphas[i])));
  }
  const auto plain = fit_line(x, y);
  const auto withlog = fit_line(x, ylog);
  RateFitReport r;
  r.n = n;
  r.k = k;
  r.rss_plain = plain.rss;
  r.rss_log = withlog.rss;
  r.log_factor_detected = withlog.rss < plain.rss;
  const auto& best = r.log_factor_detected ? withlog : plain;
  r.exponent_fit = best.slope;
  r.r2 = best.tss > 0.0 ? 1.0 - best.rss / best.tss : 1.0;
  r.predicted = predicted_branch(n, k);
  r.predicted_exponent = r.predicted == RateBranch::n_minus_2 ? n - 2.0 : k + 2.0;
  return r;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw InvalidArgument("log_spaced: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

RateFitReport lee_parker_rates(int n, int k, double lo, double hi, int count, double epsilon) {
  const auto alphas = log_spaced(lo, hi, count);
  std::vector<double> vals;
  vals.reserve(alphas.size());
  for (double a : alphas) vals.push_back(lee_parker_integral(a, epsilon, k, n));
  return rate_fit(alphas, vals, n, k);
}

double psi_mass_functional(const TestFunctionParams& tp, const ConformalBackground& bg) {
  tp.validate();
  if (bg.params.n != tp.n) throw InvalidArgument("psi_mass_functional: dimension mismatch");
  const auto& P = bg.params;
  const auto mnor_c = bg.mnor.coeffs();
  const auto scal_c = bg.scal.coeffs();
  const auto& grid = *bg.grid;
  // -int psi P psi = -c int |d psi|^2 + int mnor psi^2 - b int scal psi^2
  const bool flat_mnor = bg.mnor.min() == bg.mnor.max();
  const bool flat_scal = bg.scal.min() == bg.scal.max();
  auto weight = [&](double t) {
    const double x = std::cos(t);
    const double mn = flat_mnor ? bg.mnor[0] : grid.evaluate(mnor_c, x);
    const double sc = flat_scal ? bg.scal[0] : grid.evaluate(scal_c, x);
    return mn - P.b_n * sc;
  };
  const auto I = psi_integrals(tp, weight);
  const double nrm2 = std::pow(I.lp, 2.0 / P.p);
  return (-P.c_n * I.dirichlet + I.weighted) / nrm2;
}

std::vector<SweepRow> functional_sweep(const std::vector<double>& alphas, double epsilon,
                                       const ConformalBackground& bg) {
  const double sphere_value = -bg.params.b_n * bg.params.yamabe_sphere;
  const auto mnor_c = bg.mnor.coeffs();
  double mu = std::numeric_limits<double>::infinity();
  const int samples = 2001;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * epsilon * i / (samples - 1);
    mu = std::min(mu, bg.grid->evaluate(mnor_c, std::cos(t)));
  }
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    SweepRow r;
    r.alpha = a;
    r.m_psi = psi_mass_functional(TestFunctionParams{a, epsilon, bg.params.n}, bg);
    r.sphere_value = sphere_value;
    r.margin = r.m_psi - sphere_value;
    r.mu = mu;
    rows.push_back(r);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "alpha,M_psi,sphere_value,margin,mu\n";
  for (const auto& r : rows) {
    os << format_real(r.alpha) << ',' << format_real(r.m_psi) << ',' << format_real(r.sphere_value) << ','
       << format_real(r.margin) << ',' << format_real(r.mu) << '\n';
  }
  return os.str();
}

}  // namespace cz
