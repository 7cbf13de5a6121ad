#include "conformal_zeta/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "conformal_zeta/errors.hpp"
#include "conformal_zeta/functionals.hpp"

namespace cz {

std::vector<double> OptimizerConfig::schedule_for(double p) const {
  if (exponent_schedule.empty()) return {p - 0.5, p - 0.25, p - 0.125, p};
  return exponent_schedule;
}

namespace {

void validate_config(const OptimizerConfig& cfg, double p) {
  if (!(cfg.step0 > 0.0)) throw InvalidArgument("optimizer: step0 must be positive");
  if (!(cfg.tol_residual > 0.0)) throw InvalidArgument("optimizer: tol_residual must be positive");
  if (cfg.max_iters < 1) throw InvalidArgument("optimizer: max_iters must be >= 1");
  if (!(cfg.positivity_floor > 0.0)) throw InvalidArgument("optimizer: positivity_floor must be positive");
  const auto sched = cfg.schedule_for(p);
  for (std::size_t k = 0; k < sched.size(); ++k) {
    if (!(sched[k] > 2.0) || (k > 0 && !(sched[k] > sched[k - 1]))) {
      throw InvalidArgument("optimizer: exponent schedule must be strictly increasing and > 2");
    }
  }
  if (std::abs(sched.back() - p) > 1e-15) {
    throw InvalidArgument("optimizer: exponent schedule must end at the critical exponent p");
  }
}

void require_positive(const ZonalField& u, const char* where) {
  if (!(u.min() > 0.0)) throw InvalidArgument(std::string(where) + ": u must be positive");
}

double wnorm2(const ZonalField& f) { return std::sqrt(inner(f, f)); }

// Nodal matrix of P_g and its LU factorization; falls back to (Delta + 1)^{-1} when P_g
// does not give an ascent direction.
class Preconditioner {
 public:
  explicit Preconditioner(const ConformalBackground& bg) : grid_(bg.grid) {
    const auto& g = *grid_;
    const int N = g.size();
    const double c = bg.params.c_n;
    const auto m = bg.mass();
    Eigen::MatrixXd B(N, N);
    for (int i = 0; i < N; ++i)
      for (int l = 0; l < N; ++l) B(i, l) = g.basis(i, l);
    Eigen::VectorXd lam(N), w(N);
    for (int l = 0; l < N; ++l) lam(l) = c * g.laplace_eigenvalue(l);
    for (int i = 0; i < N; ++i) w(i) = g.weights()[i];
    Eigen::MatrixXd P = B * lam.asDiagonal() * B.transpose() * w.asDiagonal();
    for (int i = 0; i < N; ++i) P(i, i) -= m[i];
    lu_.compute(P);
  }

  ZonalField apply(const ZonalField& g) const {
    const auto& v = g.values();
    Eigen::Map<const Eigen::VectorXd> rhs(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::VectorXd x = lu_.solve(rhs);
    return ZonalField(g.grid_ptr(), std::vector<double>(x.data(), x.data() + x.size()));
  }

  ZonalField fallback(const ZonalField& g) const {
    auto c = g.coeffs();
    for (std::size_t l = 0; l < c.size(); ++l) c[l] /= grid_->laplace_eigenvalue(static_cast<int>(l)) + 1.0;
    return ZonalField::from_coeffs(g.grid_ptr(), c);
  }

 private:
  GridPtr grid_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

struct StageState {
  ZonalField pu;
  double energy;   // int u P u
  double lambda;   // energy / int |u|^q
  double value;    // -energy / ||u||_q^2
  double residual;
};

StageState evaluate(const ZonalField& u, const ConformalBackground& bg, double q) {
  auto pu = p_operator_apply(u, bg);
  const double energy = inner(u, pu);
  const double nq = lp_norm(u, q);
  const double iq = std::pow(nq, q);
  const double lambda = energy / iq;
  const auto uq = u.map([q](double v) { return std::pow(std::abs(v), q - 2.0) * v; });
  const double res = wnorm2(pu - uq * lambda) / wnorm2(pu);
  return StageState{std::move(pu), energy, lambda, -energy / (nq * nq), res};
}

void check_finite(const ZonalField& u) {
  for (double v : u.values()) {
    if (!std::isfinite(v)) throw NumericalError("optimizer: non-finite value in iterate");
  }
}

ZonalField project(ZonalField u, double floor, double q) {
  for (auto& v : u.mutable_values()) v = std::max(v, floor);
  u *= 1.0 / lp_norm(u, q);
  return u;
}

}  // namespace

EulerLagrange euler_lagrange_residual(const ZonalField& u, const ConformalBackground& bg) {
  require_same_grid(u, bg.scal, "euler_lagrange_residual");
  require_positive(u, "euler_lagrange_residual");
  const auto s = evaluate(u, bg, bg.params.p);
  return EulerLagrange{s.lambda, s.residual};
}

MassCheck constant_mass_check(const ZonalField& u, const ConformalBackground& bg) {
  require_same_grid(u, bg.scal, "constant_mass_check");
  require_positive(u, "constant_mass_check");
  const auto mass = mass_pushforward(u, bg);
  const double p = bg.params.p;
  const auto vol = u.map([p](double v) { return std::pow(v, p); });
  const double V = integrate(vol);
  const double mean = inner(mass, vol) / V;
  const auto dev = mass + (-mean);
  const double sd = std::sqrt(inner(dev * dev, vol) / V);
  return MassCheck{mean, sd / std::abs(mean)};
}

OrbitFit fit_dilation_orbit(const ZonalField& u, double t_max) {
  const int n = u.grid().dimension();
  const double p = 2.0 * n / (n - 2.0);
  const auto un = u * (1.0 / lp_norm(u, p));
  auto sup_diff = [&](double t) {
    const auto ut = dilation_factor(t, u.grid_ptr());
    const auto d = un - ut * (1.0 / lp_norm(ut, p));
    double s = 0.0;
    for (double v : d.values()) s = std::max(s, std::abs(v));
    return s;
  };
  // Coarse scan, then Brent on the best bracket.
  const int M = 64;
  double best_t = 0.0, best = sup_diff(0.0);
  for (int k = 0; k <= M; ++k) {
    const double t = -t_max + 2.0 * t_max * k / M;
    const double v = sup_diff(t);
    if (v < best) best = v, best_t = t;
  }
  const double h = 2.0 * t_max / M;
  auto r = boost::math::tools::brent_find_minima(sup_diff, best_t - h, best_t + h, 52);
  if (r.second < best) best = r.second, best_t = r.first;
  return OrbitFit{best_t, best};
}

OptimizerResult maximize_mass_functional(const ConformalBackground& bg, const OptimizerConfig& cfg) {
  const auto& params = bg.params;
  const double p = params.p;
  validate_config(cfg, p);
  const auto sched = cfg.schedule_for(p);

  ZonalField u0 = cfg.start ? *cfg.start
                            : random_zonal(bg.grid, cfg.seed, cfg.start_degree, cfg.start_perturbation, 1.0);
  require_same_grid(u0, bg.scal, "maximize_mass_functional");
  require_positive(u0, "maximize_mass_functional");

  const Preconditioner pre(bg);
  OptimizerResult out{.u_star = u0, .stages = {}, .history = {}, .message = {}};
  ZonalField u = project(u0, cfg.positivity_floor, sched.front());
  int iters = 0;
  bool budget_left = true;

  for (std::size_t k = 0; k < sched.size() && budget_left; ++k) {
    const double q = sched[k];
    const bool last = k + 1 == sched.size();
    const double target = last ? cfg.tol_residual : 10.0 * cfg.tol_residual;
    u = project(u, cfg.positivity_floor, q);
    auto st = evaluate(u, bg, q);
    StageSummary sum{q, 0, st.residual, st.value};
    if (last) out.history.push_back(st.value);
    while (st.residual > target) {
      if (iters >= cfg.max_iters) {
        budget_left = false;
        break;
      }
      ++iters;
      ++sum.iterations;
      // Ascent direction of u -> -int uPu/||u||_q^2 at ||u||_q = 1.
      const auto uq = u.map([q](double v) { return std::pow(std::abs(v), q - 2.0) * v; });
      const auto grad = (st.pu - uq * st.lambda) * -2.0;
      auto dir = pre.apply(grad);
      if (!(inner(grad, dir) > 0.0)) dir = pre.fallback(grad);
      double tau = 0.5 * cfg.step0;
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt, tau *= 0.5) {
        auto trial = project(u + dir * tau, cfg.positivity_floor, q);
        check_finite(trial);
        auto ts = evaluate(trial, bg, q);
        if (ts.value >= st.value) {
          if (last) out.history.push_back(ts.value);
          u = std::move(trial);
          st = std::move(ts);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;  // no increase available at working precision
    }
    sum.residual = st.residual;
    sum.value = st.value;
    out.stages.push_back(sum);
  }

  for (std::size_t i = 1; i < out.history.size(); ++i) {
    if (out.history[i] < out.history[i - 1]) out.monotone = false;
  }
  out.u_star = u;
  out.iterations = iters;
  const auto el = euler_lagrange_residual(u, bg);
  out.lambda = el.lambda;
  out.residual = el.residual;
  out.value = mass_functional(u, bg);
  const auto mc = constant_mass_check(u, bg);
  out.mass_mean = mc.mean;
  out.mass_reldev = mc.reldev;
  out.converged = out.residual <= cfg.tol_residual;
  if (out.converged) {
    out.message = "converged";
  } else if (!budget_left) {
    out.message = "iteration budget exhausted";
  } else {
    out.message = "stalled: no increasing step at working precision";
  }
  return out;
}

}  // namespace cz
