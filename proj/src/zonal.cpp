#include "conformal_zeta/zonal.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include "conformal_zeta/constants.hpp"
#include "conformal_zeta/errors.hpp"

namespace cz {

namespace {

// Three-term recurrence coefficient of the monic Gegenbauer polynomials,
// p_{k+1} = x p_k - beta_k p_{k-1}.
double recurrence_beta(int k, double lambda) {
  if (k == 0) return 0.0;
  return k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0));
}

struct Recurrence {
  double lambda;
  double p0;  // orthonormal degree-0 value
  std::vector<double> sqrt_beta;

  Recurrence(int n, int max_degree) : lambda(0.5 * (n - 1)), p0(1.0 / std::sqrt(sphere_volume(n))) {
    sqrt_beta.resize(static_cast<std::size_t>(max_degree) + 1);
    for (int k = 0; k <= max_degree; ++k) sqrt_beta[k] = std::sqrt(recurrence_beta(k, lambda));
  }

  // Fills values (and derivatives, when non-null) of degrees 0..count-1 at x.
  void eval(double x, int count, double* val, double* der) const {
    double prev = 0.0, cur = p0, dprev = 0.0, dcur = 0.0;
    for (int k = 0; k < count; ++k) {
      val[k] = cur;
      if (der) der[k] = dcur;
      const double nxt = (x * cur - sqrt_beta[k] * prev) / sqrt_beta[k + 1];
      const double dnxt = (cur + x * dcur - sqrt_beta[k] * dprev) / sqrt_beta[k + 1];
      prev = cur;
      cur = nxt;
      dprev = dcur;
      dcur = dnxt;
    }
  }

  // Degree-N value and derivative, for Newton refinement of the nodes.
  std::pair<double, double> top(double x, int N) const {
    double prev = 0.0, cur = p0, dprev = 0.0, dcur = 0.0;
    for (int k = 0; k < N; ++k) {
      const double nxt = (x * cur - sqrt_beta[k] * prev) / sqrt_beta[k + 1];
      const double dnxt = (cur + x * dcur - sqrt_beta[k] * dprev) / sqrt_beta[k + 1];
      prev = cur;
      cur = nxt;
      dprev = dcur;
      dcur = dnxt;
    }
    return {cur, dcur};
  }
};

}  // namespace

ZonalGrid::ZonalGrid(int n, int N) : n_(n), N_(N) {
  if (n < 2) throw InvalidArgument("zonal grid: dimension must be >= 2");
  if (N < 16) throw InvalidArgument("zonal grid: need N >= 16, got N=" + std::to_string(N));

  const Recurrence rec(n, N);

  // Golub-Welsch for initial nodes, then Newton polish on the degree-N polynomial.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd sub(N - 1);
  for (int k = 1; k < N; ++k) sub[k - 1] = rec.sqrt_beta[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  nodes_.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
  std::sort(nodes_.begin(), nodes_.end());
  for (double& x : nodes_) {
    for (int it = 0; it < 3; ++it) {
      const auto [v, dv] = rec.top(x, N);
      x -= v / dv;
    }
  }
  for (int i = 1; i < N; ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) throw NumericalError("zonal grid: nodes not separated");
  }

  basis_.resize(static_cast<std::size_t>(N) * N);
  dbasis_.resize(static_cast<std::size_t>(N) * N);
  weights_.resize(N);
  for (int i = 0; i < N; ++i) {
    double* row = &basis_[static_cast<std::size_t>(i) * N];
    double* drow = &dbasis_[static_cast<std::size_t>(i) * N];
    rec.eval(nodes_[i], N, row, drow);
    // Christoffel function: w_i = 1 / sum_k p_k(x_i)^2.
    double s = 0.0;
    for (int k = 0; k < N; ++k) s += row[k] * row[k];
    weights_[i] = 1.0 / s;
  }
}

std::vector<double> ZonalGrid::analyze(std::span<const double> values) const {
  std::vector<double> c(N_, 0.0);
  for (int i = 0; i < N_; ++i) {
    const double wf = weights_[i] * values[i];
    const double* row = &basis_[static_cast<std::size_t>(i) * N_];
    for (int l = 0; l < N_; ++l) c[l] += wf * row[l];
  }
  return c;
}

std::vector<double> ZonalGrid::synthesize(std::span<const double> coeffs) const {
  std::vector<double> v(N_, 0.0);
  const int L = std::min<int>(N_, static_cast<int>(coeffs.size()));
  for (int i = 0; i < N_; ++i) {
    const double* row = &basis_[static_cast<std::size_t>(i) * N_];
    double s = 0.0;
    for (int l = 0; l < L; ++l) s += coeffs[l] * row[l];
    v[i] = s;
  }
  return v;
}

std::vector<double> ZonalGrid::derivative(std::span<const double> coeffs) const {
  std::vector<double> v(N_, 0.0);
  const int L = std::min<int>(N_, static_cast<int>(coeffs.size()));
  for (int i = 0; i < N_; ++i) {
    const double* row = &dbasis_[static_cast<std::size_t>(i) * N_];
    double s = 0.0;
    for (int l = 0; l < L; ++l) s += coeffs[l] * row[l];
    v[i] = s;
  }
  return v;
}

double ZonalGrid::evaluate(std::span<const double> coeffs, double x) const {
  const Recurrence rec(n_, static_cast<int>(coeffs.size()));
  std::vector<double> vals(coeffs.size());
  rec.eval(x, static_cast<int>(coeffs.size()), vals.data(), nullptr);
  double s = 0.0;
  for (std::size_t l = 0; l < coeffs.size(); ++l) s += coeffs[l] * vals[l];
  return s;
}

GridPtr make_grid(int n, int N) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, GridPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, N}];
  if (!slot) slot = std::make_shared<const ZonalGrid>(n, N);
  return slot;
}

// ---------------------------------------------------------------------------

ZonalField::ZonalField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgument("zonal field: null grid");
  if (static_cast<int>(values_.size()) != grid_->size()) {
    throw GridMismatch("zonal field: " + std::to_string(values_.size()) +
                       " values for a grid of size " + std::to_string(grid_->size()));
  }
}

ZonalField ZonalField::constant(GridPtr grid, double value) {
  const auto N = static_cast<std::size_t>(grid->size());
  return ZonalField(std::move(grid), std::vector<double>(N, value));
}

ZonalField ZonalField::from_function(GridPtr grid, const std::function<double(double)>& f_of_x) {
  std::vector<double> v;
  v.reserve(grid->size());
  for (double x : grid->nodes()) v.push_back(f_of_x(x));
  return ZonalField(std::move(grid), std::move(v));
}

ZonalField ZonalField::from_coeffs(GridPtr grid, std::span<const double> coeffs) {
  if (static_cast<int>(coeffs.size()) > grid->size()) {
    throw GridMismatch("zonal field: " + std::to_string(coeffs.size()) +
                       " coefficients exceed grid size " + std::to_string(grid->size()));
  }
  auto v = grid->synthesize(coeffs);
  return ZonalField(std::move(grid), std::move(v));
}

double ZonalField::evaluate_at(double x) const { return grid_->evaluate(coeffs(), x); }

double ZonalField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ZonalField::max() const { return *std::max_element(values_.begin(), values_.end()); }

ZonalField ZonalField::map(const std::function<double(double)>& f) const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), f);
  return ZonalField(grid_, std::move(v));
}

void require_same_grid(const ZonalField& a, const ZonalField& b, const char* where) {
  if (!a.grid().same_as(b.grid())) {
    throw GridMismatch(std::string(where) + ": fields live on different grids (n=" +
                       std::to_string(a.grid().dimension()) + ",N=" +
                       std::to_string(a.grid().size()) + " vs n=" +
                       std::to_string(b.grid().dimension()) + ",N=" +
                       std::to_string(b.grid().size()) + ")");
  }
}

ZonalField& ZonalField::operator+=(const ZonalField& o) {
  require_same_grid(*this, o, "operator+");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ZonalField& ZonalField::operator-=(const ZonalField& o) {
  require_same_grid(*this, o, "operator-");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ZonalField& ZonalField::operator*=(const ZonalField& o) {
  require_same_grid(*this, o, "operator*");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

ZonalField& ZonalField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ZonalField operator+(ZonalField a, const ZonalField& b) { return a += b; }
ZonalField operator-(ZonalField a, const ZonalField& b) { return a -= b; }
ZonalField operator*(ZonalField a, const ZonalField& b) { return a *= b; }
ZonalField operator*(ZonalField a, double s) { return a *= s; }
ZonalField operator*(double s, ZonalField a) { return a *= s; }
ZonalField operator+(ZonalField a, double s) {
  for (double& v : a.mutable_values()) v += s;
  return a;
}

// ---------------------------------------------------------------------------

double integrate(const ZonalField& f) {
  const auto w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

double inner(const ZonalField& f, const ZonalField& g) {
  require_same_grid(f, g, "inner");
  const auto w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i];
  return s;
}

double lp_norm(const ZonalField& f, double q) {
  if (!(q >= 1.0)) throw InvalidArgument("lp_norm: exponent must be >= 1");
  const auto w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::pow(std::abs(f[i]), q);
  return std::pow(s, 1.0 / q);
}

namespace {

// Coefficients of f minus a constant. Derivatives ignore the constant, and removing it keeps
// transform roundoff proportional to the variation of f rather than to its size.
std::vector<double> centered_coeffs(const ZonalField& f) {
  const double mid = 0.5 * (f.min() + f.max());
  std::vector<double> v(f.values().begin(), f.values().end());
  for (auto& x : v) x -= mid;
  return f.grid().analyze(v);
}

}  // namespace

ZonalField laplacian(const ZonalField& f) {
  auto c = centered_coeffs(f);
  for (std::size_t l = 0; l < c.size(); ++l) c[l] *= f.grid().laplace_eigenvalue(static_cast<int>(l));
  return ZonalField(f.grid_ptr(), f.grid().synthesize(c));
}

ZonalField d_dx(const ZonalField& f) {
  return ZonalField(f.grid_ptr(), f.grid().derivative(centered_coeffs(f)));
}

ZonalField grad_dot(const ZonalField& f, const ZonalField& g) {
  require_same_grid(f, g, "grad_dot");
  const auto fp = f.grid().derivative(centered_coeffs(f));
  const auto gp = g.grid().derivative(centered_coeffs(g));
  const auto x = f.grid().nodes();
  std::vector<double> v(fp.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - x[i] * x[i]) * fp[i] * gp[i];
  return ZonalField(f.grid_ptr(), std::move(v));
}

ZonalField grad_sq(const ZonalField& f) { return grad_dot(f, f); }

ZonalField random_zonal(GridPtr grid, std::uint64_t seed, int l_max, double amplitude,
                        double floor) {
  if (!(floor > 0.0)) throw InvalidArgument("random_zonal: floor must be positive");
  if (l_max < 1 || l_max >= grid->size()) {
    throw InvalidArgument("random_zonal: need 1 <= l_max < N");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(l_max) + 1, 0.0);
  for (int l = 1; l <= l_max; ++l) c[l] = normal(rng) / ((1.0 + l) * (1.0 + l));

  auto raw = ZonalField::from_coeffs(grid, c);
  const double lo = raw.min();
  const double span = raw.max() - lo;
  if (!(span > 0.0)) return ZonalField::constant(std::move(grid), floor);
  return raw.map([&](double v) { return floor + amplitude * (v - lo) / span; });
}

ZonalField random_signed_zonal(GridPtr grid, std::uint64_t seed, int l_max, double amplitude) {
  return random_zonal(std::move(grid), seed, l_max, amplitude, 1.0) + (-1.0 - 0.5 * amplitude);
}

}  // namespace cz
