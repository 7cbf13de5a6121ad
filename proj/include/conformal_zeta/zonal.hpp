#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace cz {

// Rotationally symmetric functions on the unit sphere S^n, written in x = cos(theta).
//
// The zonal part of the sphere volume form is omega_{n-1} (1-x^2)^{(n-2)/2} dx, so the grid
// uses Gauss-Jacobi nodes with alpha = beta = (n-2)/2 and weights summing to omega_n. Fields
// are stored by nodal values; the spectral side is the orthonormal Gegenbauer basis
// C_l^{(n-1)/2}(x), normalized with respect to the sphere measure. Degree-l basis functions
// are eigenfunctions of the (positive) Laplacian with eigenvalue l(l+n-1).
class ZonalGrid {
 public:
  ZonalGrid(int n, int N);

  int dimension() const { return n_; }
  int size() const { return N_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  double laplace_eigenvalue(int l) const { return static_cast<double>(l) * (l + n_ - 1); }

  // Orthonormal basis function of degree l at node i, and its x-derivative.
  double basis(int i, int l) const { return basis_[static_cast<std::size_t>(i) * N_ + l]; }
  double basis_dx(int i, int l) const { return dbasis_[static_cast<std::size_t>(i) * N_ + l]; }

  std::vector<double> analyze(std::span<const double> values) const;
  std::vector<double> synthesize(std::span<const double> coeffs) const;
  // d/dx of the interpolant at the nodes.
  std::vector<double> derivative(std::span<const double> coeffs) const;
  // Interpolant at an arbitrary x in [-1, 1].
  double evaluate(std::span<const double> coeffs, double x) const;

  bool same_as(const ZonalGrid& other) const { return n_ == other.n_ && N_ == other.N_; }

 private:
  int n_;
  int N_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> basis_;
  std::vector<double> dbasis_;
};

using GridPtr = std::shared_ptr<const ZonalGrid>;

/// Grids are cached by (n, N); repeated calls return the same instance.
GridPtr make_grid(int n, int N = 256);

class ZonalField {
 public:
  ZonalField(GridPtr grid, std::vector<double> values);

  static ZonalField constant(GridPtr grid, double value);
  static ZonalField from_function(GridPtr grid, const std::function<double(double)>& f_of_x);
  static ZonalField from_coeffs(GridPtr grid, std::span<const double> coeffs);

  const ZonalGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  std::vector<double> coeffs() const { return grid_->analyze(values_); }
  double evaluate_at(double x) const;

  double min() const;
  double max() const;

  ZonalField map(const std::function<double(double)>& f) const;

  ZonalField& operator+=(const ZonalField& o);
  ZonalField& operator-=(const ZonalField& o);
  ZonalField& operator*=(const ZonalField& o);
  ZonalField& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

ZonalField operator+(ZonalField a, const ZonalField& b);
ZonalField operator-(ZonalField a, const ZonalField& b);
ZonalField operator*(ZonalField a, const ZonalField& b);
ZonalField operator*(ZonalField a, double s);
ZonalField operator*(double s, ZonalField a);
ZonalField operator+(ZonalField a, double s);

void require_same_grid(const ZonalField& a, const ZonalField& b, const char* where);

double integrate(const ZonalField& f);
/// \int f g dV
double inner(const ZonalField& f, const ZonalField& g);
double lp_norm(const ZonalField& f, double q);

ZonalField laplacian(const ZonalField& f);
/// f'(x) in the zonal variable x = cos(theta).
ZonalField d_dx(const ZonalField& f);
/// |df|^2 = (1 - x^2) f'(x)^2.
ZonalField grad_sq(const ZonalField& f);
/// <df, dg> = (1 - x^2) f'(x) g'(x).
ZonalField grad_dot(const ZonalField& f, const ZonalField& g);

/// floor + amplitude * r, where r is a random degree <= l_max field rescaled onto [0, 1].
/// Degree-l coefficients are drawn as N(0,1)/(1+l)^2, so the result is smooth as well as
/// band-limited. Deterministic per seed.
ZonalField random_zonal(GridPtr grid, std::uint64_t seed, int l_max, double amplitude,
                        double floor);
/// Same construction shifted to span [-amplitude/2, amplitude/2]; used for conformal exponents.
ZonalField random_signed_zonal(GridPtr grid, std::uint64_t seed, int l_max, double amplitude);

}  // namespace cz
