#pragma once

#include <optional>
#include <span>
#include <vector>

namespace bgkc {

/// Uniform cell grid on the velocity interval [-L, L].
///
/// The cell count is even so that xi = 0 is always a cell edge; the sign of xi
/// is therefore constant on every cell.
class VelocityGrid {
 public:
  VelocityGrid(double half_width, int cells);

  double half_width() const { return half_width_; }
  int size() const { return cells_; }
  double width() const { return width_; }
  // Written so that edge(size()/2) is exactly 0.
  double edge(int j) const { return half_width_ * (2.0 * j - cells_) / cells_; }
  double center(int j) const { return half_width_ * (2.0 * j + 1.0 - cells_) / cells_; }
  /// Index of the first cell with xi > 0.
  int first_positive() const { return cells_ / 2; }

  bool operator==(const VelocityGrid& other) const {
    return half_width_ == other.half_width_ && cells_ == other.cells_;
  }

 private:
  double half_width_;
  int cells_;
  double width_;
};

/// Cell averages g_j of a velocity distribution.
///
/// Distributions produced by maxwellian() remember their density so that the
/// flux moment can integrate the partially filled cell exactly. Any mutation
/// drops that tag.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(const VelocityGrid& grid);
  DiscreteDistribution(const VelocityGrid& grid, std::vector<double> values);

  const VelocityGrid& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const double> values() const { return values_; }
  double operator[](int j) const { return values_[j]; }

  void set(int j, double value) {
    equilibrium_density_.reset();
    values_[j] = value;
  }
  std::span<double> mutable_values() {
    equilibrium_density_.reset();
    return values_;
  }

  /// Density of the equilibrium this distribution was built as, if any.
  std::optional<double> equilibrium_density() const { return equilibrium_density_; }

  /// 0 <= Sign(xi_j) g_j <= 1 (+ slack) on every cell.
  bool admissible(double slack = 0.0) const;

 private:
  friend DiscreteDistribution maxwellian(double u, const VelocityGrid& grid);

  VelocityGrid grid_;
  std::vector<double> values_;
  std::optional<double> equilibrium_density_;
};

/// Exact cell average of M(u, xi) = Sign(u) 1{0 < xi Sign(u) < |u|} on cell j.
double maxwellian_cell(double u, const VelocityGrid& grid, int j);

/// Exact integral of xi M(u, xi) over cell j.
double maxwellian_cell_flux(double u, const VelocityGrid& grid, int j);

/// Equilibrium with density u. Throws DomainError if |u| > L.
DiscreteDistribution maxwellian(double u, const VelocityGrid& grid);

/// dxi * sum_j g_j.
double density_moment(const DiscreteDistribution& g);

/// Integral of xi g: midpoint rule, which is exact for piecewise constant
/// cell data, and exact partial-cell integration for tagged equilibria.
double flux_moment(const DiscreteDistribution& g);

/// Per-cell contributions to flux_moment().
std::vector<double> cell_flux_integrals(const DiscreteDistribution& g);

/// Exact solution of dg/dt = alpha (M g - g) over dt; the density is invariant
/// so the equation is linear in g.
DiscreteDistribution relax_toward_maxwellian(const DiscreteDistribution& g, double dt, double alpha);

/// h at the n+1 cell edges, h(xi_{j+1/2}) = dxi * sum_{k<=j} (M g - g)_k.
std::vector<double> entropy_defect_cumulative(const DiscreteDistribution& g);

double l1_distance(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Copy with the xi < 0 (resp. xi > 0) cells zeroed. Equilibria with
/// nonnegative (resp. nonpositive) density keep their tag.
DiscreteDistribution positive_part(const DiscreteDistribution& g);
DiscreteDistribution negative_part(const DiscreteDistribution& g);

inline double sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace bgkc
