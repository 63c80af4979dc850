#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bgkc/velocity_space.hpp"

namespace bgkc {

/// Uniform cells on [x_min, x_max]. When the interval contains x = 0 in its
/// interior, 0 must fall on a cell edge.
class SpaceGrid {
 public:
  SpaceGrid(double x_min, double x_max, int cells);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int size() const { return cells_; }
  double width() const { return width_; }
  double edge(int i) const { return x_min_ + (x_max_ - x_min_) * i / cells_; }
  double center(int i) const { return x_min_ + (x_max_ - x_min_) * (i + 0.5) / cells_; }
  double length() const { return x_max_ - x_min_; }

  /// Index of the first cell to the right of x = 0, if 0 is an interior edge.
  std::optional<int> interface_index() const { return interface_; }

  /// Cell containing x (x exactly on an edge maps to the cell on its right).
  int locate(double x) const;

  bool operator==(const SpaceGrid& o) const {
    return x_min_ == o.x_min_ && x_max_ == o.x_max_ && cells_ == o.cells_;
  }

 private:
  double x_min_;
  double x_max_;
  int cells_;
  double width_;
  std::optional<int> interface_;
};

/// f(x_i, xi_j) cell values, row-major by space cell.
class KineticField {
 public:
  KineticField(const SpaceGrid& x, const VelocityGrid& xi, double t = 0.0);

  const SpaceGrid& space() const { return x_; }
  const VelocityGrid& velocity() const { return xi_; }
  double time() const { return t_; }
  void set_time(double t) { t_ = t; }

  double operator()(int i, int j) const { return values_[index(i, j)]; }
  double& operator()(int i, int j) { return values_[index(i, j)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  DiscreteDistribution slice(int i) const;
  void set_slice(int i, const DiscreteDistribution& g);
  std::vector<double> densities() const;

  bool admissible(double slack = 0.0) const;
  /// dx * dxi * sum f.
  double total_mass() const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * xi_.size() + static_cast<std::size_t>(j);
  }

  SpaceGrid x_;
  VelocityGrid xi_;
  double t_;
  std::vector<double> values_;
};

/// Fills a field from f0(x, j), evaluated at cell centers.
KineticField make_field(const SpaceGrid& x, const VelocityGrid& xi,
                        const std::function<DiscreteDistribution(double x)>& f0);

/// Per-cell relaxation rate.
class StiffnessProfile {
 public:
  explicit StiffnessProfile(std::vector<double> alpha);
  static StiffnessProfile uniform(const SpaceGrid& grid, double alpha);
  /// 1 on cells left of x = 0, 1/eps on cells right of it.
  static StiffnessProfile coupled(const SpaceGrid& grid, double eps);

  std::span<const double> values() const { return alpha_; }
  double operator[](int i) const { return alpha_[i]; }
  int size() const { return static_cast<int>(alpha_.size()); }

 private:
  std::vector<double> alpha_;
};

/// Incoming data: xi > 0 at the left edge, xi < 0 at the right edge. An absent
/// side means zero inflow.
struct InflowBoundary {
  std::optional<DiscreteDistribution> left;
  std::optional<DiscreteDistribution> right;
};

enum class Edge { left, right };

/// Largest stable step, cfl * dx / L.
double stable_time_step(const SpaceGrid& x, const VelocityGrid& xi, double cfl);

/// One first-order step: upwind transport of every velocity slice, then exact
/// relaxation with the per-cell rate.
KineticField step(const KineticField& field, const InflowBoundary& bc,
                  const StiffnessProfile& stiffness, double dt);

/// Boundary-adjacent values for outgoing velocities; the other half is zero.
DiscreteDistribution outgoing_trace(const KineticField& field, Edge edge);

/// Net rate at which mass enters through both edges under upwind transport.
double boundary_inflow_rate(const KineticField& field, const InflowBoundary& bc);

/// Total outgoing flux of |f1 - f2| minus incoming flux of |bc1 - bc2|, as
/// used by the discrete L1 contraction estimate.
struct BoundaryDifferenceFlux {
  double outgoing;
  double incoming;
};
BoundaryDifferenceFlux boundary_difference_flux(const KineticField& f1, const InflowBoundary& bc1,
                                                const KineticField& f2, const InflowBoundary& bc2);

/// dx * dxi * sum |f1 - f2|.
double l1_field_distance(const KineticField& a, const KineticField& b);

/// Cell densities recorded at the start of every step, for the Duhamel oracle.
struct DensityHistory {
  std::vector<double> times;
  std::vector<std::vector<double>> densities;
};

/// Runs `steps` steps with fixed data, optionally recording densities.
KineticField evolve(KineticField field, const InflowBoundary& bc, const StiffnessProfile& stiffness,
                    double dt, int steps, DensityHistory* history = nullptr);

enum class DuhamelTerms { full, initial_only };

/// Outgoing trace at the right edge of a kinetic domain with unit relaxation
/// rate, computed by integrating along characteristics:
///   f(t, x_R, xi) = f0(x_R - t xi, xi) e^{-t} + int_0^t e^{s-t} M(u(s, x_R + (s-t) xi), xi) ds.
/// The density history is interpolated linearly in x and in s; the kernel
/// e^{s-t} is integrated exactly between recorded times. Only xi > 0 cells are filled.
DiscreteDistribution duhamel_trace_oracle(const std::function<double(double x, int j)>& f0,
                                          const SpaceGrid& x, const VelocityGrid& xi,
                                          const DensityHistory& history, double t,
                                          DuhamelTerms terms = DuhamelTerms::full);

/// Same, with f0 looked up cell-wise in an initial field.
DiscreteDistribution duhamel_trace_oracle(const KineticField& f0, const DensityHistory& history,
                                          double t, DuhamelTerms terms = DuhamelTerms::full);

}  // namespace bgkc
