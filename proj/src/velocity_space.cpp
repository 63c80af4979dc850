#include "bgkc/velocity_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bgkc/errors.hpp"

namespace bgkc {

VelocityGrid::VelocityGrid(double half_width, int cells)
    : half_width_(half_width), cells_(cells), width_(2.0 * half_width / cells) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("velocity half-width must be positive and finite");
  }
  if (cells < 2 || cells % 2 != 0) {
    throw std::invalid_argument("velocity cell count must be even and >= 2, got " +
                                std::to_string(cells));
  }
}

DiscreteDistribution::DiscreteDistribution(const VelocityGrid& grid)
    : grid_(grid), values_(grid.size(), 0.0) {}

DiscreteDistribution::DiscreteDistribution(const VelocityGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid.size()) {
    throw GridMismatch("distribution has " + std::to_string(values_.size()) +
                       " values for a grid of " + std::to_string(grid.size()) + " cells");
  }
}

bool DiscreteDistribution::admissible(double slack) const {
  for (int j = 0; j < size(); ++j) {
    const double s = sign(grid_.center(j)) * values_[j];
    if (s < -slack || s > 1.0 + slack) return false;
  }
  return true;
}

namespace {

// Overlap of the cell with the support (min(0,u), max(0,u)) of M(u, .).
struct Overlap {
  double lo;
  double hi;
  bool full;
};

Overlap support_overlap(double u, const VelocityGrid& grid, int j) {
  const double a = grid.edge(j);
  const double b = grid.edge(j + 1);
  const double lo = std::min(0.0, u);
  const double hi = std::max(0.0, u);
  return {std::max(a, lo), std::min(b, hi), a >= lo && b <= hi};
}

double checked_density(double u, const VelocityGrid& grid) {
  const double L = grid.half_width();
  if (!std::isfinite(u) || std::abs(u) > L * (1.0 + 1e-12)) {
    throw DomainError("equilibrium density " + std::to_string(u) + " outside [-L, L] with L = " +
                      std::to_string(L));
  }
  return std::clamp(u, -L, L);
}

}  // namespace

double maxwellian_cell(double u, const VelocityGrid& grid, int j) {
  if (u == 0.0) return 0.0;
  const auto ov = support_overlap(u, grid, j);
  if (ov.full) return sign(u);
  if (ov.hi <= ov.lo) return 0.0;
  return sign(u) * (ov.hi - ov.lo) / grid.width();
}

double maxwellian_cell_flux(double u, const VelocityGrid& grid, int j) {
  if (u == 0.0) return 0.0;
  const auto ov = support_overlap(u, grid, j);
  if (ov.full) return sign(u) * grid.width() * grid.center(j);
  if (ov.hi <= ov.lo) return 0.0;
  return sign(u) * 0.5 * (ov.hi * ov.hi - ov.lo * ov.lo);
}

DiscreteDistribution maxwellian(double u, const VelocityGrid& grid) {
  u = checked_density(u, grid);
  std::vector<double> values(grid.size());
  for (int j = 0; j < grid.size(); ++j) values[j] = maxwellian_cell(u, grid, j);
  DiscreteDistribution out(grid, std::move(values));
  out.equilibrium_density_ = u;
  return out;
}

double density_moment(const DiscreteDistribution& g) {
  double sum = 0.0;
  for (double v : g.values()) sum += v;
  return g.grid().width() * sum;
}

std::vector<double> cell_flux_integrals(const DiscreteDistribution& g) {
  const auto& grid = g.grid();
  std::vector<double> out(grid.size());
  if (auto u = g.equilibrium_density()) {
    for (int j = 0; j < grid.size(); ++j) out[j] = maxwellian_cell_flux(*u, grid, j);
  } else {
    for (int j = 0; j < grid.size(); ++j) out[j] = grid.width() * grid.center(j) * g[j];
  }
  return out;
}

double flux_moment(const DiscreteDistribution& g) {
  double sum = 0.0;
  for (double c : cell_flux_integrals(g)) sum += c;
  return sum;
}

DiscreteDistribution relax_toward_maxwellian(const DiscreteDistribution& g, double dt, double alpha) {
  if (dt < 0.0 || alpha < 0.0) {
    throw std::invalid_argument("relaxation needs dt >= 0 and alpha >= 0");
  }
  if (dt == 0.0 || alpha == 0.0) return g;
  auto eq = maxwellian(density_moment(g), g.grid());
  const double keep = std::exp(-alpha * dt);
  if (keep == 0.0) return eq;
  const double gain = -std::expm1(-alpha * dt);
  std::vector<double> values(g.size());
  for (int j = 0; j < g.size(); ++j) values[j] = eq[j] * gain + g[j] * keep;
  return DiscreteDistribution(g.grid(), std::move(values));
}

std::vector<double> entropy_defect_cumulative(const DiscreteDistribution& g) {
  const auto eq = maxwellian(density_moment(g), g.grid());
  std::vector<double> h(g.size() + 1, 0.0);
  for (int j = 0; j < g.size(); ++j) h[j + 1] = h[j] + g.grid().width() * (eq[j] - g[j]);
  return h;
}

double l1_distance(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("l1_distance: velocity grids differ");
  double sum = 0.0;
  for (int j = 0; j < a.size(); ++j) sum += std::abs(a[j] - b[j]);
  return a.grid().width() * sum;
}

DiscreteDistribution positive_part(const DiscreteDistribution& g) {
  if (auto u = g.equilibrium_density(); u && *u >= 0.0) return g;
  std::vector<double> values(g.values().begin(), g.values().end());
  std::fill(values.begin(), values.begin() + g.grid().first_positive(), 0.0);
  return DiscreteDistribution(g.grid(), std::move(values));
}

DiscreteDistribution negative_part(const DiscreteDistribution& g) {
  if (auto u = g.equilibrium_density(); u && *u <= 0.0) return g;
  std::vector<double> values(g.values().begin(), g.values().end());
  std::fill(values.begin() + g.grid().first_positive(), values.end(), 0.0);
  return DiscreteDistribution(g.grid(), std::move(values));
}

}  // namespace bgkc
