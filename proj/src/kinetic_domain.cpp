#include "bgkc/kinetic_domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bgkc/errors.hpp"
#include "bgkc/kernels.hpp"

namespace bgkc {

SpaceGrid::SpaceGrid(double x_min, double x_max, int cells)
    : x_min_(x_min), x_max_(x_max), cells_(cells), width_((x_max - x_min) / cells) {
  if (!(x_max > x_min) || cells < 1) {
    throw std::invalid_argument("space grid needs x_max > x_min and at least one cell");
  }
  if (x_min < 0.0 && x_max > 0.0) {
    const double k = -x_min * cells / (x_max - x_min);
    const double nearest = std::round(k);
    if (std::abs(k - nearest) > 1e-9) {
      throw std::invalid_argument("x = 0 must be a cell edge of [" + std::to_string(x_min) + ", " +
                                  std::to_string(x_max) + "] with " + std::to_string(cells) +
                                  " cells");
    }
    interface_ = static_cast<int>(nearest);
  }
}

int SpaceGrid::locate(double x) const {
  const int i = static_cast<int>(std::floor((x - x_min_) / width_));
  return std::clamp(i, 0, cells_ - 1);
}

KineticField::KineticField(const SpaceGrid& x, const VelocityGrid& xi, double t)
    : x_(x), xi_(xi), t_(t), values_(static_cast<std::size_t>(x.size()) * xi.size(), 0.0) {}

DiscreteDistribution KineticField::slice(int i) const {
  auto first = values_.begin() + static_cast<std::ptrdiff_t>(index(i, 0));
  return DiscreteDistribution(xi_, std::vector<double>(first, first + xi_.size()));
}

void KineticField::set_slice(int i, const DiscreteDistribution& g) {
  if (!(g.grid() == xi_)) throw GridMismatch("set_slice: velocity grids differ");
  std::copy(g.values().begin(), g.values().end(),
            values_.begin() + static_cast<std::ptrdiff_t>(index(i, 0)));
}

std::vector<double> KineticField::densities() const {
  std::vector<double> u(x_.size());
  for (int i = 0; i < x_.size(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < xi_.size(); ++j) sum += (*this)(i, j);
    u[i] = xi_.width() * sum;
  }
  return u;
}

bool KineticField::admissible(double slack) const {
  for (int i = 0; i < x_.size(); ++i) {
    for (int j = 0; j < xi_.size(); ++j) {
      const double s = sign(xi_.center(j)) * (*this)(i, j);
      if (s < -slack || s > 1.0 + slack) return false;
    }
  }
  return true;
}

double KineticField::total_mass() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return x_.width() * xi_.width() * sum;
}

KineticField make_field(const SpaceGrid& x, const VelocityGrid& xi,
                        const std::function<DiscreteDistribution(double x)>& f0) {
  KineticField field(x, xi);
  for (int i = 0; i < x.size(); ++i) field.set_slice(i, f0(x.center(i)));
  return field;
}

StiffnessProfile::StiffnessProfile(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  for (double a : alpha_) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("relaxation rates must be >= 0");
  }
}

StiffnessProfile StiffnessProfile::uniform(const SpaceGrid& grid, double alpha) {
  return StiffnessProfile(std::vector<double>(grid.size(), alpha));
}

StiffnessProfile StiffnessProfile::coupled(const SpaceGrid& grid, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  std::vector<double> alpha(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const bool fluid_side = grid.interface_index() ? i >= *grid.interface_index() : grid.center(i) > 0.0;
    alpha[i] = fluid_side ? 1.0 / eps : 1.0;
  }
  return StiffnessProfile(std::move(alpha));
}

double stable_time_step(const SpaceGrid& x, const VelocityGrid& xi, double cfl) {
  return cfl * x.width() / xi.half_width();
}

namespace {

std::vector<double> inflow_values(const std::optional<DiscreteDistribution>& side,
                                  const VelocityGrid& xi, const char* name) {
  if (!side) return std::vector<double>(xi.size(), 0.0);
  if (!(side->grid() == xi)) throw GridMismatch(std::string(name) + " inflow: velocity grids differ");
  if (!side->admissible(1e-12)) {
    throw DomainError(std::string(name) + " inflow is not admissible (0 <= Sign(xi) g <= 1)");
  }
  return {side->values().begin(), side->values().end()};
}

}  // namespace

KineticField step(const KineticField& field, const InflowBoundary& bc,
                  const StiffnessProfile& stiffness, double dt) {
  const auto& x = field.space();
  const auto& xi = field.velocity();
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (dt > x.width() / xi.half_width() * (1.0 + 1e-12)) {
    throw CflViolation("kinetic step: dt = " + std::to_string(dt) + " exceeds dx / L = " +
                       std::to_string(x.width() / xi.half_width()));
  }
  if (stiffness.size() != x.size()) throw GridMismatch("stiffness profile size differs from space grid");

  const auto left = inflow_values(bc.left, xi, "left");
  const auto right = inflow_values(bc.right, xi, "right");
  KineticField next(x, xi, field.time() + dt);
  kernels::parallel::kinetic_step({xi, x.size(), x.width(), dt, field.values(), left, right,
                                   stiffness.values()},
                                  next.values());
  return next;
}

DiscreteDistribution outgoing_trace(const KineticField& field, Edge edge) {
  if (edge == Edge::right) return positive_part(field.slice(field.space().size() - 1));
  return negative_part(field.slice(0));
}

double boundary_inflow_rate(const KineticField& field, const InflowBoundary& bc) {
  const auto& xi = field.velocity();
  const auto left = inflow_values(bc.left, xi, "left");
  const auto right = inflow_values(bc.right, xi, "right");
  const int last = field.space().size() - 1;
  double rate = 0.0;
  for (int j = 0; j < xi.size(); ++j) {
    const double speed = xi.center(j);
    if (speed > 0.0) {
      rate += speed * (left[j] - field(last, j));
    } else {
      rate += -speed * (right[j] - field(0, j));
    }
  }
  return xi.width() * rate;
}

BoundaryDifferenceFlux boundary_difference_flux(const KineticField& f1, const InflowBoundary& bc1,
                                                const KineticField& f2, const InflowBoundary& bc2) {
  const auto& xi = f1.velocity();
  const auto l1 = inflow_values(bc1.left, xi, "left");
  const auto r1 = inflow_values(bc1.right, xi, "right");
  const auto l2 = inflow_values(bc2.left, xi, "left");
  const auto r2 = inflow_values(bc2.right, xi, "right");
  const int last = f1.space().size() - 1;
  BoundaryDifferenceFlux out{0.0, 0.0};
  for (int j = 0; j < xi.size(); ++j) {
    const double speed = std::abs(xi.center(j));
    if (xi.center(j) > 0.0) {
      out.outgoing += speed * std::abs(f1(last, j) - f2(last, j));
      out.incoming += speed * std::abs(l1[j] - l2[j]);
    } else {
      out.outgoing += speed * std::abs(f1(0, j) - f2(0, j));
      out.incoming += speed * std::abs(r1[j] - r2[j]);
    }
  }
  out.outgoing *= xi.width();
  out.incoming *= xi.width();
  return out;
}

double l1_field_distance(const KineticField& a, const KineticField& b) {
  if (!(a.space() == b.space()) || !(a.velocity() == b.velocity())) {
    throw GridMismatch("l1_field_distance: grids differ");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) sum += std::abs(a.values()[k] - b.values()[k]);
  return a.space().width() * a.velocity().width() * sum;
}

KineticField evolve(KineticField field, const InflowBoundary& bc, const StiffnessProfile& stiffness,
                    double dt, int steps, DensityHistory* history) {
  for (int n = 0; n < steps; ++n) {
    if (history) {
      history->times.push_back(field.time());
      history->densities.push_back(field.densities());
    }
    field = step(field, bc, stiffness, dt);
  }
  if (history) {
    history->times.push_back(field.time());
    history->densities.push_back(field.densities());
  }
  return field;
}

namespace {

double interpolate_in_space(const SpaceGrid& x, const std::vector<double>& u, double pos) {
  const double first = x.center(0);
  const double last = x.center(x.size() - 1);
  if (pos <= first) return u.front();
  if (pos >= last) return u.back();
  const double s = (pos - first) / x.width();
  const int i = std::min(static_cast<int>(std::floor(s)), x.size() - 2);
  const double theta = s - i;
  return (1.0 - theta) * u[i] + theta * u[i + 1];
}

}  // namespace

DiscreteDistribution duhamel_trace_oracle(const std::function<double(double x, int j)>& f0,
                                          const SpaceGrid& x, const VelocityGrid& xi,
                                          const DensityHistory& history, double t,
                                          DuhamelTerms terms) {
  if (history.times.empty() || t > history.times.back() + 1e-12 * std::max(1.0, t)) {
    throw std::out_of_range("duhamel_trace_oracle: t exceeds the stored history");
  }
  if (t < 0.0) throw std::out_of_range("duhamel_trace_oracle: t must be >= 0");

  // Quadrature nodes in s: recorded times below t, then t itself.
  std::vector<double> s_nodes;
  std::vector<std::vector<double>> u_nodes;
  for (std::size_t n = 0; n < history.times.size() && history.times[n] < t; ++n) {
    s_nodes.push_back(history.times[n]);
    u_nodes.push_back(history.densities[n]);
  }
  {
    std::size_t n = 0;
    while (n + 1 < history.times.size() && history.times[n + 1] < t) ++n;
    std::vector<double> at_t = history.densities[n];
    if (n + 1 < history.times.size() && history.times[n] < t) {
      const double theta = (t - history.times[n]) / (history.times[n + 1] - history.times[n]);
      for (std::size_t i = 0; i < at_t.size(); ++i) {
        at_t[i] = (1.0 - theta) * history.densities[n][i] + theta * history.densities[n + 1][i];
      }
    }
    s_nodes.push_back(t);
    u_nodes.push_back(std::move(at_t));
  }

  const double x_right = x.x_max();
  const double L = xi.half_width();
  DiscreteDistribution out(xi);
  for (int j = xi.first_positive(); j < xi.size(); ++j) {
    const double speed = xi.center(j);
    double value = f0(x_right - t * speed, j) * std::exp(-t);
    if (terms == DuhamelTerms::full) {
      auto equilibrium = [&](std::size_t n) {
        const double u = interpolate_in_space(x, u_nodes[n], x_right + (s_nodes[n] - t) * speed);
        return maxwellian_cell(std::clamp(u, -L, L), xi, j);
      };
      // e^{s-t} integrated exactly against M interpolated linearly in s.
      for (std::size_t n = 0; n + 1 < s_nodes.size(); ++n) {
        const double h = s_nodes[n + 1] - s_nodes[n];
        if (!(h > 0.0)) continue;
        const auto w = kernels::exp_trapezoid_weights(h, 1.0);
        value += std::exp(s_nodes[n + 1] - t) * (w.w0 * equilibrium(n) + w.w1 * equilibrium(n + 1));
      }
    }
    out.set(j, value);
  }
  return out;
}

DiscreteDistribution duhamel_trace_oracle(const KineticField& f0, const DensityHistory& history,
                                          double t, DuhamelTerms terms) {
  const auto& x = f0.space();
  auto lookup = [&](double pos, int j) { return f0(x.locate(pos), j); };
  return duhamel_trace_oracle(lookup, x, f0.velocity(), history, t, terms);
}

}  // namespace bgkc
