#include "bgkc/fluid_domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bgkc/errors.hpp"
#include "bgkc/kernels.hpp"

namespace bgkc {

FluidField::FluidField(const SpaceGrid& x, std::vector<double> u, double t)
    : x_(x), u_(std::move(u)), t_(t) {
  if (static_cast<int>(u_.size()) != x_.size()) throw GridMismatch("fluid values do not match the grid");
}

FluidField::FluidField(const SpaceGrid& x, double uniform, double t)
    : FluidField(x, std::vector<double>(x.size(), uniform), t) {}

double godunov_flux(double left, double right) { return kernels::godunov_flux(left, right); }

bool bln_admissible(double u, double v, double tol) {
  return std::abs(u - v) <= tol || u <= -v + tol;
}

bool bln_admissible_by_sampling(double u, double v, int samples) {
  if (u == v) return true;
  const double s = sign(u - v);
  for (int n = 0; n <= samples; ++n) {
    const double k = u + (v - u) * n / samples;
    if ((0.5 * u * u - 0.5 * k * k) * s > 0.0) return false;
  }
  return true;
}

BlnCertificate build_bln_certificate(double u, const DiscreteDistribution& g) {
  const auto& xi = g.grid();
  const auto outgoing = positive_part(g);
  const double v = std::sqrt(2.0 * std::max(flux_moment(outgoing), 0.0));
  constexpr double tol = 1e-10;
  if (!bln_admissible(u, v, tol)) {
    throw DomainError("no kinetic certificate: trace " + std::to_string(u) +
                      " is not admissible against boundary value " + std::to_string(v));
  }

  // h = -1 on (-sqrt(u^2 - v^2), 0), averaged exactly over the cut cell.
  DiscreteDistribution h(xi);
  const double reach = std::abs(u - v) <= tol ? 0.0 : std::sqrt(std::max(u * u - v * v, 0.0));
  for (int j = 0; j < xi.first_positive(); ++j) {
    const double lo = std::max(xi.edge(j), -reach);
    const double hi = xi.edge(j + 1);
    if (hi > lo) h.set(j, -(hi - lo) / xi.width());
  }

  // m(xi_{j+1/2}) = int_{-L}^{xi_{j+1/2}} zeta (M(u) - (g + h)) dzeta, with the
  // same per-cell flux integrals as flux_moment so that m(L) matches the flux balance.
  const auto eq = cell_flux_integrals(maxwellian(u, xi));
  const auto out = cell_flux_integrals(outgoing);
  std::vector<double> h_flux(xi.size(), 0.0);
  for (int j = 0; j < xi.first_positive(); ++j) {
    // exact int zeta h over the covered part of the cell
    const double lo = std::max(xi.edge(j), -reach);
    const double hi = xi.edge(j + 1);
    if (hi > lo) h_flux[j] = -0.5 * (hi * hi - lo * lo);
  }
  std::vector<double> m(xi.size() + 1, 0.0);
  for (int j = 0; j < xi.size(); ++j) m[j + 1] = m[j] + eq[j] - out[j] - h_flux[j];
  return BlnCertificate{u, v, std::move(h), std::move(m)};
}

namespace {

void check_cfl(const FluidField& field, double dt, double max_speed) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (dt * max_speed > field.space().width() * (1.0 + 1e-12)) {
    throw CflViolation("fluid step: dt = " + std::to_string(dt) + " exceeds dx / max|u| = " +
                       std::to_string(field.space().width() / max_speed));
  }
}

double max_speed(const FluidField& field, double extra) {
  double s = std::abs(extra);
  for (double u : field.values()) s = std::max(s, std::abs(u));
  return s;
}

}  // namespace

FluidField fluid_step_with_flux(const FluidField& field, double boundary_flux, double dt) {
  check_cfl(field, dt, max_speed(field, std::sqrt(2.0 * std::max(boundary_flux, 0.0))));
  std::vector<double> next(field.size());
  kernels::parallel::godunov_update(field.values(), boundary_flux, dt / field.space().width(), next);
  return FluidField(field.space(), std::move(next), field.time() + dt);
}

FluidField fluid_step(const FluidField& field, double v_boundary, double dt) {
  if (v_boundary < 0.0) throw DomainError("boundary value must be nonnegative");
  check_cfl(field, dt, max_speed(field, v_boundary));
  return fluid_step_with_flux(field, godunov_flux(v_boundary, field[0]), dt);
}

double boundary_trace(const FluidField& field) { return field[0]; }

double riemann_interface_state(double v, double u_right) {
  return (v > u_right && v + u_right <= 0.0) ? u_right : v;
}

double l1_fluid_distance(const FluidField& a, const FluidField& b) {
  if (!(a.space() == b.space())) throw GridMismatch("l1_fluid_distance: grids differ");
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return a.space().width() * sum;
}

}  // namespace bgkc
