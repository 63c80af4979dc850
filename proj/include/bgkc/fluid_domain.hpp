#pragma once

#include <span>
#include <vector>

#include "bgkc/kinetic_domain.hpp"
#include "bgkc/velocity_space.hpp"

namespace bgkc {

/// Burgers cell averages on (0, x_max).
class FluidField {
 public:
  FluidField(const SpaceGrid& x, std::vector<double> u, double t = 0.0);
  FluidField(const SpaceGrid& x, double uniform, double t = 0.0);

  const SpaceGrid& space() const { return x_; }
  double time() const { return t_; }
  void set_time(double t) { t_ = t; }
  std::span<const double> values() const { return u_; }
  std::span<double> values() { return u_; }
  double operator[](int i) const { return u_[i]; }
  int size() const { return static_cast<int>(u_.size()); }

 private:
  SpaceGrid x_;
  std::vector<double> u_;
  double t_;
};

/// Exact-Riemann flux for u^2/2.
double godunov_flux(double left, double right);

/// u = v or u <= -v, the closed form of the boundary entropy condition for
/// Burgers with a nonnegative boundary value. `tol` widens both branches.
bool bln_admissible(double u, double v, double tol = 0.0);

/// Dense check of [u^2/2 - k^2/2] Sign(u - v) <= 0 for k between u and v.
/// Slow; kept as the definition-level cross check of bln_admissible.
bool bln_admissible_by_sampling(double u, double v, int samples = 10001);

/// Witness (h, m) for boundary trace u against outgoing kinetic data g:
/// xi (M(u) - (g + h)) = m', m >= 0, m(-L) = m(L) = 0.
struct BlnCertificate {
  double u;
  double v;
  DiscreteDistribution h;  // -1 <= h <= 0, supported on xi < 0
  std::vector<double> m;   // at the n_xi + 1 velocity edges
};

/// Throws DomainError when (u, v = sqrt(2 int xi g)) is not admissible.
BlnCertificate build_bln_certificate(double u, const DiscreteDistribution& g);

/// One Godunov step with the boundary value imposed through the Riemann
/// problem (v | u_1) at x = 0 and a zero-gradient right edge.
FluidField fluid_step(const FluidField& field, double v_boundary, double dt);

/// Same update with an explicit flux through x = 0.
FluidField fluid_step_with_flux(const FluidField& field, double boundary_flux, double dt);

/// First-cell average.
double boundary_trace(const FluidField& field);

/// State at x = 0+ of the Riemann problem (v | u_right): u_right when the
/// wave fan leaves it attached to the boundary (u_right < v, u_right <= -v),
/// v otherwise.
double riemann_interface_state(double v, double u_right);

/// sum |a - b| dx.
double l1_fluid_distance(const FluidField& a, const FluidField& b);

}  // namespace bgkc
