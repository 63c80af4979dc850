#pragma once

// Inner loops of the three solvers. `parallel` holds the fused OpenMP kernels
// the library runs; `reference` holds plain serial versions written directly
// in terms of the velocity-space operations. Tests check the two agree and
// bench/ times them against each other.

#include <span>

#include "bgkc/velocity_space.hpp"

namespace bgkc::kernels {

struct KineticStepArgs {
  const VelocityGrid& xi;
  int nx;
  double dx;
  double dt;
  std::span<const double> f;         // nx * n_xi, row = space cell
  std::span<const double> left_in;   // n_xi, read on xi > 0 only
  std::span<const double> right_in;  // n_xi, read on xi < 0 only
  std::span<const double> alpha;     // nx
};

struct LayerSweepArgs {
  const VelocityGrid& xi;
  int ny;                            // y cells; ny + 1 nodes
  double dy;
  std::span<const double> incoming;  // n_xi, read on xi > 0 only
  std::span<const double> prev;      // (ny + 1) * n_xi
  std::span<const double> tail;      // n_xi, values entering at y_max, read on xi < 0 only
};

/// Exponentially weighted trapezoid weights for
///   int_0^h (1/c) m(z) exp(-(h - z)/c) dz,  m linear between m0 (z=0) and m1 (z=h),
/// as {w0, w1, decay} with decay = exp(-h/c); the integral is w0 m0 + w1 m1.
struct ExpWeights {
  double w0;
  double w1;
  double decay;
};
ExpWeights exp_trapezoid_weights(double h, double c);

namespace parallel {

/// Upwind transport of every xi slice followed by exact relaxation per cell.
void kinetic_step(const KineticStepArgs& args, std::span<double> out);

/// One layer sweep: Duhamel integrals of M(prev) along each xi line.
void layer_sweep(const LayerSweepArgs& args, std::span<double> out);

/// Godunov update for Burgers with a given flux through the left edge and a
/// zero-gradient right edge.
void godunov_update(std::span<const double> u, double left_flux, double dt_over_dx,
                    std::span<double> out);

}  // namespace parallel

namespace reference {

void kinetic_step(const KineticStepArgs& args, std::span<double> out);
void layer_sweep(const LayerSweepArgs& args, std::span<double> out);
void godunov_update(std::span<const double> u, double left_flux, double dt_over_dx,
                    std::span<double> out);

}  // namespace reference

double godunov_flux(double left, double right);

}  // namespace bgkc::kernels
