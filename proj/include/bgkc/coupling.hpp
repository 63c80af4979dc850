#pragma once

#include <optional>
#include <vector>

#include "bgkc/fluid_domain.hpp"
#include "bgkc/kinetic_domain.hpp"
#include "bgkc/milne_layer.hpp"

namespace bgkc {

enum class CouplingMode { limit, naive };

const char* to_string(CouplingMode m);

/// Interface data used by one step, sampled at the start of the step.
struct InterfaceRecord {
  double t;
  DiscreteDistribution outgoing;  // kinetic f(0-, xi > 0)
  double outgoing_flux;
  double v;        // sqrt(2 * outgoing_flux)
  double u_trace;  // fluid state at 0+
  double V;        // flux through x = 0 seen by the fluid
  std::optional<LayerClass> layer_class;
  DiscreteDistribution back_flux;  // inflow fed to the kinetic side, xi < 0
  double back_flux_mass;
  double back_flux_flux;
  /// |int xi f(0-) - u(0+)^2/2| with f(0-) = outgoing + back flux.
  double flux_mismatch;
  int layer_iterations;
};

/// Kinetic field on (x_min, 0), fluid field on (0, x_max), the last layer
/// solved at the interface and the interface log.
struct CoupledState {
  KineticField kinetic;
  /// xi > 0 inflow at x_min; the right side is set by the coupling each step.
  std::optional<DiscreteDistribution> kinetic_left_inflow;
  FluidField fluid;
  std::optional<LayerProfile> layer;
  std::vector<InterfaceRecord> trace;
};

/// Checks the two grids meet at x = 0 and the clocks agree.
CoupledState make_coupled_state(KineticField kinetic, std::optional<DiscreteDistribution> left_inflow,
                                FluidField fluid);

struct CouplingOptions {
  LayerGrid layer_grid;
  LayerSolveOptions layer_solve;  // warm_start is managed by the stepper
  bool warm_start = true;
  /// Slack on V >= int xi g before the step is declared inconsistent.
  double cone_tol = 1e-10;
  /// Re-run the step with interface data averaged between t^n and the
  /// provisional t^{n+1} values until they settle. Off by default.
  bool sub_iterate = false;
  int max_sub_iterations = 50;
  double sub_tol = 1e-10;
};

/// Default interface tolerance 5 (dx + dt) of the first-order scheme.
double default_interface_tolerance(const CoupledState& state, double dt);

/// Largest common stable step, cfl * min(dx) / L.
double stable_coupled_time_step(const CoupledState& state, double cfl);

/// Limit coupling: outgoing kinetic trace g, boundary value v = sqrt(2 int xi g),
/// fluid update with the Riemann flux (v | u_1), layer solve for (V, g) with
/// V = u(0+)^2/2, kinetic update with the layer back-flux as inflow.
CoupledState coupled_step(const CoupledState& state, double dt, const CouplingOptions& options = {});

/// Naive coupling: Engquist-Osher boundary flux int xi g + min(u_1, 0)^2/2,
/// kinetic inflow = M(u_1) on xi < 0.
CoupledState naive_coupled_step(const CoupledState& state, double dt);

CoupledState advance(const CoupledState& state, CouplingMode mode, double dt,
                     const CouplingOptions& options = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<KineticField> kinetic;
  std::vector<FluidField> fluid;
  CoupledState final_state;
};

/// Runs `steps` steps, keeping a snapshot every `log_every` steps (and at both ends).
Trajectory run_coupled(CoupledState state, CouplingMode mode, double dt, int steps,
                       const CouplingOptions& options = {}, int log_every = 1);

struct ContractionReport {
  std::vector<double> times;
  std::vector<double> distance;  // ||f1 - f2||_1 + ||u1 - u2||_1
  double slack;
  bool contracts;
  double worst_ratio;  // max_t D(t) / D(0), 0 when D(0) = 0 and D stays 0
};

ContractionReport contraction_check(const Trajectory& a, const Trajectory& b, double slack = 0.05);

}  // namespace bgkc
