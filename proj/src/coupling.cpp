#include "bgkc/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bgkc/errors.hpp"

namespace bgkc {

const char* to_string(CouplingMode m) { return m == CouplingMode::limit ? "limit" : "naive"; }

CoupledState make_coupled_state(KineticField kinetic, std::optional<DiscreteDistribution> left_inflow,
                                FluidField fluid) {
  if (kinetic.space().x_max() != 0.0) throw GridMismatch("kinetic domain must end at x = 0");
  if (fluid.space().x_min() != 0.0) throw GridMismatch("fluid domain must start at x = 0");
  if (kinetic.time() != fluid.time()) throw std::invalid_argument("kinetic and fluid clocks differ");
  if (left_inflow && !(left_inflow->grid() == kinetic.velocity())) {
    throw GridMismatch("left inflow: velocity grids differ");
  }
  return CoupledState{std::move(kinetic), std::move(left_inflow), std::move(fluid), std::nullopt, {}};
}

double default_interface_tolerance(const CoupledState& state, double dt) {
  return 5.0 * (state.kinetic.space().width() + dt);
}

double stable_coupled_time_step(const CoupledState& state, double cfl) {
  const double dx = std::min(state.kinetic.space().width(), state.fluid.space().width());
  return cfl * dx / state.kinetic.velocity().half_width();
}

namespace {

struct InterfaceInput {
  DiscreteDistribution outgoing;
  double u_right;
};

CoupledState limit_step_with(const CoupledState& state, const InterfaceInput& in, double dt,
                             const CouplingOptions& options) {
  const double outgoing_flux = flux_moment(in.outgoing);
  const double v = std::sqrt(2.0 * std::max(outgoing_flux, 0.0));
  const double u_trace = riemann_interface_state(v, in.u_right);
  const double V = godunov_flux(v, in.u_right);
  if (V < outgoing_flux - options.cone_tol) {
    throw InterfaceInconsistency("interface data left the admissible cone: V = " + std::to_string(V) +
                                 ", outgoing flux " + std::to_string(outgoing_flux));
  }

  FluidField fluid = fluid_step_with_flux(state.fluid, V, dt);

  LayerSolveOptions solve = options.layer_solve;
  solve.warm_start = options.warm_start && state.layer ? &*state.layer : nullptr;
  LayerProfile layer = solve_layer({std::max(V, outgoing_flux), in.outgoing}, options.layer_grid, solve);
  DiscreteDistribution back = back_flux(layer);

  InflowBoundary bc{state.kinetic_left_inflow, back};
  KineticField kinetic = step(state.kinetic, bc, StiffnessProfile::uniform(state.kinetic.space(), 1.0), dt);

  const double back_flux_flux = flux_moment(back);
  InterfaceRecord rec{state.kinetic.time(),
                      in.outgoing,
                      outgoing_flux,
                      v,
                      u_trace,
                      V,
                      layer.classification,
                      back,
                      density_moment(back),
                      back_flux_flux,
                      std::abs(outgoing_flux + back_flux_flux - 0.5 * u_trace * u_trace),
                      layer.diagnostics.iterations};

  CoupledState next{std::move(kinetic), state.kinetic_left_inflow, std::move(fluid), std::move(layer),
                    state.trace};
  next.trace.push_back(std::move(rec));
  return next;
}

}  // namespace

CoupledState coupled_step(const CoupledState& state, double dt, const CouplingOptions& options) {
  const InterfaceInput start{outgoing_trace(state.kinetic, Edge::right), boundary_trace(state.fluid)};
  CoupledState next = limit_step_with(state, start, dt, options);
  if (!options.sub_iterate) return next;

  InterfaceInput current = start;
  for (int k = 0; k < options.max_sub_iterations; ++k) {
    const auto provisional = outgoing_trace(next.kinetic, Edge::right);
    DiscreteDistribution averaged(start.outgoing.grid());
    for (int j = 0; j < averaged.size(); ++j) averaged.set(j, 0.5 * (start.outgoing[j] + provisional[j]));
    InterfaceInput candidate{averaged, 0.5 * (start.u_right + boundary_trace(next.fluid))};
    const double change =
        l1_distance(candidate.outgoing, current.outgoing) + std::abs(candidate.u_right - current.u_right);
    current = std::move(candidate);
    next = limit_step_with(state, current, dt, options);
    if (change <= options.sub_tol) break;
  }
  return next;
}

CoupledState naive_coupled_step(const CoupledState& state, double dt) {
  const auto& xi = state.kinetic.velocity();
  const auto outgoing = outgoing_trace(state.kinetic, Edge::right);
  const double outgoing_flux = flux_moment(outgoing);
  const double u_right = boundary_trace(state.fluid);

  // Engquist-Osher splitting: positive semi-flux from the kinetic side,
  // negative semi-flux min(u_1, 0)^2 / 2 from the fluid side.
  const double negative_semi_flux = 0.5 * std::min(u_right, 0.0) * std::min(u_right, 0.0);
  FluidField fluid = fluid_step_with_flux(state.fluid, outgoing_flux + negative_semi_flux, dt);
  const double L = xi.half_width();
  DiscreteDistribution back = negative_part(maxwellian(std::clamp(u_right, -L, L), xi));
  InflowBoundary bc{state.kinetic_left_inflow, back};
  KineticField kinetic = step(state.kinetic, bc, StiffnessProfile::uniform(state.kinetic.space(), 1.0), dt);

  const double back_flux_flux = flux_moment(back);
  InterfaceRecord rec{state.kinetic.time(),
                      outgoing,
                      outgoing_flux,
                      std::sqrt(2.0 * std::max(outgoing_flux, 0.0)),
                      u_right,
                      outgoing_flux + negative_semi_flux,
                      std::nullopt,
                      back,
                      density_moment(back),
                      back_flux_flux,
                      std::abs(outgoing_flux + back_flux_flux - 0.5 * u_right * u_right),
                      0};

  CoupledState next{std::move(kinetic), state.kinetic_left_inflow, std::move(fluid), std::nullopt, state.trace};
  next.trace.push_back(std::move(rec));
  return next;
}

CoupledState advance(const CoupledState& state, CouplingMode mode, double dt, const CouplingOptions& options) {
  return mode == CouplingMode::limit ? coupled_step(state, dt, options) : naive_coupled_step(state, dt);
}

Trajectory run_coupled(CoupledState state, CouplingMode mode, double dt, int steps,
                       const CouplingOptions& options, int log_every) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (log_every < 1) throw std::invalid_argument("log_every must be >= 1");
  Trajectory out{{}, {}, {}, state};
  auto record = [&](const CoupledState& s) {
    out.times.push_back(s.kinetic.time());
    out.kinetic.push_back(s.kinetic);
    out.fluid.push_back(s.fluid);
  };
  record(state);
  for (int n = 1; n <= steps; ++n) {
    state = advance(state, mode, dt, options);
    if (n % log_every == 0 || n == steps) record(state);
  }
  out.final_state = std::move(state);
  return out;
}

ContractionReport contraction_check(const Trajectory& a, const Trajectory& b, double slack) {
  if (a.times.size() != b.times.size()) throw GridMismatch("contraction_check: trajectories differ in length");
  ContractionReport report{{}, {}, slack, true, 0.0};
  for (std::size_t n = 0; n < a.times.size(); ++n) {
    report.times.push_back(a.times[n]);
    report.distance.push_back(l1_field_distance(a.kinetic[n], b.kinetic[n]) +
                              l1_fluid_distance(a.fluid[n], b.fluid[n]));
  }
  const double d0 = report.distance.empty() ? 0.0 : report.distance.front();
  for (double d : report.distance) {
    if (d0 > 0.0) {
      report.worst_ratio = std::max(report.worst_ratio, d / d0);
    } else if (d > 0.0) {
      report.worst_ratio = std::numeric_limits<double>::infinity();
    }
    if (d > d0 * (1.0 + slack)) report.contracts = false;
  }
  return report;
}

}  // namespace bgkc
