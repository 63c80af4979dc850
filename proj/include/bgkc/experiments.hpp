#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bgkc/coupling.hpp"
#include "bgkc/kinetic_domain.hpp"
#include "bgkc/milne_layer.hpp"

namespace bgkc {

enum class Family { equilibrium, relaxation, shock, steady_shock };

const char* to_string(Family f);
Family family_from_string(const std::string& name);

/// Incoming data for a standalone layer solve.
struct LayerInput {
  double flux = 0.18;
  std::string incoming = "zero";  // zero | maxwellian | indicator
  double value = 0.0;             // maxwellian: density; indicator: height
  double extent = 0.0;            // indicator: support (0, extent)
};

struct ScenarioConfig {
  std::string name = "scenario";
  Family family = Family::steady_shock;
  double u_plus = 0.6;
  double eta = 0.2;          // shock family: support of f0 on x < 0 is (0, u_plus - eta]
  double bump_height = 0.5;  // relaxation family: height of the excess over M(+-u_plus)
  double bump_width = 0.2;   // relaxation family: largest width of that excess
  double shift = 0.0;        // steady shock placed at x = shift

  double velocity_half_width = 1.0;
  int velocity_cells = 80;
  double x_min = -2.0;
  double x_max = 2.0;
  int space_cells = 400;
  double cfl = 0.9;
  double horizon = 1.0;
  std::vector<double> epsilons{0.2, 0.1, 0.05};

  LayerGrid layer_grid;
  double tol_fix = 1e-8;
  int max_iter = 10000;
  double tol_class = 1e-8;
  double tol_iface = 0.0;  // 0: 5 (dx + dt)
  double cone_tol = 1e-10;
  double contraction_slack = 0.05;
  double stability_perturbation = 0.05;
  CouplingMode coupling = CouplingMode::limit;
  bool sub_iterate = false;

  LayerInput layer;
};

VelocityGrid velocity_grid(const ScenarioConfig& c);
SpaceGrid full_grid(const ScenarioConfig& c);
CouplingOptions coupling_options(const ScenarioConfig& c);

using InitialData = std::function<DiscreteDistribution(double x)>;

/// f0 of the configured family on the whole line.
InitialData initial_data(const ScenarioConfig& c);

/// Steady-shock data: M(u+) on x < shift, M(-u+) on x > shift.
InitialData steady_shock_data(const VelocityGrid& xi, double u_plus, double shift = 0.0);

/// Time step used by every solver of a scenario: cfl * dx / L shrunk so that
/// an integer number of steps reaches the horizon.
struct TimeStepping {
  double dt;
  int steps;
};
TimeStepping time_stepping(const ScenarioConfig& c);

/// Full-line BGK run with rate 1 on x < 0 and 1/eps on x > 0. Inflow at both
/// ends is the initial data at the end points. Keeps `snapshots` + 1 evenly
/// spaced fields including the initial and the final one.
struct FullRun {
  double eps;
  std::vector<KineticField> snapshots;
  KineticField final_field() const { return snapshots.back(); }
};
FullRun solve_full_epsilon(const ScenarioConfig& c, double eps, const InitialData& f0, int snapshots = 1);
FullRun solve_full_epsilon(const ScenarioConfig& c, double eps);

/// Limit system on the matched grids: kinetic on (x_min, 0), fluid on (0, x_max).
CoupledState limit_initial_state(const ScenarioConfig& c, const InitialData& f0);
Trajectory solve_limit(const ScenarioConfig& c, const InitialData& f0, CouplingMode mode, int log_every = 1);

/// Layer solved from the interface data of a coupled state, as a fresh step would.
LayerProfile interface_layer(const CoupledState& state, const ScenarioConfig& c);

/// F_eps(y, xi) = f_eps(eps y, xi) by cell lookup on the layer grid `y`.
/// Throws std::out_of_range when eps * y_max exceeds the right end of the field.
LayerField extract_rescaled_layer(const KineticField& field, double eps, const LayerGrid& y);

/// dy * sum over y cells of || a(y) - b(y) ||_1 on the first `cells` cells.
double layer_distance(const LayerField& a, const LayerField& b, int cells);

/// max over nodes of int_{xi<0} |F|.
double max_backward_mass(const LayerField& f);

struct EpsilonErrors {
  double eps;
  double kinetic;  // ||f_eps - f||_1 on x < 0
  double fluid;    // ||u_eps - u||_1 on x > 3 eps
  double layer;    // rescaled layer vs layer of the limit interface data
  double swept;    // max_backward_mass of the rescaled layer
  double trace_fluid;   // |u_eps(0+) - u(0+)|
  double trace_kinetic; // ||f_eps(0-) - f(0-)||_1
};

struct ConvergenceReport {
  std::string scenario;
  Family family;
  double comparison_window;  // y range of the layer comparison
  std::vector<EpsilonErrors> rows;
  bool kinetic_decreasing;
  bool fluid_decreasing;
  bool layer_decreasing;
  bool swept_decreasing;
  LayerClass limit_layer_class;
};

bool strictly_decreasing(const std::vector<double>& v);

/// Solves the limit system once and the full system for every eps (`jobs`
/// workers), then compares at the horizon.
ConvergenceReport run_convergence_study(const ScenarioConfig& c, int jobs = 1);

/// Contraction of the limit system for two initial data. Both runs take the
/// left inflow of `a`, so the boundary data agree.
ContractionReport stability_study(const ScenarioConfig& c, const InitialData& a, const InitialData& b);
/// Pair (configured data, same family with u_plus + stability_perturbation).
ContractionReport stability_study(const ScenarioConfig& c);

struct CouplingComparison {
  double distance;   // ||f_limit - f_naive||_1 + ||u_limit - u_naive||_1 at the horizon
  double tolerance;  // interface tolerance of the run
  Trajectory limit;
  Trajectory naive;
};
CouplingComparison compare_couplings(const ScenarioConfig& c);

/// Smallest entry of a - b.
double min_difference(const KineticField& a, const KineticField& b);

/// Layer data of a standalone solve.
LayerData layer_data(const ScenarioConfig& c);

}  // namespace bgkc
