#include "bgkc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "bgkc/errors.hpp"

namespace bgkc {

const char* to_string(Family f) {
  switch (f) {
    case Family::equilibrium: return "equilibrium";
    case Family::relaxation: return "relaxation";
    case Family::shock: return "shock";
    case Family::steady_shock: return "steady_shock";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  if (name == "equilibrium") return Family::equilibrium;
  if (name == "relaxation") return Family::relaxation;
  if (name == "shock") return Family::shock;
  if (name == "steady_shock") return Family::steady_shock;
  throw std::invalid_argument("unknown scenario family '" + name + "'");
}

VelocityGrid velocity_grid(const ScenarioConfig& c) { return VelocityGrid(c.velocity_half_width, c.velocity_cells); }

SpaceGrid full_grid(const ScenarioConfig& c) { return SpaceGrid(c.x_min, c.x_max, c.space_cells); }

CouplingOptions coupling_options(const ScenarioConfig& c) {
  CouplingOptions o;
  o.layer_grid = c.layer_grid;
  o.layer_solve.tol_fix = c.tol_fix;
  o.layer_solve.max_iter = c.max_iter;
  o.layer_solve.tol_class = c.tol_class;
  o.cone_tol = c.cone_tol;
  o.sub_iterate = c.sub_iterate;
  return o;
}

namespace {

// Adds `height` times the cell averages of the indicator of (a, b).
void add_interval(DiscreteDistribution& g, double a, double b, double height) {
  const auto& xi = g.grid();
  for (int j = 0; j < xi.size(); ++j) {
    const double overlap = std::min(b, xi.edge(j + 1)) - std::max(a, xi.edge(j));
    if (overlap > 0.0) g.set(j, g[j] + height * overlap / xi.width());
  }
}

}  // namespace

InitialData steady_shock_data(const VelocityGrid& xi, double u_plus, double shift) {
  const auto left = maxwellian(u_plus, xi);
  const auto right = maxwellian(-u_plus, xi);
  return [=](double x) { return x < shift ? left : right; };
}

InitialData initial_data(const ScenarioConfig& c) {
  const auto xi = velocity_grid(c);
  switch (c.family) {
    case Family::equilibrium: {
      const auto eq = maxwellian(c.u_plus, xi);
      return [=](double) { return eq; };
    }
    case Family::steady_shock:
      return steady_shock_data(xi, c.u_plus, c.shift);
    case Family::shock: {
      const auto left = maxwellian(c.u_plus - c.eta, xi);
      const auto right = maxwellian(-c.u_plus, xi);
      return [=](double x) { return x < 0.0 ? left : right; };
    }
    case Family::relaxation: {
      const double half_span = std::max(-c.x_min, c.x_max);
      const double u = c.u_plus;
      const double height = c.bump_height;
      const double width = c.bump_width;
      return [=](double x) {
        const double bump = std::cos(0.5 * std::numbers::pi * x / half_span);
        const double delta = width * bump * bump;
        if (x < 0.0) {
          auto g = maxwellian(u, xi);
          add_interval(g, u, u + delta, height);
          return g;
        }
        auto g = maxwellian(-u, xi);
        add_interval(g, -u, -u + delta, height);
        return g;
      };
    }
  }
  throw std::logic_error("unhandled family");
}

TimeStepping time_stepping(const ScenarioConfig& c) {
  const double dt0 = stable_time_step(full_grid(c), velocity_grid(c), c.cfl);
  const int steps = std::max(1, static_cast<int>(std::ceil(c.horizon / dt0 - 1e-9)));
  return {c.horizon / steps, steps};
}

FullRun solve_full_epsilon(const ScenarioConfig& c, double eps, const InitialData& f0, int snapshots) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (snapshots < 1) throw std::invalid_argument("need at least one snapshot interval");
  const auto x = full_grid(c);
  const auto xi = velocity_grid(c);
  const auto [dt, steps] = time_stepping(c);
  const auto stiffness = StiffnessProfile::coupled(x, eps);
  const InflowBoundary bc{positive_part(f0(c.x_min)), negative_part(f0(c.x_max))};

  FullRun run{eps, {}};
  KineticField field = make_field(x, xi, f0);
  run.snapshots.push_back(field);
  int next_mark = 1;
  for (int n = 1; n <= steps; ++n) {
    field = step(field, bc, stiffness, dt);
    if (static_cast<long>(n) * snapshots >= static_cast<long>(next_mark) * steps) {
      run.snapshots.push_back(field);
      ++next_mark;
    }
  }
  return run;
}

FullRun solve_full_epsilon(const ScenarioConfig& c, double eps) {
  return solve_full_epsilon(c, eps, initial_data(c));
}

CoupledState limit_initial_state(const ScenarioConfig& c, const InitialData& f0) {
  const auto full = full_grid(c);
  if (!full.interface_index()) throw std::invalid_argument("the full grid must straddle x = 0");
  const int left_cells = *full.interface_index();
  const auto xi = velocity_grid(c);
  const SpaceGrid kin_grid(c.x_min, 0.0, left_cells);
  const SpaceGrid fluid_grid(0.0, c.x_max, c.space_cells - left_cells);
  KineticField kinetic = make_field(kin_grid, xi, f0);
  std::vector<double> u(fluid_grid.size());
  for (int i = 0; i < fluid_grid.size(); ++i) u[i] = density_moment(f0(fluid_grid.center(i)));
  return make_coupled_state(std::move(kinetic), positive_part(f0(c.x_min)), FluidField(fluid_grid, std::move(u)));
}

Trajectory solve_limit(const ScenarioConfig& c, const InitialData& f0, CouplingMode mode, int log_every) {
  const auto [dt, steps] = time_stepping(c);
  return run_coupled(limit_initial_state(c, f0), mode, dt, steps, coupling_options(c), log_every);
}

LayerProfile interface_layer(const CoupledState& state, const ScenarioConfig& c) {
  const auto g = outgoing_trace(state.kinetic, Edge::right);
  const double flux = flux_moment(g);
  const double v = std::sqrt(2.0 * std::max(flux, 0.0));
  const double V = godunov_flux(v, boundary_trace(state.fluid));
  LayerSolveOptions o;
  o.tol_fix = c.tol_fix;
  o.max_iter = c.max_iter;
  o.tol_class = c.tol_class;
  return solve_layer({std::max(V, flux), g}, c.layer_grid, o);
}

LayerField extract_rescaled_layer(const KineticField& field, double eps, const LayerGrid& y) {
  const auto& x = field.space();
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (eps * y.y_max > x.x_max() * (1.0 + 1e-12)) {
    throw std::out_of_range("rescaled layer window eps * y_max = " + std::to_string(eps * y.y_max) +
                            " exceeds the domain end " + std::to_string(x.x_max()));
  }
  LayerField out(y, field.velocity());
  for (int k = 0; k < y.nodes(); ++k) out.set_slice(k, field.slice(x.locate(eps * y.node(k))));
  return out;
}

double layer_distance(const LayerField& a, const LayerField& b, int cells) {
  const int nxi = a.velocity().size();
  double sum = 0.0;
  for (int k = 0; k < cells; ++k) {
    for (int j = 0; j < nxi; ++j) sum += std::abs(a(k, j) - b(k, j));
  }
  return a.space().dy() * a.velocity().width() * sum;
}

double max_backward_mass(const LayerField& f) {
  const auto& xi = f.velocity();
  double worst = 0.0;
  for (int k = 0; k < f.space().nodes(); ++k) {
    double sum = 0.0;
    for (int j = 0; j < xi.first_positive(); ++j) sum += std::abs(f(k, j));
    worst = std::max(worst, xi.width() * sum);
  }
  return worst;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t n = 1; n < v.size(); ++n) {
    if (!(v[n] < v[n - 1])) return false;
  }
  return true;
}

namespace {

// Runs job(i) for i in [0, count) on up to `jobs` threads; rethrows the first failure.
void run_jobs(int count, int jobs, const std::function<void(int)>& job) {
  const int workers = std::clamp(jobs, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ConvergenceReport run_convergence_study(const ScenarioConfig& c, int jobs) {
  if (c.epsilons.size() < 3) throw std::invalid_argument("the eps ladder needs at least three entries");
  for (std::size_t n = 1; n < c.epsilons.size(); ++n) {
    if (!(c.epsilons[n] < c.epsilons[n - 1])) throw std::invalid_argument("the eps ladder must strictly decrease");
  }

  const auto f0 = initial_data(c);
  const auto [dt, steps] = time_stepping(c);
  const auto limit = solve_limit(c, f0, CouplingMode::limit, steps);
  const CoupledState& S = limit.final_state;
  const LayerProfile F = interface_layer(S, c);

  const double eps_max = c.epsilons.front();
  const double dy = c.layer_grid.dy();
  const int window_cells =
      std::min(c.layer_grid.cells, static_cast<int>(std::floor(c.x_max / eps_max / dy + 1e-9)));
  const LayerGrid window{window_cells * dy, window_cells};

  const int iface = S.kinetic.space().size();
  const auto& xi = S.kinetic.velocity();
  const double dx = S.kinetic.space().width();

  std::vector<EpsilonErrors> rows(c.epsilons.size());
  run_jobs(static_cast<int>(c.epsilons.size()), jobs, [&](int n) {
    const double eps = c.epsilons[n];
    const auto run = solve_full_epsilon(c, eps, f0);
    const KineticField& fe = run.snapshots.back();
    EpsilonErrors e{eps, 0, 0, 0, 0, 0, 0};

    double kin = 0.0;
    for (int i = 0; i < iface; ++i) {
      for (int j = 0; j < xi.size(); ++j) kin += std::abs(fe(i, j) - S.kinetic(i, j));
    }
    e.kinetic = dx * xi.width() * kin;

    const auto dens = fe.densities();
    double fl = 0.0;
    for (int i = 0; i < S.fluid.size(); ++i) {
      if (S.fluid.space().center(i) > 3.0 * eps) fl += std::abs(dens[iface + i] - S.fluid[i]);
    }
    e.fluid = dx * fl;

    const auto rescaled = extract_rescaled_layer(fe, eps, window);
    e.layer = layer_distance(rescaled, F.field, window.cells);
    e.swept = max_backward_mass(rescaled);
    e.trace_fluid = std::abs(dens[iface] - S.fluid[0]);
    e.trace_kinetic = l1_distance(fe.slice(iface - 1), S.kinetic.slice(iface - 1));
    rows[n] = e;
  });

  auto column = [&](double EpsilonErrors::*m) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.*m);
    return v;
  };
  return ConvergenceReport{c.name,
                           c.family,
                           window.y_max,
                           rows,
                           strictly_decreasing(column(&EpsilonErrors::kinetic)),
                           strictly_decreasing(column(&EpsilonErrors::fluid)),
                           strictly_decreasing(column(&EpsilonErrors::layer)),
                           strictly_decreasing(column(&EpsilonErrors::swept)),
                           F.classification};
}

ContractionReport stability_study(const ScenarioConfig& c, const InitialData& a, const InitialData& b) {
  const auto [dt, steps] = time_stepping(c);
  const auto options = coupling_options(c);
  CoupledState sa = limit_initial_state(c, a);
  CoupledState sb = limit_initial_state(c, b);
  sb.kinetic_left_inflow = sa.kinetic_left_inflow;
  const auto ta = run_coupled(std::move(sa), CouplingMode::limit, dt, steps, options);
  const auto tb = run_coupled(std::move(sb), CouplingMode::limit, dt, steps, options);
  return contraction_check(ta, tb, c.contraction_slack);
}

ContractionReport stability_study(const ScenarioConfig& c) {
  ScenarioConfig other = c;
  other.u_plus += c.stability_perturbation;
  return stability_study(c, initial_data(c), initial_data(other));
}

CouplingComparison compare_couplings(const ScenarioConfig& c) {
  const auto f0 = initial_data(c);
  const auto [dt, steps] = time_stepping(c);
  auto limit = solve_limit(c, f0, CouplingMode::limit, steps);
  auto naive = solve_limit(c, f0, CouplingMode::naive, steps);
  const auto& a = limit.final_state;
  const auto& b = naive.final_state;
  const double distance = l1_field_distance(a.kinetic, b.kinetic) + l1_fluid_distance(a.fluid, b.fluid);
  const double tol = c.tol_iface > 0.0 ? c.tol_iface : default_interface_tolerance(a, dt);
  return CouplingComparison{distance, tol, std::move(limit), std::move(naive)};
}

double min_difference(const KineticField& a, const KineticField& b) {
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < a.values().size(); ++n) lowest = std::min(lowest, a.values()[n] - b.values()[n]);
  return lowest;
}

LayerData layer_data(const ScenarioConfig& c) {
  const auto xi = velocity_grid(c);
  const auto& in = c.layer;
  if (in.incoming == "zero") return {in.flux, DiscreteDistribution(xi)};
  if (in.incoming == "maxwellian") return {in.flux, positive_part(maxwellian(in.value, xi))};
  if (in.incoming == "indicator") {
    DiscreteDistribution g(xi);
    add_interval(g, 0.0, in.extent, in.value);
    return {in.flux, g};
  }
  throw std::invalid_argument("unknown layer incoming kind '" + in.incoming + "'");
}

}  // namespace bgkc
