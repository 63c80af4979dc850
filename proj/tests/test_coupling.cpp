#include <doctest.h>

#include <cmath>

#include "bgkc/coupling.hpp"
#include "bgkc/errors.hpp"

using namespace bgkc;

namespace {

const VelocityGrid xi(1.0, 40);
const SpaceGrid left_grid(-1.0, 0.0, 50);
const SpaceGrid right_grid(0.0, 1.0, 50);

CoupledState two_sided(double u_left, double u_right) {
  const auto eq = maxwellian(u_left, xi);
  return make_coupled_state(make_field(left_grid, xi, [&](double) { return eq; }), positive_part(eq),
                            FluidField(right_grid, u_right));
}

CouplingOptions small_layer() {
  CouplingOptions o;
  o.layer_grid = LayerGrid{10.0, 200};
  return o;
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("state construction") {
  CHECK_THROWS_AS(make_coupled_state(KineticField(SpaceGrid(-1.0, 0.5, 30), xi), std::nullopt,
                                     FluidField(right_grid, 0.0)),
                  GridMismatch);
  CHECK_THROWS_AS(make_coupled_state(KineticField(left_grid, xi), std::nullopt,
                                     FluidField(SpaceGrid(0.1, 1.0, 30), 0.0)),
                  GridMismatch);
  CHECK_THROWS_AS(make_coupled_state(KineticField(left_grid, xi, 0.5), std::nullopt, FluidField(right_grid, 0.0)),
                  std::invalid_argument);
  const auto s = two_sided(0.4, 0.4);
  CHECK(stable_coupled_time_step(s, 0.9) == doctest::Approx(0.018));
  CHECK(default_interface_tolerance(s, 0.01) == doctest::Approx(0.15));
}

TEST_CASE("stationary states of the limit coupling") {
  const double dt = 0.018;
  for (auto [ul, ur] : {std::pair{0.4, 0.4}, std::pair{0.6, -0.6}, std::pair{0.0, 0.0}}) {
    CAPTURE(ul);
    CAPTURE(ur);
    const auto s0 = two_sided(ul, ur);
    const auto run = run_coupled(s0, CouplingMode::limit, dt, 30, small_layer(), 30);
    const auto& s = run.final_state;
    CHECK(l1_field_distance(s.kinetic, s0.kinetic) < 1e-12);
    CHECK(l1_fluid_distance(s.fluid, s0.fluid) < 1e-12);
    for (const auto& rec : s.trace) {
      CHECK(rec.layer_class == LayerClass::relaxation);
      CHECK(std::abs(rec.back_flux_mass) < 1e-12);
      CHECK(rec.flux_mismatch < 1e-12);
    }
    CHECK(s.kinetic.time() == doctest::Approx(30 * dt));
    CHECK(s.fluid.time() == doctest::Approx(30 * dt));
  }
}

TEST_CASE("a shock at the interface feeds back into the kinetic side") {
  const auto s0 = two_sided(0.4, -0.6);
  const auto s1 = coupled_step(s0, 0.018, small_layer());
  REQUIRE(s1.trace.size() == 1);
  const auto& rec = s1.trace.front();
  CHECK(rec.layer_class == LayerClass::shock);
  CHECK(rec.V == doctest::Approx(0.18));
  CHECK(rec.u_trace == doctest::Approx(-0.6));
  CHECK(rec.back_flux_mass < -0.1);
  CHECK(rec.V >= rec.outgoing_flux);
  // Only the layer's own flux defect separates the two sides.
  CHECK(rec.flux_mismatch <= s1.layer->diagnostics.flux_residual + 1e-12);
  // The fluid boundary cell is unchanged: flux in equals flux out.
  CHECK(s1.fluid[0] == doctest::Approx(-0.6));
}

TEST_CASE("interface records along a transient run") {
  const auto s0 = two_sided(0.4, -0.6);
  const double dt = 0.018;
  auto options = small_layer();
  const auto run = run_coupled(s0, CouplingMode::limit, dt, 40, options, 10);
  CHECK(run.times.size() == 5);
  const double tol = default_interface_tolerance(s0, dt);
  for (const auto& rec : run.final_state.trace) {
    CHECK(rec.V >= rec.outgoing_flux - options.cone_tol);
    CHECK(rec.flux_mismatch <= tol);
    CHECK(bln_admissible(rec.u_trace, rec.v, 1e-12));
  }
  CHECK(run.final_state.kinetic.admissible(1e-12));
}

TEST_CASE("warm start and sub-iteration do not change the answer") {
  const auto s0 = two_sided(0.4, -0.6);
  const double dt = 0.018;
  auto cold = small_layer();
  cold.warm_start = false;
  cold.layer_solve.tol_fix = 1e-12;
  auto warm = cold;
  warm.warm_start = true;
  const auto a = run_coupled(s0, CouplingMode::limit, dt, 20, cold, 20);
  const auto b = run_coupled(s0, CouplingMode::limit, dt, 20, warm, 20);
  CHECK(l1_field_distance(a.final_state.kinetic, b.final_state.kinetic) < 1e-9);

  auto sub = small_layer();
  sub.sub_iterate = true;
  const auto eq = run_coupled(two_sided(0.4, 0.4), CouplingMode::limit, dt, 5, sub, 5);
  CHECK(l1_field_distance(eq.final_state.kinetic, two_sided(0.4, 0.4).kinetic) < 1e-12);
}

TEST_CASE("naive coupling") {
  const double dt = 0.018;
  SUBCASE("equilibrium is unchanged") {
    const auto s0 = two_sided(0.4, 0.4);
    const auto run = run_coupled(s0, CouplingMode::naive, dt, 20, {}, 20);
    CHECK(l1_field_distance(run.final_state.kinetic, s0.kinetic) < 1e-12);
    CHECK(l1_fluid_distance(run.final_state.fluid, s0.fluid) < 1e-12);
  }
  SUBCASE("vacuum stays empty") {
    const auto s0 = two_sided(0.0, 0.0);
    const auto s1 = naive_coupled_step(s0, dt);
    CHECK(s1.trace.front().V == 0.0);
    CHECK(l1_fluid_distance(s1.fluid, s0.fluid) == 0.0);
    CHECK_FALSE(s1.trace.front().layer_class);
  }
  SUBCASE("boundary flux splits by sign") {
    const auto s1 = naive_coupled_step(two_sided(0.4, -0.6), dt);
    CHECK(s1.trace.front().V == doctest::Approx(0.08 + 0.18));
    CHECK(density_moment(s1.trace.front().back_flux) == doctest::Approx(-0.6));
  }
}

TEST_CASE("contraction report") {
  const double dt = 0.018;
  const auto a = run_coupled(two_sided(0.4, -0.6), CouplingMode::limit, dt, 20, small_layer(), 5);
  const auto self = contraction_check(a, a);
  CHECK(self.contracts);
  CHECK(self.worst_ratio == 0.0);
  // Same boundary inflow for both, so only the initial data differ.
  auto b0 = two_sided(0.5, -0.6);
  b0.kinetic_left_inflow = a.final_state.kinetic_left_inflow;
  const auto b = run_coupled(b0, CouplingMode::limit, dt, 20, small_layer(), 5);
  const auto r = contraction_check(a, b, 0.05);
  CHECK(r.distance.front() > 0.0);
  CHECK(r.contracts);
  CHECK(r.worst_ratio <= 1.05);
  const auto c = run_coupled(two_sided(0.5, -0.6), CouplingMode::limit, dt, 20, small_layer(), 10);
  CHECK_THROWS_AS(contraction_check(a, c), GridMismatch);
}

}
