#include <doctest.h>

#include <cmath>

#include "bgkc/errors.hpp"
#include "bgkc/milne_layer.hpp"
#include "support.hpp"

using namespace bgkc;

namespace {

DiscreteDistribution indicator(const VelocityGrid& xi, double height, double extent) {
  DiscreteDistribution g(xi);
  for (int j = 0; j < xi.size(); ++j) g.set(j, height * test::interval_average(xi, j, 0.0, extent));
  return g;
}

double sup_slice_distance(const LayerField& a, const LayerField& b) {
  double worst = 0.0;
  for (int k = 0; k < a.space().nodes(); ++k) worst = std::max(worst, l1_distance(a.slice(k), b.slice(k)));
  return worst;
}

}  // namespace

TEST_SUITE("milne_layer") {

TEST_CASE("classification") {
  const VelocityGrid xi(1.0, 80);
  CHECK(classify({0.18, DiscreteDistribution(xi)}) == LayerClass::shock);
  CHECK(classify({0.0, DiscreteDistribution(xi)}) == LayerClass::relaxation);
  const auto g = indicator(xi, 0.5, 0.8);
  CHECK(classify({flux_moment(g), g}) == LayerClass::relaxation);
  CHECK(classify({flux_moment(g) + 1e-3, g}) == LayerClass::shock);
  CHECK_THROWS_AS(classify({flux_moment(g) - 1e-3, g}), DomainError);
  CHECK_THROWS_AS(classify({0.6, DiscreteDistribution(xi)}), DomainError);
  CHECK_THROWS_AS(classify({0.1, indicator(xi, 1.5, 0.2)}), DomainError);
}

TEST_CASE("start profiles") {
  const VelocityGrid xi(1.0, 80);
  const LayerGrid y{10.0, 50};
  const LayerData shock{0.18, DiscreteDistribution(xi)};
  const auto s = start_profile(shock, LayerClass::shock, y);
  for (int k = 0; k < y.nodes(); ++k) CHECK(l1_distance(s.slice(k), maxwellian(-0.6, xi)) < 1e-15);
  const LayerData none{0.0, DiscreteDistribution(xi)};
  const auto r = start_profile(none, LayerClass::relaxation, y);
  for (double v : r.values()) CHECK(v == 0.0);
}

TEST_CASE("single sweeps") {
  const VelocityGrid xi(1.0, 40);
  const LayerGrid y{5.0, 100};

  SUBCASE("equilibrium data is a fixed point") {
    const auto eq = maxwellian(0.55, xi);
    LayerField f(y, xi);
    for (int k = 0; k < y.nodes(); ++k) f.set_slice(k, eq);
    const auto next = layer_iterate({flux_moment(eq), eq}, f);
    CHECK(sup_slice_distance(f, next) < 1e-14);
  }

  SUBCASE("the shock start profile is stationary") {
    const LayerData data{0.18, DiscreteDistribution(xi)};
    const auto f1 = start_profile(data, LayerClass::shock, y);
    CHECK(sup_slice_distance(f1, layer_iterate(data, f1)) < 1e-14);
  }

  SUBCASE("first sweep from zero attenuates the incoming data") {
    const auto g = indicator(xi, 0.5, 1.0);
    const auto f = layer_iterate({flux_moment(g), g}, LayerField(y, xi));
    for (int k = 0; k < y.nodes(); k += 10) {
      for (int j = 0; j < xi.size(); ++j) {
        const double c = xi.center(j);
        const double expected = c > 0.0 ? 0.5 * std::exp(-y.node(k) / c) : 0.0;
        CHECK(f(k, j) == doctest::Approx(expected).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("shock layer from zero incoming data") {
  const VelocityGrid xi(1.0, 80);
  const auto p = solve_layer({0.18, DiscreteDistribution(xi)}, LayerGrid{});
  CHECK(p.classification == LayerClass::shock);
  CHECK(p.u_infinity == doctest::Approx(0.6));
  CHECK(l1_distance(p.far_field, maxwellian(-0.6, xi)) < 1e-15);
  CHECK(p.diagnostics.flux_residual < 1e-12);
  CHECK(l1_distance(back_flux(p), negative_part(maxwellian(-0.6, xi))) < 1e-12);
  CHECK(confinement_norm(p) < 1e-12);
}

TEST_CASE("relaxation layer") {
  const VelocityGrid xi(1.0, 80);
  const auto g = indicator(xi, 0.5, 0.8);
  const LayerData data{flux_moment(g), g};
  const auto p = solve_layer(data, LayerGrid{}, {1e-10, 10000, 1e-8, nullptr});
  CHECK(p.classification == LayerClass::relaxation);
  CHECK(p.u_infinity == doctest::Approx(std::sqrt(0.32)));
  CHECK(p.diagnostics.monotonicity_violation <= 1e-12);
  CHECK(p.diagnostics.flux_residual < 1e-3);
  CHECK(p.diagnostics.back_flux_residual <= 1e-8);
  CHECK(l1_distance(back_flux(p), DiscreteDistribution(xi)) <= 1e-8);
  const int last = p.field.space().cells;
  CHECK(l1_distance(p.field.slice(last), p.far_field) <= 1e-3);

  // Positive velocities at y = 0 carry the incoming data.
  for (int j = xi.first_positive(); j < xi.size(); ++j) CHECK(p.field(0, j) == g[j]);
}

TEST_CASE("flux defect is a discretization error") {
  const VelocityGrid xi(1.0, 80);
  const auto g = indicator(xi, 0.5, 0.8);
  const LayerData data{flux_moment(g), g};
  const auto coarse = solve_layer(data, LayerGrid{20.0, 200}, {1e-11, 10000, 1e-8, nullptr});
  const auto fine = solve_layer(data, LayerGrid{20.0, 800}, {1e-11, 10000, 1e-8, nullptr});
  CHECK(fine.diagnostics.flux_residual < 0.5 * coarse.diagnostics.flux_residual);
}

TEST_CASE("far-field error shrinks and confinement settles as the box grows") {
  const VelocityGrid xi(1.0, 80);
  const auto g = indicator(xi, 0.5, 1.0);
  const LayerData data{flux_moment(g), g};
  std::vector<double> far;
  std::vector<double> confinement;
  for (double y_max : {10.0, 20.0, 40.0}) {
    CAPTURE(y_max);
    const auto p = solve_layer(data, LayerGrid{y_max, static_cast<int>(20 * y_max)}, {1e-10, 10000, 1e-8, nullptr});
    far.push_back(l1_distance(p.field.slice(p.field.space().cells), p.far_field));
    confinement.push_back(confinement_norm(p));
  }
  CHECK(far[1] < far[0]);
  CHECK(far[2] < far[1]);
  CHECK(std::abs(confinement[2] - confinement[1]) < 0.05 * confinement[2]);
}

TEST_CASE("warm start reproduces the cold solution") {
  const VelocityGrid xi(1.0, 80);
  const LayerGrid y{};
  const LayerSolveOptions cold{1e-11, 10000, 1e-8, nullptr};

  SUBCASE("relaxation, increasing incoming data") {
    const auto g1 = indicator(xi, 0.4, 0.8);
    const auto g2 = indicator(xi, 0.5, 0.8);
    const auto p1 = solve_layer({flux_moment(g1), g1}, y, cold);
    const auto reference = solve_layer({flux_moment(g2), g2}, y, cold);
    auto warm = cold;
    warm.warm_start = &p1;
    const auto p2 = solve_layer({flux_moment(g2), g2}, y, warm);
    CHECK(p2.diagnostics.warm_started);
    CHECK(p2.diagnostics.iterations <= reference.diagnostics.iterations);
    CHECK(sup_slice_distance(p2.field, reference.field) < 1e-8);
  }

  SUBCASE("unsafe warm starts are ignored") {
    const auto g1 = indicator(xi, 0.5, 0.8);
    const auto g2 = indicator(xi, 0.4, 0.8);
    const auto p1 = solve_layer({flux_moment(g1), g1}, y, cold);
    auto warm = cold;
    warm.warm_start = &p1;
    const auto p2 = solve_layer({flux_moment(g2), g2}, y, warm);
    CHECK_FALSE(p2.diagnostics.warm_started);
  }

  SUBCASE("shock, decreasing flux") {
    const DiscreteDistribution zero(xi);
    const auto p1 = solve_layer({0.2, zero}, y, cold);
    auto warm = cold;
    warm.warm_start = &p1;
    const auto p2 = solve_layer({0.18, zero}, y, warm);
    CHECK(p2.diagnostics.warm_started);
    CHECK(sup_slice_distance(p2.field, solve_layer({0.18, zero}, y, cold).field) < 1e-8);
  }
}

TEST_CASE("different iteration tolerances agree") {
  const VelocityGrid xi(1.0, 40);
  const auto g = indicator(xi, 0.3, 0.9);
  const LayerData data{flux_moment(g) + 0.05, g};
  const LayerGrid y{10.0, 200};
  const auto a = solve_layer(data, y, {1e-8, 10000, 1e-8, nullptr});
  const auto b = solve_layer(data, y, {1e-11, 10000, 1e-8, nullptr});
  CHECK(a.classification == LayerClass::shock);
  CHECK(sup_slice_distance(a.field, b.field) < 10 * 1e-8 * 20);
  CHECK(a.diagnostics.monotonicity_violation <= 1e-12);
  CHECK(b.diagnostics.flux_residual < 1e-3);
}

TEST_CASE("iteration cap") {
  const VelocityGrid xi(1.0, 40);
  const auto g = indicator(xi, 0.5, 0.8);
  CHECK_THROWS_AS(solve_layer({flux_moment(g), g}, LayerGrid{}, {1e-14, 3, 1e-8, nullptr}), NonConvergence);
}

}
