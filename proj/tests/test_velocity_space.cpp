#include <doctest.h>

#include <cmath>
#include <random>

#include "bgkc/errors.hpp"
#include "bgkc/velocity_space.hpp"
#include "support.hpp"

using namespace bgkc;

TEST_SUITE("velocity_space") {

TEST_CASE("grid puts xi = 0 on an edge") {
  const VelocityGrid xi(1.0, 80);
  CHECK(xi.edge(xi.first_positive()) == 0.0);
  CHECK(xi.width() == doctest::Approx(0.025));
  for (int j = 0; j < xi.size(); ++j) CHECK(xi.edge(j + 1) > xi.edge(j));
  CHECK_THROWS_AS(VelocityGrid(1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(VelocityGrid(0.0, 8), std::invalid_argument);
}

TEST_CASE("maxwellian examples") {
  const VelocityGrid xi(1.0, 80);
  const auto zero = maxwellian(0.0, xi);
  for (double v : zero.values()) CHECK(v == 0.0);

  const auto half = maxwellian(0.5, xi);
  for (int j = 0; j < xi.size(); ++j) {
    CHECK(half[j] == doctest::Approx(test::interval_average(xi, j, 0.0, 0.5)).epsilon(1e-15));
  }
  CHECK(density_moment(half) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(flux_moment(half) == doctest::Approx(0.125).epsilon(1e-14));

  const auto neg = maxwellian(-0.3, xi);
  CHECK(density_moment(neg) == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(flux_moment(neg) == doctest::Approx(0.045).epsilon(1e-14));

  CHECK_THROWS_AS(maxwellian(1.2, xi), DomainError);
}

TEST_CASE("maxwellian with a partially filled cell") {
  // 0.3125 cuts the cell [0.3, 0.325] in half.
  const VelocityGrid xi(1.0, 80);
  const auto m = maxwellian(0.3125, xi);
  CHECK(m[xi.first_positive() + 12] == doctest::Approx(0.5));
  CHECK(density_moment(m) == doctest::Approx(0.3125).epsilon(1e-14));
  CHECK(std::abs(flux_moment(m) - 0.5 * 0.3125 * 0.3125) < 1e-14);
  // Dropping the tag falls back to the midpoint rule on the cut cell.
  DiscreteDistribution raw(xi, {m.values().begin(), m.values().end()});
  CHECK(std::abs(flux_moment(raw) - 0.5 * 0.3125 * 0.3125) > 1e-6);
}

TEST_CASE("moment examples") {
  const VelocityGrid xi(1.0, 80);
  CHECK(density_moment(maxwellian(0.7, xi)) == doctest::Approx(0.7));
  CHECK(density_moment(DiscreteDistribution(xi)) == 0.0);
  DiscreteDistribution s(xi);
  for (int j = 0; j < xi.size(); ++j) s.set(j, sign(xi.center(j)));
  CHECK(std::abs(density_moment(s)) < 1e-14);

  CHECK(flux_moment(maxwellian(0.6, xi)) == doctest::Approx(0.18));
  CHECK(flux_moment(maxwellian(-0.6, xi)) == doctest::Approx(0.18));
  DiscreteDistribution upper(xi);
  for (int j = xi.first_positive(); j < xi.size(); ++j) upper.set(j, 1.0);
  CHECK(flux_moment(upper) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("moments of equilibria hold for any density") {
  const VelocityGrid xi(1.0, 64);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pick(-1.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const double u = pick(rng);
    const auto m = maxwellian(u, xi);
    CHECK(std::abs(density_moment(m) - u) < 1e-12);
    CHECK(std::abs(flux_moment(m) - 0.5 * u * u) < 1e-12);
    CHECK(m.admissible());
  }
}

TEST_CASE("relaxation: closed form on 0.5 * 1(0, 0.8)") {
  const VelocityGrid xi(1.0, 80);
  DiscreteDistribution g(xi);
  for (int j = 0; j < xi.size(); ++j) g.set(j, 0.5 * test::interval_average(xi, j, 0.0, 0.8));
  CHECK(density_moment(g) == doctest::Approx(0.4));

  const auto r = relax_toward_maxwellian(g, 1.0, 1.0);
  const double keep = std::exp(-1.0);
  for (int j = 0; j < xi.size(); ++j) {
    const double expected = 0.5 * test::interval_average(xi, j, 0.0, 0.8) * keep +
                            (1.0 - keep) * test::interval_average(xi, j, 0.0, 0.4);
    CHECK(r[j] == doctest::Approx(expected).epsilon(1e-14));
  }

  const auto same = relax_toward_maxwellian(g, 0.0, 1.0);
  for (int j = 0; j < xi.size(); ++j) CHECK(same[j] == g[j]);

  const auto limit = relax_toward_maxwellian(g, 1e6, 1.0);
  CHECK(l1_distance(limit, maxwellian(0.4, xi)) < 1e-14);
}

TEST_CASE("relaxation keeps density and admissibility") {
  const VelocityGrid xi(1.0, 40);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> rate(0.0, 50.0);
  for (int n = 0; n < 300; ++n) {
    const auto g = test::random_admissible(xi, rng);
    const auto r = relax_toward_maxwellian(g, 0.1, rate(rng));
    CHECK(std::abs(density_moment(r) - density_moment(g)) < 1e-14);
    CHECK(r.admissible(1e-14));
  }
}

TEST_CASE("entropy defect examples") {
  const VelocityGrid xi(1.0, 80);
  for (double h : entropy_defect_cumulative(maxwellian(0.35, xi))) CHECK(std::abs(h) < 1e-14);

  DiscreteDistribution g(xi);
  for (int j = 0; j < xi.size(); ++j) g.set(j, 0.5 * test::interval_average(xi, j, 0.0, 0.8));
  const auto h = entropy_defect_cumulative(g);
  // Oracle: h(xi) = int_{-L}^{xi} (M(0.4) - g), piecewise linear here.
  auto oracle = [](double e) {
    if (e <= 0.0) return 0.0;
    if (e <= 0.4) return 0.5 * e;
    if (e <= 0.8) return 0.2 - 0.5 * (e - 0.4);
    return 0.0;
  };
  int peak = 0;
  for (int k = 0; k <= xi.size(); ++k) {
    CHECK(h[k] == doctest::Approx(oracle(xi.edge(k))).epsilon(1e-12));
    CHECK(h[k] >= -1e-14);
    if (h[k] > h[peak]) peak = k;
  }
  CHECK(xi.edge(peak) == doctest::Approx(0.4));
  CHECK(h[xi.first_positive()] == 0.0);

  DiscreteDistribution shifted(xi);
  for (int j = 0; j < xi.size(); ++j) shifted.set(j, test::interval_average(xi, j, 0.2, 0.8));
  const auto hs = entropy_defect_cumulative(shifted);
  for (int k = 0; k <= xi.size(); ++k) {
    CHECK(hs[k] >= -1e-14);
    if (xi.edge(k) <= 0.0 || xi.edge(k) >= 0.8) CHECK(std::abs(hs[k]) < 1e-14);
  }
}

TEST_CASE("entropy defect is nonnegative and vanishes at both ends") {
  const VelocityGrid xi(1.0, 40);
  std::mt19937 rng(3);
  for (int n = 0; n < 500; ++n) {
    const auto g = test::random_admissible(xi, rng);
    const auto h = entropy_defect_cumulative(g);
    CHECK(std::abs(h.front()) <= 1e-10);
    CHECK(std::abs(h.back()) <= 1e-10);
    for (double v : h) CHECK(v >= -1e-10);
  }
}

TEST_CASE("convex entropy dissipates under relaxation") {
  // sum xi (M g - g) dxi <= 0, with equality only at equilibrium.
  const VelocityGrid xi(1.0, 40);
  std::mt19937 rng(5);
  for (int n = 0; n < 300; ++n) {
    const auto g = test::random_admissible(xi, rng);
    const auto m = maxwellian(density_moment(g), xi);
    double production = 0.0;
    const auto mf = cell_flux_integrals(m);
    const auto gf = cell_flux_integrals(g);
    for (int j = 0; j < xi.size(); ++j) production += mf[j] - gf[j];
    CHECK(production <= 1e-10);
    if (l1_distance(g, m) > 1e-6) CHECK(production < 0.0);
  }
}

TEST_CASE("relaxation is order preserving in L1") {
  // sum over {g1 >= g2} of (M g1 - M g2) - (g1 - g2) <= 0.
  const VelocityGrid xi(1.0, 40);
  std::mt19937 rng(9);
  for (int n = 0; n < 300; ++n) {
    const auto g1 = test::random_admissible(xi, rng);
    const auto g2 = test::random_admissible(xi, rng);
    const auto m1 = maxwellian(density_moment(g1), xi);
    const auto m2 = maxwellian(density_moment(g2), xi);
    double sum = 0.0;
    for (int j = 0; j < xi.size(); ++j) {
      if (g1[j] >= g2[j]) sum += (m1[j] - m2[j]) - (g1[j] - g2[j]);
    }
    CHECK(xi.width() * sum <= 1e-10);
  }
}

TEST_CASE("l1 distance examples") {
  const VelocityGrid xi(1.0, 80);
  const auto a = maxwellian(0.7, xi);
  CHECK(l1_distance(a, a) == 0.0);
  CHECK(l1_distance(a, maxwellian(0.2, xi)) == doctest::Approx(0.5));
  CHECK(l1_distance(a, maxwellian(-0.7, xi)) == doctest::Approx(1.4));
  CHECK_THROWS_AS(l1_distance(a, maxwellian(0.2, VelocityGrid(1.0, 40))), GridMismatch);
}

TEST_CASE("projection onto equilibria is idempotent") {
  const VelocityGrid xi(1.0, 80);
  for (double u : {-0.93, -0.4, 0.0, 0.3125, 0.81}) {
    const auto m = maxwellian(u, xi);
    CHECK(l1_distance(maxwellian(density_moment(m), xi), m) < 1e-14);
  }
}

TEST_CASE("half-range parts") {
  const VelocityGrid xi(1.0, 80);
  const auto p = positive_part(maxwellian(0.6, xi));
  CHECK(p.equilibrium_density().has_value());
  CHECK(flux_moment(p) == doctest::Approx(0.18));
  const auto n = negative_part(maxwellian(0.6, xi));
  for (double v : n.values()) CHECK(v == 0.0);
}

}
