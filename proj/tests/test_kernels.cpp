#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bgkc/kernels.hpp"
#include "support.hpp"

using namespace bgkc;

TEST_SUITE("kernels") {

TEST_CASE("exponential trapezoid weights integrate linear data exactly") {
  for (double h : {1e-6, 1e-3, 0.05, 0.7, 30.0}) {
    for (double c : {0.0125, 0.3, 1.0}) {
      const auto w = kernels::exp_trapezoid_weights(h, c);
      // Oracle by composite Simpson on a fine grid, skipping the part of
      // [0, h] where the kernel is below 1e-30.
      const int n = 20000;
      const double start = std::max(0.0, h - 70.0 * c);
      double i0 = 0.0, i1 = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double z = start + (h - start) * k / n;
        const double weight = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        const double kernel = std::exp(-(h - z) / c) / c;
        i0 += weight * kernel * (1.0 - z / h);
        i1 += weight * kernel * (z / h);
      }
      i0 *= (h - start) / (3.0 * n);
      i1 *= (h - start) / (3.0 * n);
      CHECK(w.w0 == doctest::Approx(i0).epsilon(1e-7));
      CHECK(w.w1 == doctest::Approx(i1).epsilon(1e-7));
      CHECK(w.decay == doctest::Approx(std::exp(-h / c)));
      CHECK(w.w0 + w.w1 + w.decay == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("godunov flux examples") {
  CHECK(kernels::godunov_flux(1.0, 1.0) == 0.5);
  CHECK(kernels::godunov_flux(-1.0, 1.0) == 0.0);
  CHECK(kernels::godunov_flux(1.0, -1.0) == 0.5);
  CHECK(kernels::godunov_flux(0.2, 0.8) == doctest::Approx(0.02));
  CHECK(kernels::godunov_flux(-0.8, -0.2) == doctest::Approx(0.02));
}

TEST_CASE("parallel kinetic step matches the reference") {
  const VelocityGrid xi(1.0, 40);
  std::mt19937 rng(1);
  const int nx = 37;
  std::vector<double> f, alpha;
  for (int i = 0; i < nx; ++i) {
    const auto g = test::random_admissible(xi, rng);
    f.insert(f.end(), g.values().begin(), g.values().end());
    alpha.push_back(i < nx / 2 ? 1.0 : 250.0);
  }
  const auto left = test::random_admissible(xi, rng);
  const auto right = test::random_admissible(xi, rng);
  const kernels::KineticStepArgs args{xi, nx, 0.05, 0.045, f, left.values(), right.values(), alpha};
  std::vector<double> a(f.size()), b(f.size());
  kernels::parallel::kinetic_step(args, a);
  kernels::reference::kinetic_step(args, b);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-13));
}

TEST_CASE("parallel layer sweep matches the direct quadrature") {
  const VelocityGrid xi(1.0, 20);
  std::mt19937 rng(2);
  const int ny = 60;
  std::vector<double> prev;
  for (int k = 0; k <= ny; ++k) {
    const auto g = test::random_admissible(xi, rng);
    prev.insert(prev.end(), g.values().begin(), g.values().end());
  }
  const auto incoming = test::random_admissible(xi, rng);
  const auto tail = test::random_admissible(xi, rng);
  const kernels::LayerSweepArgs args{xi, ny, 0.1, incoming.values(), prev, tail.values()};
  std::vector<double> a(prev.size()), b(prev.size());
  kernels::parallel::layer_sweep(args, a);
  kernels::reference::layer_sweep(args, b);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
}

TEST_CASE("parallel godunov update matches the reference") {
  std::vector<double> u(101);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(0.2 * i) * 0.9;
  std::vector<double> a(u.size()), b(u.size());
  kernels::parallel::godunov_update(u, 0.07, 0.8, a);
  kernels::reference::godunov_update(u, 0.07, 0.8, b);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-15));
}

}
