#include <cmath>
#include <vector>

#include "bgkc/kernels.hpp"

namespace bgkc::kernels::reference {

void kinetic_step(const KineticStepArgs& a, std::span<double> out) {
  const int nxi = a.xi.size();
  auto value = [&](int i, int j) {
    if (i < 0) return a.left_in[j];
    if (i >= a.nx) return a.right_in[j];
    return a.f[static_cast<std::size_t>(i) * nxi + j];
  };
  for (int i = 0; i < a.nx; ++i) {
    DiscreteDistribution transported(a.xi);
    for (int j = 0; j < nxi; ++j) {
      const double speed = a.xi.center(j);
      const double lambda = std::abs(speed) * a.dt / a.dx;
      const int upwind = speed > 0.0 ? i - 1 : i + 1;
      transported.set(j, value(i, j) - lambda * (value(i, j) - value(upwind, j)));
    }
    const auto relaxed = relax_toward_maxwellian(transported, a.dt, a.alpha[i]);
    for (int j = 0; j < nxi; ++j) out[static_cast<std::size_t>(i) * nxi + j] = relaxed[j];
  }
}

// Direct evaluation of the discretized Duhamel integrals at every node, with
// no recursion in y. O(ny^2) per velocity.
void layer_sweep(const LayerSweepArgs& a, std::span<double> out) {
  const int nxi = a.xi.size();
  const int nodes = a.ny + 1;
  std::vector<DiscreteDistribution> eq;
  eq.reserve(nodes);
  for (int k = 0; k < nodes; ++k) {
    std::vector<double> row(a.prev.begin() + static_cast<std::ptrdiff_t>(k) * nxi,
                            a.prev.begin() + static_cast<std::ptrdiff_t>(k + 1) * nxi);
    const double u = density_moment(DiscreteDistribution(a.xi, std::move(row)));
    const double L = a.xi.half_width();
    eq.push_back(maxwellian(std::fmax(-L, std::fmin(L, u)), a.xi));
  }

  for (int j = 0; j < nxi; ++j) {
    const double c = std::abs(a.xi.center(j));
    const auto w = exp_trapezoid_weights(a.dy, c);
    for (int k = 0; k < nodes; ++k) {
      double value = 0.0;
      if (a.xi.center(j) > 0.0) {
        value = a.incoming[j] * std::exp(-(k * a.dy) / c);
        for (int l = 0; l < k; ++l) {
          const double attenuation = std::exp(-((k - 1 - l) * a.dy) / c);
          value += attenuation * (w.w0 * eq[l][j] + w.w1 * eq[l + 1][j]);
        }
      } else {
        value = a.tail[j] * std::exp(-((a.ny - k) * a.dy) / c);
        for (int l = k; l < a.ny; ++l) {
          const double attenuation = std::exp(-((l - k) * a.dy) / c);
          value += attenuation * (w.w0 * eq[l + 1][j] + w.w1 * eq[l][j]);
        }
      }
      out[static_cast<std::size_t>(k) * nxi + j] = value;
    }
  }
}

void godunov_update(std::span<const double> u, double left_flux, double dt_over_dx,
                    std::span<double> out) {
  const std::size_t n = u.size();
  std::vector<double> flux(n + 1);
  flux[0] = left_flux;
  for (std::size_t i = 1; i < n; ++i) flux[i] = godunov_flux(u[i - 1], u[i]);
  flux[n] = godunov_flux(u[n - 1], u[n - 1]);
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i] - dt_over_dx * (flux[i + 1] - flux[i]);
}

}  // namespace bgkc::kernels::reference
