#include <algorithm>
#include <cmath>
#include <vector>

#include "bgkc/kernels.hpp"

namespace bgkc::kernels {

ExpWeights exp_trapezoid_weights(double h, double c) {
  const double tau = h / c;
  const double decay = std::exp(-tau);
  double w0;
  double w1;
  if (tau < 1e-3) {
    w0 = tau / 2.0 - tau * tau / 3.0 + tau * tau * tau / 8.0;
    w1 = tau / 2.0 - tau * tau / 6.0 + tau * tau * tau / 24.0;
  } else {
    const double gain = -std::expm1(-tau);
    w0 = (gain - tau * decay) / tau;
    w1 = gain - w0;
  }
  return {w0, w1, decay};
}

double godunov_flux(double left, double right) {
  if (left <= right) {
    if (left > 0.0) return 0.5 * left * left;
    if (right < 0.0) return 0.5 * right * right;
    return 0.0;
  }
  return 0.5 * std::max(left * left, right * right);
}

namespace parallel {

void kinetic_step(const KineticStepArgs& a, std::span<double> out) {
  const int nxi = a.xi.size();
  const int half = a.xi.first_positive();
  const double L = a.xi.half_width();

#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.nx; ++i) {
    const double* fi = a.f.data() + static_cast<std::size_t>(i) * nxi;
    const double* upstream_left = i > 0 ? fi - nxi : a.left_in.data();
    const double* upstream_right = i + 1 < a.nx ? fi + nxi : a.right_in.data();
    double* oi = out.data() + static_cast<std::size_t>(i) * nxi;

    double sum = 0.0;
    for (int j = 0; j < nxi; ++j) {
      const double speed = a.xi.center(j);
      const double lambda = std::abs(speed) * a.dt / a.dx;
      const double up = j < half ? upstream_right[j] : upstream_left[j];
      oi[j] = fi[j] - lambda * (fi[j] - up);
      sum += oi[j];
    }

    const double alpha = a.alpha[i];
    if (alpha == 0.0) continue;
    const double keep = std::exp(-alpha * a.dt);
    const double gain = -std::expm1(-alpha * a.dt);
    const double u = std::clamp(a.xi.width() * sum, -L, L);
    for (int j = 0; j < nxi; ++j) {
      const double m = maxwellian_cell(u, a.xi, j);
      oi[j] = keep == 0.0 ? m : m * gain + oi[j] * keep;
    }
  }
}

void layer_sweep(const LayerSweepArgs& a, std::span<double> out) {
  const int nxi = a.xi.size();
  const int nodes = a.ny + 1;
  const double L = a.xi.half_width();
  std::vector<double> eq(static_cast<std::size_t>(nodes) * nxi);

#pragma omp parallel for schedule(static)
  for (int k = 0; k < nodes; ++k) {
    const double* row = a.prev.data() + static_cast<std::size_t>(k) * nxi;
    double sum = 0.0;
    for (int j = 0; j < nxi; ++j) sum += row[j];
    const double u = std::clamp(a.xi.width() * sum, -L, L);
    double* m = eq.data() + static_cast<std::size_t>(k) * nxi;
    for (int j = 0; j < nxi; ++j) m[j] = maxwellian_cell(u, a.xi, j);
  }

  const int half = a.xi.first_positive();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nxi; ++j) {
    const double speed = a.xi.center(j);
    const auto w = exp_trapezoid_weights(a.dy, std::abs(speed));
    auto at = [nxi, j](auto* base, int k) -> auto& { return base[static_cast<std::size_t>(k) * nxi + j]; };
    if (j >= half) {
      at(out.data(), 0) = a.incoming[j];
      for (int k = 0; k < a.ny; ++k) {
        at(out.data(), k + 1) = w.decay * at(out.data(), k) + w.w0 * at(eq.data(), k) +
                                w.w1 * at(eq.data(), k + 1);
      }
    } else {
      at(out.data(), a.ny) = a.tail[j];
      for (int k = a.ny - 1; k >= 0; --k) {
        at(out.data(), k) = w.decay * at(out.data(), k + 1) + w.w0 * at(eq.data(), k + 1) +
                            w.w1 * at(eq.data(), k);
      }
    }
  }
}

void godunov_update(std::span<const double> u, double left_flux, double dt_over_dx,
                    std::span<double> out) {
  const int n = static_cast<int>(u.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double fl = i == 0 ? left_flux : godunov_flux(u[i - 1], u[i]);
    const double fr = i + 1 < n ? godunov_flux(u[i], u[i + 1]) : godunov_flux(u[i], u[i]);
    out[i] = u[i] - dt_over_dx * (fr - fl);
  }
}

}  // namespace parallel
}  // namespace bgkc::kernels
