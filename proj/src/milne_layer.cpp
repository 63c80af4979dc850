#include "bgkc/milne_layer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bgkc/errors.hpp"
#include "bgkc/kernels.hpp"

namespace bgkc {

const char* to_string(LayerClass c) { return c == LayerClass::relaxation ? "relaxation" : "shock"; }

LayerField::LayerField(const LayerGrid& y, const VelocityGrid& xi)
    : y_(y), xi_(xi), values_(static_cast<std::size_t>(y.nodes()) * xi.size(), 0.0) {
  if (!(y.y_max > 0.0) || y.cells < 1) throw std::invalid_argument("layer grid needs y_max > 0 and cells >= 1");
}

DiscreteDistribution LayerField::slice(int k) const {
  auto first = values_.begin() + static_cast<std::ptrdiff_t>(index(k, 0));
  return DiscreteDistribution(xi_, std::vector<double>(first, first + xi_.size()));
}

void LayerField::set_slice(int k, const DiscreteDistribution& g) {
  if (!(g.grid() == xi_)) throw GridMismatch("layer set_slice: velocity grids differ");
  std::copy(g.values().begin(), g.values().end(), values_.begin() + static_cast<std::ptrdiff_t>(index(k, 0)));
}

void check_cone(const LayerData& data, double tol_class) {
  const auto& xi = data.incoming.grid();
  const double L = xi.half_width();
  const double slack = tol_class * std::max(data.flux, 1.0);
  for (int j = xi.first_positive(); j < xi.size(); ++j) {
    const double g = data.incoming[j];
    if (g < -1e-12 || g > 1.0 + 1e-12) {
      throw DomainError("layer data: incoming value " + std::to_string(g) + " outside [0, 1]");
    }
  }
  if (!(data.flux >= -slack) || data.flux > 0.5 * L * L + slack) {
    throw DomainError("layer data: V = " + std::to_string(data.flux) + " outside [0, L^2/2]");
  }
  const double incoming = flux_moment(positive_part(data.incoming));
  if (data.flux < incoming - slack) {
    throw DomainError("layer data outside the admissible cone: V = " + std::to_string(data.flux) +
                      " < incoming flux " + std::to_string(incoming));
  }
}

LayerClass classify(const LayerData& data, double tol_class) {
  check_cone(data, tol_class);
  const double incoming = flux_moment(positive_part(data.incoming));
  return data.flux - incoming > tol_class * std::max(data.flux, 1.0) ? LayerClass::shock
                                                                     : LayerClass::relaxation;
}

namespace {

double far_speed(const LayerData& data) {
  const double L = data.incoming.grid().half_width();
  return std::min(std::sqrt(2.0 * std::max(data.flux, 0.0)), L);
}

}  // namespace

LayerField start_profile(const LayerData& data, LayerClass cls, const LayerGrid& grid) {
  LayerField field(grid, data.incoming.grid());
  if (cls == LayerClass::shock) {
    const auto eq = far_field(data, cls);
    for (int k = 0; k < grid.nodes(); ++k) field.set_slice(k, eq);
  }
  return field;
}

DiscreteDistribution far_field(const LayerData& data, LayerClass cls) {
  const double u_inf = far_speed(data);
  return maxwellian(cls == LayerClass::relaxation ? u_inf : -u_inf, data.incoming.grid());
}

LayerField layer_iterate(const LayerData& data, const LayerField& prev) {
  if (!(prev.velocity() == data.incoming.grid())) throw GridMismatch("layer_iterate: velocity grids differ");
  const auto far = far_field(data, classify(data));
  LayerField next(prev.space(), prev.velocity());
  kernels::parallel::layer_sweep({prev.velocity(), prev.space().cells, prev.space().dy(), data.incoming.values(),
                                  prev.values(), far.values()},
                                 next.values());
  return next;
}

namespace {

bool warm_start_is_safe(const LayerProfile& prev, const LayerData& data, LayerClass cls,
                        const LayerGrid& grid) {
  if (!(prev.field.space() == grid) || !(prev.field.velocity() == data.incoming.grid())) return false;
  if (prev.classification != cls) return false;
  if (cls == LayerClass::shock && prev.data.flux < data.flux) return false;
  const auto& xi = data.incoming.grid();
  for (int j = xi.first_positive(); j < xi.size(); ++j) {
    if (prev.data.incoming[j] > data.incoming[j]) return false;
  }
  return true;
}

// sup over nodes of the velocity L1 distance.
double sup_l1_change(const LayerField& a, const LayerField& b) {
  const int nxi = a.velocity().size();
  double worst = 0.0;
  for (int k = 0; k < a.space().nodes(); ++k) {
    double sum = 0.0;
    for (int j = 0; j < nxi; ++j) sum += std::abs(a(k, j) - b(k, j));
    worst = std::max(worst, sum * a.velocity().width());
  }
  return worst;
}

double largest_decrease(const LayerField& before, const LayerField& after) {
  double worst = 0.0;
  for (std::size_t n = 0; n < before.values().size(); ++n) {
    worst = std::max(worst, before.values()[n] - after.values()[n]);
  }
  return worst;
}

}  // namespace

LayerProfile solve_layer(const LayerData& data, const LayerGrid& grid, const LayerSolveOptions& options) {
  const LayerClass cls = classify(data, options.tol_class);
  const auto& xi = data.incoming.grid();
  LayerField current = start_profile(data, cls, grid);

  LayerDiagnostics diag;
  if (options.warm_start && warm_start_is_safe(*options.warm_start, data, cls, grid)) {
    const auto& prev = options.warm_start->field.values();
    auto cur = current.values();
    for (std::size_t n = 0; n < cur.size(); ++n) cur[n] = std::max(cur[n], prev[n]);
    diag.warm_started = true;
  }

  bool converged = false;
  while (diag.iterations < options.max_iter) {
    LayerField next = layer_iterate(data, current);
    ++diag.iterations;
    if (!diag.warm_started) {
      diag.monotonicity_violation = std::max(diag.monotonicity_violation, largest_decrease(current, next));
    }
    diag.last_change = sup_l1_change(current, next);
    current = std::move(next);
    if (diag.last_change <= options.tol_fix) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NonConvergence("layer iteration did not converge in " + std::to_string(options.max_iter) +
                             " sweeps (last change " + std::to_string(diag.last_change) + ")",
                         diag.iterations, diag.last_change);
  }

  for (int k = 0; k < grid.nodes(); ++k) {
    const auto s = current.slice(k);
    diag.flux_residual = std::max(diag.flux_residual, std::abs(flux_moment(s) - data.flux));
    for (int j = 0; j < xi.first_positive(); ++j) {
      diag.back_flux_residual = std::max(diag.back_flux_residual, std::abs(s[j]));
    }
  }

  return LayerProfile{std::move(current), data, cls, far_speed(data), far_field(data, cls), diag};
}

DiscreteDistribution back_flux(const LayerProfile& profile) {
  return negative_part(profile.field.slice(0));
}

double confinement_norm(const LayerProfile& profile) {
  const auto& y = profile.field.space();
  double sum = 0.0;
  for (int k = 0; k < y.cells; ++k) sum += l1_distance(profile.field.slice(k), profile.far_field);
  return y.dy() * sum;
}

}  // namespace bgkc
