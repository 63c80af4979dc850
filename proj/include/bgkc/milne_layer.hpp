#pragma once

#include <vector>

#include "bgkc/velocity_space.hpp"

namespace bgkc {

/// Boundary data (V, g) of the half-space layer problem
///   xi dF/dy = M F - F,  F(0, xi > 0) = g,  int xi F(y, xi) dxi = V.
/// Only the xi > 0 cells of `incoming` are read.
struct LayerData {
  double flux;
  DiscreteDistribution incoming;
};

enum class LayerClass { relaxation, shock };

const char* to_string(LayerClass c);

/// Uniform nodes y_k = k * dy, k = 0..cells, on the truncated half-line [0, y_max].
struct LayerGrid {
  double y_max = 20.0;
  int cells = 400;

  double dy() const { return y_max / cells; }
  int nodes() const { return cells + 1; }
  double node(int k) const { return y_max * k / cells; }
  bool operator==(const LayerGrid&) const = default;
};

/// F(y_k, xi_j), row-major by node.
class LayerField {
 public:
  LayerField(const LayerGrid& y, const VelocityGrid& xi);

  const LayerGrid& space() const { return y_; }
  const VelocityGrid& velocity() const { return xi_; }
  double operator()(int k, int j) const { return values_[index(k, j)]; }
  double& operator()(int k, int j) { return values_[index(k, j)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  DiscreteDistribution slice(int k) const;
  void set_slice(int k, const DiscreteDistribution& g);

 private:
  std::size_t index(int k, int j) const {
    return static_cast<std::size_t>(k) * xi_.size() + static_cast<std::size_t>(j);
  }

  LayerGrid y_;
  VelocityGrid xi_;
  std::vector<double> values_;
};

struct LayerDiagnostics {
  int iterations = 0;
  double last_change = 0.0;
  /// max over y of |int xi F(y) - V|.
  double flux_residual = 0.0;
  /// max over y, xi < 0 of |F|; only meaningful for relaxation layers.
  double back_flux_residual = 0.0;
  /// Largest decrease observed between sweeps (0 for a monotone run).
  double monotonicity_violation = 0.0;
  bool warm_started = false;
};

struct LayerProfile {
  LayerField field;
  LayerData data;
  LayerClass classification;
  double u_infinity;
  DiscreteDistribution far_field;
  LayerDiagnostics diagnostics;
};

struct LayerSolveOptions {
  double tol_fix = 1e-8;
  int max_iter = 10000;
  double tol_class = 1e-8;
  /// Previous solution to start from when that is provably safe (see solve_layer).
  const LayerProfile* warm_start = nullptr;
};

/// Throws DomainError unless (V, g) lies in the admissible cone:
/// 0 <= g <= 1, 0 <= V <= L^2/2 and V >= int xi g (up to tol_class * max(V, 1)).
void check_cone(const LayerData& data, double tol_class = 1e-8);

/// Relaxation iff V equals the incoming flux to within tol_class * max(V, 1).
LayerClass classify(const LayerData& data, double tol_class = 1e-8);

/// M(sqrt(2V)) for relaxation data, M(-sqrt(2V)) for shock data (speed capped at L).
DiscreteDistribution far_field(const LayerData& data, LayerClass cls);

/// 0 for relaxation data, M(-sqrt(2V)) at every node for shock data.
LayerField start_profile(const LayerData& data, LayerClass cls, const LayerGrid& grid);

/// One sweep F_{n+1} = T(F_n) of the monotone Duhamel iteration. Negative
/// velocities enter the truncated box at y_max with the far-field values.
LayerField layer_iterate(const LayerData& data, const LayerField& prev);

/// Iterates layer_iterate from start_profile until the sup-in-y L1 change
/// drops below tol_fix. Throws NonConvergence after max_iter sweeps.
///
/// The map T has a whole family of fixed points (one per admissible flux);
/// the start profile selects the one with flux V. A warm start is therefore
/// used only when the previous solution lies below the sought one, i.e. same
/// class, previous incoming data <= current and previous V >= current V.
LayerProfile solve_layer(const LayerData& data, const LayerGrid& grid,
                         const LayerSolveOptions& options = {});

/// F(0, xi < 0); zero on xi > 0.
DiscreteDistribution back_flux(const LayerProfile& profile);

/// dy * sum_k || F(y_k) - F_inf ||_1 over the cells of the y-grid.
double confinement_norm(const LayerProfile& profile);

}  // namespace bgkc
