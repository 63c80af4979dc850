#pragma once

#include <cmath>
#include <random>

#include "bgkc/velocity_space.hpp"

namespace test {

// Admissible distribution with independent uniform cell values.
inline bgkc::DiscreteDistribution random_admissible(const bgkc::VelocityGrid& xi, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bgkc::DiscreteDistribution g(xi);
  for (int j = 0; j < xi.size(); ++j) g.set(j, bgkc::sign(xi.center(j)) * unit(rng));
  return g;
}

// Exact average over cell j of the indicator of (a, b).
inline double interval_average(const bgkc::VelocityGrid& xi, int j, double a, double b) {
  const double overlap = std::min(b, xi.edge(j + 1)) - std::max(a, xi.edge(j));
  return overlap > 0.0 ? overlap / xi.width() : 0.0;
}

}  // namespace test
