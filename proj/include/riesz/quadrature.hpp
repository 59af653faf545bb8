#pragma once

#include <vector>

namespace riesz::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached; safe to call from several threads.
const GaussRule& gauss_legendre(int order);

} // namespace riesz::quad
