#include "riesz/quadrature.hpp"

#include "riesz/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace riesz::quad {

namespace {

GaussRule build_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const double n = order;
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= order; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (order % 2 == 1)
    rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  return rule;
}

} // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 2 || order > 256)
    throw DomainError("gauss_legendre: order must lie in [2, 256]");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot)
    slot = std::make_unique<GaussRule>(build_rule(order));
  return *slot;
}

} // namespace riesz::quad
