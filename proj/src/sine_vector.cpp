#include "riesz/sine_vector.hpp"

#include "riesz/errors.hpp"
#include "riesz/summation.hpp"

#include <cmath>
#include <numbers>

namespace riesz {

SineVector SineVector::unit(Index k, Index size) {
  if (k < 1 || k > size)
    throw LengthError("unit sine vector index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size);
  v[k - 1] = 1.0;
  return {CoeffVector(std::move(v))};
}

Complex inner(const SineVector& f, const SineVector& g) {
  const Index n = std::min(f.size(), g.size());
  CompensatedSum<Complex> acc;
  for (Index k = 1; k <= n; ++k)
    acc.add(std::conj(f(k)) * g(k));
  return acc.value();
}

namespace {

// sin(pi y) with the argument reduced modulo 2 first
double sin_pi(double y) {
  const double r = y - 2.0 * std::nearbyint(0.5 * y);
  return std::sin(std::numbers::pi * r);
}

} // namespace

Complex eval(const SineVector& v, double x, Index terms) {
  if (terms > v.size())
    throw LengthError("eval: more terms requested than stored");
  // e^{i k pi x} advanced by rotation between nonzero entries, re-anchored every 64 of them
  constexpr int kAnchorEvery = 64;
  CompensatedSum<Complex> acc;
  Index last = 0;
  Index last_step = 0;
  Complex step_rot{1.0, 0.0};
  Complex rot{1.0, 0.0};
  int since_anchor = kAnchorEvery;
  for (Index k = 1; k <= terms; ++k) {
    const Complex c = v(k);
    if (c == Complex{})
      continue;
    if (since_anchor == kAnchorEvery) {
      const double y = static_cast<double>(k) * x;
      rot = {sin_pi(y + 0.5), sin_pi(y)};
      since_anchor = 0;
    } else {
      const Index step = k - last;
      if (step != last_step) {
        const double y = static_cast<double>(step) * x;
        step_rot = {sin_pi(y + 0.5), sin_pi(y)};
        last_step = step;
      }
      rot *= step_rot;
    }
    ++since_anchor;
    last = k;
    acc.add(c * rot.imag());
  }
  return std::numbers::sqrt2 * acc.value();
}

Complex eval(const SineVector& v, double x) { return eval(v, x, v.size()); }

} // namespace riesz
