#pragma once

#include "riesz/coeff_vector.hpp"

namespace riesz {

/// Coefficients against the orthonormal sine basis e_k(x) = sqrt(2) sin(k pi x) on (0, 1).
struct SineVector {
  CoeffVector coeffs;

  Index size() const { return coeffs.size(); }
  const Complex& operator()(Index k) const { return coeffs(k); }
  /// L2 norm of the represented function (Parseval over the truncation).
  double norm() const { return coeffs.values().norm(); }

  static SineVector unit(Index k, Index size);
};

/// <f, g> = sum_k conj(f_k) g_k; the shorter vector is read as zero-padded.
Complex inner(const SineVector& f, const SineVector& g);

/// sum_{k <= terms} coeffs[k] sqrt(2) sin(k pi x), ascending k, compensated.
Complex eval(const SineVector& v, double x, Index terms);
Complex eval(const SineVector& v, double x);

} // namespace riesz
