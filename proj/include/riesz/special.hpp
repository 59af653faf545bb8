#pragma once

#include "riesz/coeff_vector.hpp"

namespace riesz {

/// A truncated series together with a bound on what was left out.
struct SeriesValue {
  Complex value;
  double tail_bound{0.0};  ///< absolute error bound; +inf when no bound is available
  Index terms_used{0};
};

/// Points closer than this to s = 1 are rejected by `zeta`.
inline constexpr double kZetaPoleGuard = 1e-12;

/// Riemann zeta on Re(s) > 0 through the accelerated alternating (eta) series.
///
/// The weight count n comes from the bound |error of eta| <= 2 Gamma(sigma) / (|Gamma(s)| (3 + sqrt 8)^n),
/// with a factor 10 of safety. Near the removable zeros of 1 - 2^{1-s} off the real axis the value is
/// taken as the mean over a small circle, which is exact for analytic functions up to rounding.
/// Throws DomainError for Re(s) <= 0 and PoleError within kZetaPoleGuard of s = 1.
SeriesValue zeta(Complex s, double target_abs_err = 1e-14);

/// Li_k(e^{i theta}) for real k > 1 with absolute error <= 1e-12.
Complex polylog_circle(double k, double theta);

/// The polylog generator sqrt(2) sum_n sin(n pi x) / n^k, via (i / sqrt 2)(Li_k(e^{-i pi x}) - Li_k(e^{i pi x})).
/// x must lie in [0, 1].
double phi_polylog(double k, double x);

/// `phi_polylog` continued as an odd, 2-periodic function of y.
double phi_polylog_periodic(double k, double y);

/// L_a(s) = sum_n a_n n^{-s}, truncated as early as the decay envelope allows for the target.
/// Without a usable envelope (none, or k + Re(s) <= 1) this throws InsufficientDecayError unless
/// `best_effort` is set, in which case every stored term is summed and tail_bound is +inf.
SeriesValue dirichlet_series(const CoeffVector& a, Complex s, double target_abs_err = 1e-13,
                             bool best_effort = false);

namespace detail {

/// log |Gamma(z)| for Re(z) > 0 (Lanczos, g = 7).
double log_abs_gamma(Complex z);

} // namespace detail

} // namespace riesz
