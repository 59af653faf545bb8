#pragma once

#include "riesz/basis.hpp"
#include "riesz/coeff_vector.hpp"
#include "riesz/sine_vector.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace riesz {

enum class QuadMethod { Auto, Dst, Gauss };

struct QuadConfig {
  QuadMethod method{QuadMethod::Auto};
  int gauss_order{16};
  /// Largest number of function samples the Gauss route may take.
  Index max_points{Index{1} << 24};
};

struct SineTransform {
  SineVector psi;
  QuadMethod method{QuadMethod::Dst};  ///< the route actually taken
  Index points{0};
};

/// psi_n ~ int_0^1 psi(x) sqrt(2) sin(n pi x) dx for n <= N.
///
/// Dst: trapezoidal (type-I sine transform) on the N interior points j/(N+1); needs N + 1 a power of
/// two and is exact for sine polynomials of degree <= N. Gauss: composite Gauss-Legendre with 16
/// samples per oscillation of mode N. Auto picks Dst whenever it applies.
SineTransform sine_coefficients(const std::function<Complex(double)>& psi, Index N, const QuadConfig& quad = {});

struct ExpansionResult {
  CoeffVector c;     ///< coefficients against phi_1..phi_N
  SineVector psi;    ///< the expanded input
  double residual_l2{0.0};
};

/// c[n] = <dual_n, psi> = sum_{d | n} b[n/d] psi[d] for n <= psi.size().
ExpansionResult analyze(const DilatedSystem& sys, const SineVector& psi);

/// psi[k] = sum_{n | k} a[k/n] c[n], same length as c.
SineVector synthesize(const DilatedSystem& sys, const CoeffVector& c);

struct StabilityReport {
  double min_ratio{0.0};
  double max_ratio{0.0};
  double mean_ratio{0.0};
  Index trials{0};
  Index M{0};
  Index N{0};
  std::uint64_t seed{0};
};

/// Extremes of ||analyze(psi).c|| / ||psi|| over random unit psi on modes <= M (complex Gaussian
/// entries, then normalised). Trial t draws from mt19937_64 seeded with seed_seq{seed, t}.
StabilityReport stability_report(const DilatedSystem& sys, Index trials, Index M, std::uint64_t seed);

struct ScanRegion {
  double re_min{0.01};
  double re_max{4.0};
  double im_min{-50.0};
  double im_max{50.0};
};

struct ScanThresholds {
  double hi{1e3};
  double lo{1e-3};
};

enum class Verdict { Bounded, UnboundedSuspected, NearZeroSuspected, Inconclusive };

std::string to_string(Verdict v);

/// |L_a| on the grid sigma_i = re_min + i step, t_j = j step (so the t grid is symmetric about 0
/// whenever the region is). Masked cells hold NaN.
struct ScanGrid {
  Eigen::VectorXd sigma;
  Eigen::VectorXd t;
  Eigen::MatrixXd modulus;  ///< modulus(i, j) = |L_a(sigma_i + i t_j)|
  std::vector<Complex> masked_cells;
  double max_tail{0.0};
};

struct ScanReport {
  ScanRegion region;
  double step{0.0};
  double min_abs{0.0};
  double max_abs{0.0};
  Complex argmin;
  Complex argmax;
  std::vector<Complex> masked_cells;
  Verdict verdict{Verdict::Inconclusive};
  ScanThresholds thresholds;
  Index points{0};
  double max_tail{0.0};
};

/// Evaluates through DilatedSystem::l_series; for the polylog family the pole of zeta(s + k) is
/// masked by the zeta pole guard.
ScanGrid halfplane_grid(const DilatedSystem& sys, const ScanRegion& region, double step);
ScanGrid halfplane_grid(const CoeffVector& a, const ScanRegion& region, double step);

/// Grid scan followed by one refinement pass (spacing step / 100 over +-step) around the grid
/// argmin and argmax. Verdict: Inconclusive if a tail bound exceeds thresholds.lo, else
/// UnboundedSuspected if max_abs > hi, else NearZeroSuspected if min_abs < lo, else Bounded.
ScanReport halfplane_scan(const DilatedSystem& sys, const ScanRegion& region, double step,
                          const ScanThresholds& thresholds = {});
/// Same over a raw coefficient vector (every stored term summed; best effort outside the envelope).
ScanReport halfplane_scan(const CoeffVector& a, const ScanRegion& region, double step,
                          const ScanThresholds& thresholds = {});

} // namespace riesz
