#pragma once

#include "riesz/coeff_vector.hpp"
#include "riesz/sine_vector.hpp"
#include "riesz/special.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>

namespace riesz {

enum class FamilyKind { Polylog, Delta, Custom };

struct Family {
  FamilyKind kind{FamilyKind::Custom};
  double k{0.0};  ///< polylog order; only meaningful for FamilyKind::Polylog

  std::string label() const;
};

/// Dirichlet inverse b of a generator, with the measured max |(a * b)[n] - delta[n]|.
struct DualSystem {
  CoeffVector b;
  double convolution_residual{0.0};
};

/// The system phi_n(x) = phi(n x) generated by a = (a_1, a_2, ...) with phi = sum_n a_n e_n.
///
/// The generator is stored with a_1 = 1; `normalization()` is the original a_1 that was divided out.
/// Copies share the immutable state, and the dual is computed once on first use.
class DilatedSystem {
public:
  /// a_n = n^{-k}, decay (1, k).
  static DilatedSystem polylog(double k, Index n);
  /// a = delta: the orthonormal sine basis itself.
  static DilatedSystem delta(Index n);
  /// Arbitrary generator; throws NonInvertibleError when a_1 = 0.
  static DilatedSystem from_coefficients(const CoeffVector& a);

  const CoeffVector& generator() const;
  Complex normalization() const;
  const Family& family() const;
  Index size() const { return generator().size(); }

  /// Families with a closed-form generator can be extended past the stored truncation.
  bool closed_form() const { return family().kind != FamilyKind::Custom; }
  /// Entries 1..n of the generator; custom generators are padded with zeros past size().
  CoeffVector coefficients(Index n) const;

  const DualSystem& dual() const;

  /// L_a(s): zeta(s + k) for the polylog family, 1 for delta, the truncated series otherwise
  /// (best effort when the envelope does not cover Re(s)).
  SeriesValue l_series(Complex s, double target_abs_err = 1e-13) const;

private:
  struct State;
  explicit DilatedSystem(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  std::shared_ptr<const State> state_;
};

/// Column n of the dilation matrix U (U_{k,n} = a_{k/n} when n | k), truncated at K.
SineVector phi_coefficients(const DilatedSystem& sys, Index n, Index K);

/// Biorthogonal partner of phi_n: coefficient conj(b[n/d]) on e_d for every divisor d of n.
/// The returned vector has length n.
SineVector dual_coefficients(const DilatedSystem& sys, Index n);

/// max_{m,n <= M} |<dual_m, phi_n> - delta_mn|, pairing the coefficient vectors directly.
double biorthogonality_check(const DilatedSystem& sys, Index M);

struct GramSummary {
  Index M{0};
  Index K{0};
  Eigen::MatrixXcd entries;
  double lambda_min{0.0};
  double lambda_max{0.0};
  double cond{0.0};
  /// Frobenius bound on (infinite-K Gram) - entries; by Weyl it also bounds eigenvalue shifts.
  double tail_bound{0.0};
  /// max_i ||G v_i - lambda_i v_i|| of the eigen-decomposition.
  double eig_residual{0.0};
};

/// G[m][n] = <phi_m, phi_n> = sum_{k <= K, lcm(m,n) | k} conj(a[k/m]) a[k/n] for m, n <= M.
/// Throws InsufficientDecayError without a square-summable envelope.
GramSummary gram_matrix(const DilatedSystem& sys, Index M, Index K);
/// K defaults to 2^16 M.
GramSummary gram_matrix(const DilatedSystem& sys, Index M);

struct Corridor {
  double lo{0.0};  ///< min |L_a(1/2 + it)|^2 over the grid
  double hi{0.0};  ///< max |L_a(1/2 + it)|^2 over the grid
  double t_lo{0.0};
  double t_hi{0.0};
  Index points{0};
  double tail_bound{0.0};  ///< largest absolute error bound on |L_a| met on the grid
};

/// Grid t = j step, |t| <= t_max, on the line Re(s) = 1/2. Real generators are evaluated for t >= 0
/// and mirrored.
Corridor riesz_corridor(const DilatedSystem& sys, double t_max, double step);

struct BariResidual {
  double residual{0.0};    ///< max_n ||phi_n - U U^dagger dual_n|| / ||phi_n||
  double tail_bound{0.0};  ///< relative mass of phi_n beyond K plus a rounding allowance
};

/// Checks phi_n = (U U^dagger) dual_n for n <= M with every operator truncated to indices <= K.
BariResidual bari_g_residual(const DilatedSystem& sys, Index M, Index K);

struct GeneratorCheck {
  /// Relative gap between f(e^lambda x) and f(e^{lambda/2} (e^{lambda/2} x)) (dilations compose).
  double identity_error{0.0};
  /// |(f(e^h x) - f(e^{-h} x)) / 2h - x f'(x)| / |x f'(x)|, f' by central differences of step h.
  double generator_error{0.0};
};

/// Needs x, e^lambda x, x +- h and e^{+-h} x inside (0, 1); throws DomainError otherwise.
GeneratorCheck dilation_generator_check(const std::function<double(double)>& f, double x, double lambda,
                                        double h);

/// max_k |coefficient_k of sqrt(2) sin(pi e^{ln n} x) - [k = n]| over `modes` sine modes,
/// with `modes + 1` a power of two (exact discrete sine transform).
double dilation_identity_residual(Index n, Index modes);

} // namespace riesz
