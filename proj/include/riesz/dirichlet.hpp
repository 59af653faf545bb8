#pragma once

#include "riesz/coeff_vector.hpp"
#include "riesz/errors.hpp"
#include "riesz/summation.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace riesz {

int mobius(std::int64_t n);

/// mu(1..n) from a smallest-prime-factor sieve; entry i holds mu(i + 1).
std::vector<int> mobius_sieve(std::int64_t n);

std::vector<std::int64_t> divisors(std::int64_t n);

/// Dense Dirichlet-convolution kernels. Entry i of every vector stands for index i + 1.
namespace kernel {

/// (a * b)[n] = sum_{d | n} a[d] b[n / d] for n <= length.
/// Accumulates each entry in ascending d, so the result does not depend on anything but the inputs.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1>
convolve(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b, Index length) {
  using Scalar = typename DerivedA::Scalar;
  if (length > a.size() || length > b.size())
    throw LengthError("dirichlet convolution: truncation exceeds input length");
  std::vector<CompensatedSum<Scalar>> acc(static_cast<std::size_t>(length));
  for (Index d = 1; d <= length; ++d) {
    const Scalar ad = a[d - 1];
    for (Index q = 1, m = d; m <= length; ++q, m += d)
      acc[m - 1].add(ad * b[q - 1]);
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(length);
  for (Index n = 0; n < length; ++n)
    out[n] = acc[n].value();
  return out;
}

/// Dirichlet inverse by the divisor recursion b[1] = 1/a[1], b[n] = -(1/a[1]) sum_{d | n, d < n} b[d] a[n/d].
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
inverse(const Eigen::MatrixBase<Derived>& a, Index length) {
  using Scalar = typename Derived::Scalar;
  if (length > a.size())
    throw LengthError("dirichlet inverse: truncation exceeds input length");
  if (a[0] == Scalar(0))
    throw NonInvertibleError("dirichlet inverse: a[1] = 0");
  const Scalar inv_a1 = Scalar(1) / a[0];
  std::vector<CompensatedSum<Scalar>> acc(static_cast<std::size_t>(length));
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b(length);
  for (Index d = 1; d <= length; ++d) {
    // every proper divisor of d has already pushed its contribution
    b[d - 1] = d == 1 ? inv_a1 : -inv_a1 * acc[d - 1].value();
    const Scalar bd = b[d - 1];
    for (Index q = 2, m = 2 * d; m <= length; ++q, m += d)
      acc[m - 1].add(bd * a[q - 1]);
  }
  return b;
}

} // namespace kernel

CoeffVector dirichlet_convolve(const CoeffVector& a, const CoeffVector& b, Index length);
CoeffVector dirichlet_convolve(const CoeffVector& a, const CoeffVector& b);

/// Carries no decay metadata: the inverse of a decaying sequence need not decay.
CoeffVector dirichlet_inverse(const CoeffVector& a, Index length);
CoeffVector dirichlet_inverse(const CoeffVector& a);

struct MultiplicativityReport {
  bool completely_multiplicative{true};
  /// First (m, n), m <= n, scanned in lexicographic order, with |a[mn] - a[m]a[n]| > tol.
  std::optional<std::pair<Index, Index>> first_violation;
};

MultiplicativityReport is_completely_multiplicative(const CoeffVector& a, Index length, double tol);

} // namespace riesz
