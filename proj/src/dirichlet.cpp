#include "riesz/dirichlet.hpp"

#include <cmath>

namespace riesz {

int mobius(std::int64_t n) {
  if (n < 1)
    throw DomainError("mobius: n must be positive");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0)
      continue;
    n /= p;
    if (n % p == 0)
      return 0;
    sign = -sign;
  }
  if (n > 1)
    sign = -sign;
  return sign;
}

std::vector<int> mobius_sieve(std::int64_t n) {
  if (n < 1)
    throw DomainError("mobius_sieve: n must be positive");
  std::vector<std::int64_t> spf(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> mu(static_cast<std::size_t>(n), 0);
  mu[0] = 1;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] == 0)
      for (std::int64_t j = i; j <= n; j += i)
        if (spf[j] == 0)
          spf[j] = i;
    const std::int64_t p = spf[i];
    const std::int64_t rest = i / p;
    mu[i - 1] = rest % p == 0 ? 0 : -mu[rest - 1];
  }
  return mu;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1)
    throw DomainError("divisors: n must be positive");
  std::vector<std::int64_t> low, high;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0)
      continue;
    low.push_back(d);
    if (d != n / d)
      high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

CoeffVector dirichlet_convolve(const CoeffVector& a, const CoeffVector& b, Index length) {
  return CoeffVector(kernel::convolve(a.values(), b.values(), length));
}

CoeffVector dirichlet_convolve(const CoeffVector& a, const CoeffVector& b) {
  return dirichlet_convolve(a, b, std::min(a.size(), b.size()));
}

CoeffVector dirichlet_inverse(const CoeffVector& a, Index length) {
  return CoeffVector(kernel::inverse(a.values(), length));
}

CoeffVector dirichlet_inverse(const CoeffVector& a) { return dirichlet_inverse(a, a.size()); }

MultiplicativityReport is_completely_multiplicative(const CoeffVector& a, Index length, double tol) {
  if (length > a.size())
    throw LengthError("multiplicativity check: truncation exceeds input length");
  if (a(1) == Complex{})
    throw NonInvertibleError("multiplicativity check: a[1] = 0");
  MultiplicativityReport report;
  for (Index m = 1; m * m <= length; ++m) {
    for (Index n = m; m * n <= length; ++n) {
      if (std::abs(a(m * n) - a(m) * a(n)) > tol) {
        report.completely_multiplicative = false;
        report.first_violation = std::make_pair(m, n);
        return report;
      }
    }
  }
  return report;
}

} // namespace riesz
