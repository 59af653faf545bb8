#include "riesz/special.hpp"

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/summation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace riesz {

namespace {

using std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Beyond this weight count the Borwein coefficients leave the double range.
constexpr int kMaxBorweinTerms = 350;

// 1 - 2^{1-s}
Complex eta_factor(Complex s) { return 1.0 - std::exp((1.0 - s) * std::numbers::ln2); }

SeriesValue zeta_borwein(Complex s, Complex factor, double target) {
  const double sigma = s.real();
  const double log_bound = std::log(2.0) + std::lgamma(sigma) - detail::log_abs_gamma(s) -
                           std::log(std::abs(factor)) + std::log(10.0);
  const double log_rate = std::log(3.0 + std::sqrt(8.0));
  const double want = (log_bound - std::log(target)) / log_rate;
  int n = static_cast<int>(std::ceil(std::max(want, 1.0)));
  if (n > kMaxBorweinTerms)
    throw DomainError("zeta: |Im(s)| too large for double-precision acceleration weights");

  // t_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), d_k = sum_{i<=k} t_i; need 1 - d_k/d_n from suffix sums
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  t[0] = 1.0;
  for (int i = 1; i <= n; ++i)
    t[i] = t[i - 1] * 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
  std::vector<double> suffix(static_cast<std::size_t>(n) + 2, 0.0);
  for (int i = n; i >= 0; --i)
    suffix[i] = suffix[i + 1] + t[i];
  const double dn = suffix[0];

  CompensatedSum<Complex> acc;
  double abs_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double weight = suffix[k + 1] / dn;  // 1 - d_k / d_n
    const Complex term = weight * std::exp(-s * std::log(k + 1.0));
    abs_sum += std::abs(term);
    if (k % 2 == 0)
      acc.add(term);
    else
      acc.add(-term);
  }
  const double inv_factor = 1.0 / std::abs(factor);
  const double truncation = 0.1 * std::exp(log_bound - n * log_rate);
  const double rounding = 4.0 * n * kEps * abs_sum * inv_factor;
  return {acc.value() / factor, truncation + rounding, n};
}

} // namespace

namespace detail {

double log_abs_gamma(Complex z) {
  if (!(z.real() > 0.0))
    throw DomainError("log_abs_gamma: Re(z) must be positive");
  if (z.real() < 0.5)
    return log_abs_gamma(z + 1.0) - std::log(std::abs(z));
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  const Complex w = z - 1.0;
  Complex x = p[0];
  for (std::size_t i = 1; i < p.size(); ++i)
    x += p[i] / (w + static_cast<double>(i));
  const Complex t = w + g + 0.5;
  return 0.5 * std::log(2.0 * pi) + ((w + 0.5) * std::log(t)).real() - t.real() + std::log(std::abs(x));
}

} // namespace detail

SeriesValue zeta(Complex s, double target_abs_err) {
  if (!(s.real() > 0.0) || !std::isfinite(s.imag()))
    throw DomainError("zeta: requires Re(s) > 0");
  if (std::abs(s - 1.0) <= kZetaPoleGuard)
    throw PoleError("zeta: s lies within the pole guard of s = 1");
  if (!(target_abs_err > 0.0))
    throw DomainError("zeta: target error must be positive");

  const Complex factor = eta_factor(s);
  if (std::abs(factor) >= 1e-2 || std::abs(s.imag()) < 1.0 || s.real() <= 0.06)
    return zeta_borwein(s, factor, target_abs_err);

  // Removable zero of 1 - 2^{1-s} at s = 1 + 2 pi i m / ln 2: average over a circle of radius r.
  // The nearest singularity (s = 1) is at distance > 9, so 16 nodes leave (r/9)^16 ~ 1e-36.
  constexpr int nodes = 16;
  constexpr double radius = 0.05;
  CompensatedSum<Complex> acc;
  double bound = 0.0;
  Index terms = 0;
  for (int j = 0; j < nodes / 2; ++j) {
    const Complex w = std::polar(radius, 2.0 * pi * (j + 0.5) / nodes);
    const Complex p1 = s + w;
    const Complex p2 = s + std::conj(w);
    const SeriesValue v1 = zeta_borwein(p1, eta_factor(p1), target_abs_err);
    const SeriesValue v2 = zeta_borwein(p2, eta_factor(p2), target_abs_err);
    acc.add(v1.value + v2.value);
    bound = std::max({bound, v1.tail_bound, v2.tail_bound});
    terms += v1.terms_used + v2.terms_used;
  }
  return {acc.value() / static_cast<double>(nodes), bound + 1e-30, terms};
}

namespace {

// Below this many terms the plain sum with its integral tail bound is used.
constexpr double kDirectBudget = 65536.0;
// Terms summed explicitly before the Abel-Plana tail.
constexpr int kHeadTerms = 64;

Complex polylog_direct(double k, double theta, Index n_terms) {
  CompensatedSum<Complex> acc;
  for (Index n = 1; n <= n_terms; ++n) {
    const double nn = static_cast<double>(n);
    acc.add(std::polar(std::pow(nn, -k), nn * theta));
  }
  return acc.value();
}

// f(x) = e^{i theta x} x^{-k} summed over n >= a with the Abel-Plana formula
//   sum_{n>=a} f(n) = int_a^inf f + f(a)/2 + i int_0^inf (f(a+iy) - f(a-iy)) / (e^{2 pi y} - 1) dy.
Complex abel_plana_tail(double k, double theta, double a) {
  const Complex phase = std::polar(1.0, theta * a);
  const Complex head = 0.5 * phase * std::pow(a, -k);

  // int_a^inf f: rotate onto x = a + i sign(theta) u, then v = u / a.
  Complex integral;
  if (theta == 0.0) {
    integral = std::pow(a, 1.0 - k) / (k - 1.0);
  } else {
    const double sgn = theta > 0.0 ? 1.0 : -1.0;
    const double beta = std::abs(theta) * a;
    // exp-sinh rule: v = exp(pi/2 sinh t)
    constexpr double h = 1.0 / 64.0;
    CompensatedSum<Complex> acc;
    for (int j = -400; j <= 400; ++j) {
      const double tt = j * h;
      const double v = std::exp(0.5 * pi * std::sinh(tt));
      if (v == 0.0)
        continue;
      if (beta * v > 745.0 || !std::isfinite(v))
        break;
      const double dv = 0.5 * pi * std::cosh(tt) * v;
      const Complex g = std::exp(-beta * v) * std::pow(Complex(1.0, sgn * v), -k);
      acc.add(h * dv * g);
    }
    integral = Complex(0.0, sgn) * phase * std::pow(a, 1.0 - k) * acc.value();
  }

  // Plana correction; the integrand decays like e^{-(2 pi - |theta|) y}.
  const auto& rule = quad::gauss_legendre(16);
  const double y_max = 40.0 / (2.0 * pi - std::abs(theta));
  const int panels = static_cast<int>(std::ceil(y_max));
  CompensatedSum<Complex> plana;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double y = p + 0.5 * (rule.nodes[q] + 1.0);
      const Complex up = std::exp(-theta * y) * std::pow(Complex(a, y), -k);
      const Complex down = std::exp(theta * y) * std::pow(Complex(a, -y), -k);
      plana.add(0.5 * rule.weights[q] * (up - down) / std::expm1(2.0 * pi * y));
    }
  }
  const Complex correction = Complex(0.0, 1.0) * phase * plana.value();
  return head + integral + correction;
}

} // namespace

Complex polylog_circle(double k, double theta) {
  if (!(k > 1.0) || !std::isfinite(k))
    throw DomainError("polylog_circle: requires k > 1; use the coefficient route for k <= 1");
  if (!std::isfinite(theta))
    throw DomainError("polylog_circle: theta must be finite");
  if (std::abs(theta) > pi)
    theta = std::remainder(theta, 2.0 * pi);

  // N^{1-k} / (k - 1) <= 1e-13 leaves a decade of margin on the 1e-12 contract
  const double needed = std::pow(1e-13 * (k - 1.0), -1.0 / (k - 1.0));
  if (needed <= kDirectBudget)
    return polylog_direct(k, theta, static_cast<Index>(std::ceil(needed)));
  return polylog_direct(k, theta, kHeadTerms) + abel_plana_tail(k, theta, kHeadTerms + 1.0);
}

double phi_polylog(double k, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("phi_polylog: x must lie in [0, 1]");
  const Complex lower = polylog_circle(k, -pi * x);
  const Complex upper = polylog_circle(k, pi * x);
  const Complex phi = Complex(0.0, 1.0 / std::numbers::sqrt2) * (lower - upper);
  if (std::abs(phi.imag()) > 1e-13)
    throw NumericalError("phi_polylog: imaginary residue exceeds 1e-13");
  return phi.real();
}

double phi_polylog_periodic(double k, double y) {
  if (!std::isfinite(y))
    throw DomainError("phi_polylog_periodic: y must be finite");
  const double r = y - 2.0 * std::nearbyint(0.5 * y);  // in [-1, 1]
  return r < 0.0 ? -phi_polylog(k, -r) : phi_polylog(k, r);
}

SeriesValue dirichlet_series(const CoeffVector& a, Complex s, double target_abs_err, bool best_effort) {
  const Index n_stored = a.size();
  const double sigma = s.real();
  Index n_terms = n_stored;
  double tail = std::numeric_limits<double>::infinity();

  const auto& decay = a.decay();
  if (decay && std::isinf(decay->k)) {
    tail = 0.0;
  } else if (decay && decay->k + sigma > 1.0) {
    const double e = decay->k + sigma;
    const double c = decay->C;
    if (c == 0.0) {
      tail = 0.0;
    } else {
      const double enough = std::pow(c / ((e - 1.0) * target_abs_err), 1.0 / (e - 1.0));
      if (enough < static_cast<double>(n_stored))
        n_terms = std::max<Index>(1, static_cast<Index>(std::ceil(enough)));
      tail = c * std::pow(static_cast<double>(n_terms), 1.0 - e) / (e - 1.0);
    }
  } else if (!best_effort) {
    throw InsufficientDecayError(decay ? "dirichlet_series: decay exponent too small for Re(s)"
                                       : "dirichlet_series: coefficient vector has no decay metadata");
  }

  CompensatedSum<Complex> acc;
  for (Index n = 1; n <= n_terms; ++n) {
    const Complex an = a(n);
    if (an == Complex{})
      continue;
    acc.add(n == 1 ? an : an * std::exp(-s * std::log(static_cast<double>(n))));
  }
  return {acc.value(), tail, n_terms};
}

} // namespace riesz
