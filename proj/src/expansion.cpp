#include "riesz/expansion.hpp"

#include "riesz/dirichlet.hpp"
#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/summation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace riesz {

namespace {

using std::numbers::pi;

bool power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

SineTransform dst_route(const std::function<Complex(double)>& psi, Index N) {
  const Index P = N + 1;
  std::vector<Complex> samples(static_cast<std::size_t>(P - 1));
  for (Index j = 1; j < P; ++j)
    samples[static_cast<std::size_t>(j - 1)] = psi(static_cast<double>(j) / static_cast<double>(P));
  // sin(pi m / P) for m in [0, 2P): every product n j reduces onto this table exactly
  std::vector<double> table(static_cast<std::size_t>(2 * P));
  for (Index m = 0; m < 2 * P; ++m) {
    const double y = static_cast<double>(m) / static_cast<double>(P);  // in [0, 2)
    table[static_cast<std::size_t>(m)] = (m == 0 || m == P) ? 0.0 : std::sin(pi * (y > 1.0 ? y - 2.0 : y));
  }
  Eigen::VectorXcd out(N);
  const double scale = std::numbers::sqrt2 / static_cast<double>(P);
  for (Index n = 1; n <= N; ++n) {
    CompensatedSum<Complex> acc;
    Index m = 0;
    for (Index j = 1; j < P; ++j) {
      m += n;
      if (m >= 2 * P)
        m -= 2 * P;
      acc.add(samples[static_cast<std::size_t>(j - 1)] * table[static_cast<std::size_t>(m)]);
    }
    out[n - 1] = scale * acc.value();
  }
  return {SineVector{CoeffVector(std::move(out))}, QuadMethod::Dst, P - 1};
}

SineTransform gauss_route(const std::function<Complex(double)>& psi, Index N, const QuadConfig& quad) {
  const auto& rule = quad::gauss_legendre(quad.gauss_order);
  const Index order = static_cast<Index>(rule.nodes.size());
  // mode N has N/2 periods on [0, 1]; 16 samples per period
  const Index panels = std::max<Index>(1, (8 * N + order - 1) / order);
  const Index points = panels * order;
  if (points > quad.max_points)
    throw ResolutionError("sine_coefficients: quadrature budget too small for the requested modes");

  std::vector<double> xs(static_cast<std::size_t>(points));
  std::vector<Complex> weighted(static_cast<std::size_t>(points));
  const double h = 1.0 / static_cast<double>(panels);
  for (Index p = 0; p < panels; ++p)
    for (Index q = 0; q < order; ++q) {
      const double x = (static_cast<double>(p) + 0.5 * (rule.nodes[q] + 1.0)) * h;
      const auto i = static_cast<std::size_t>(p * order + q);
      xs[i] = x;
      weighted[i] = 0.5 * h * rule.weights[q] * psi(x);
    }

  std::vector<CompensatedSum<Complex>> acc(static_cast<std::size_t>(N));
  constexpr Index kAnchorEvery = 64;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Complex step = std::polar(1.0, pi * xs[i]);
    Complex rot = step;
    for (Index n = 1; n <= N; ++n) {
      if (n % kAnchorEvery == 0)
        rot = std::polar(1.0, pi * static_cast<double>(n) * xs[i]);
      acc[static_cast<std::size_t>(n - 1)].add(weighted[i] * rot.imag());
      rot *= step;
    }
  }
  Eigen::VectorXcd out(N);
  for (Index n = 0; n < N; ++n)
    out[n] = std::numbers::sqrt2 * acc[static_cast<std::size_t>(n)].value();
  return {SineVector{CoeffVector(std::move(out))}, QuadMethod::Gauss, points};
}

} // namespace

SineTransform sine_coefficients(const std::function<Complex(double)>& psi, Index N, const QuadConfig& quad) {
  if (N < 1)
    throw LengthError("sine_coefficients: need at least one mode");
  switch (quad.method) {
  case QuadMethod::Dst:
    if (!power_of_two(N + 1))
      throw ResolutionError("sine_coefficients: the sine-transform route needs N + 1 to be a power of two");
    return dst_route(psi, N);
  case QuadMethod::Gauss: return gauss_route(psi, N, quad);
  case QuadMethod::Auto: break;
  }
  return power_of_two(N + 1) ? dst_route(psi, N) : gauss_route(psi, N, quad);
}

SineVector synthesize(const DilatedSystem& sys, const CoeffVector& c) {
  if (c.size() > sys.size())
    throw LengthError("synthesize: coefficient vector longer than the system truncation");
  return {dirichlet_convolve(sys.generator(), c, c.size())};
}

ExpansionResult analyze(const DilatedSystem& sys, const SineVector& psi) {
  const Index N = psi.size();
  if (N > sys.size())
    throw LengthError("analyze: input longer than the system truncation");
  CoeffVector c = dirichlet_convolve(sys.dual().b, psi.coeffs, N);
  const SineVector back = synthesize(sys, c);
  const double residual = (psi.coeffs.values() - back.coeffs.values()).norm();
  return {std::move(c), psi, residual};
}

StabilityReport stability_report(const DilatedSystem& sys, Index trials, Index M, std::uint64_t seed) {
  const Index N = sys.size();
  if (M < 1 || M > N)
    throw LengthError("stability_report: need 1 <= M <= N");
  if (trials < 1)
    throw LengthError("stability_report: need at least one trial");
  const CoeffVector& b = sys.dual().b;
  std::vector<double> ratios(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](Index t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(static_cast<std::uint64_t>(t) >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(N);
    for (Index k = 0; k < M; ++k) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      psi[k] = Complex(re, im);
    }
    psi /= psi.norm();
    const Eigen::VectorXcd c = kernel::convolve(b.values(), psi, N);
    ratios[static_cast<std::size_t>(t)] = c.norm();
  });
  StabilityReport r;
  r.trials = trials;
  r.M = M;
  r.N = N;
  r.seed = seed;
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = 0.0;
  CompensatedSum<double> total;
  for (double x : ratios) {
    r.min_ratio = std::min(r.min_ratio, x);
    r.max_ratio = std::max(r.max_ratio, x);
    total.add(x);
  }
  r.mean_ratio = total.value() / static_cast<double>(trials);
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Bounded: return "BOUNDED";
  case Verdict::UnboundedSuspected: return "UNBOUNDED_SUSPECTED";
  case Verdict::NearZeroSuspected: return "NEAR_ZERO_SUSPECTED";
  case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

using Evaluator = std::function<SeriesValue(Complex)>;

void check_region(const ScanRegion& region, double step) {
  if (!(step > 0.0))
    throw DomainError("scan: step must be positive");
  if (!(region.re_min >= 0.01 - 1e-12))
    throw DomainError("scan: the region must keep Re(s) >= 0.01");
  if (!(region.re_max >= region.re_min) || !(region.im_max >= region.im_min))
    throw DomainError("scan: empty region");
}

ScanGrid build_grid(const Evaluator& eval, const ScanRegion& region, double step) {
  check_region(region, step);
  const Index n_sigma = static_cast<Index>(std::floor((region.re_max - region.re_min) / step + 1e-9)) + 1;
  const Index j_lo = static_cast<Index>(std::ceil(region.im_min / step - 1e-9));
  const Index j_hi = static_cast<Index>(std::floor(region.im_max / step + 1e-9));
  ScanGrid g;
  g.sigma.resize(n_sigma);
  for (Index i = 0; i < n_sigma; ++i)
    g.sigma[i] = region.re_min + static_cast<double>(i) * step;
  g.t.resize(j_hi - j_lo + 1);
  for (Index j = j_lo; j <= j_hi; ++j)
    g.t[j - j_lo] = static_cast<double>(j) * step;

  const Index n_t = g.t.size();
  g.modulus.resize(n_sigma, n_t);
  Eigen::MatrixXd tails(n_sigma, n_t);
  parallel_for(n_sigma * n_t, [&](Index p) {
    const Index i = p / n_t;
    const Index j = p % n_t;
    try {
      const SeriesValue v = eval(Complex(g.sigma[i], g.t[j]));
      g.modulus(i, j) = std::abs(v.value);
      tails(i, j) = v.tail_bound;
    } catch (const PoleError&) {
      g.modulus(i, j) = std::numeric_limits<double>::quiet_NaN();
      tails(i, j) = 0.0;
    }
  });
  for (Index i = 0; i < n_sigma; ++i)
    for (Index j = 0; j < n_t; ++j) {
      if (std::isnan(g.modulus(i, j)))
        g.masked_cells.emplace_back(g.sigma[i], g.t[j]);
      g.max_tail = std::max(g.max_tail, tails(i, j));
    }
  return g;
}

struct Extremes {
  double min_abs{std::numeric_limits<double>::infinity()};
  double max_abs{-std::numeric_limits<double>::infinity()};
  Complex argmin;
  Complex argmax;
};

// one pass of spacing step/100 over [s* - step, s* + step]^2, clipped to the region
void refine_around(const Evaluator& eval, const ScanRegion& region, double step, Complex centre, Extremes& ext,
                   ScanReport& report) {
  constexpr Index kSub = 100;
  const double fine = step / static_cast<double>(kSub);
  const Index side = 2 * kSub + 1;
  std::vector<double> mod(static_cast<std::size_t>(side * side), std::numeric_limits<double>::quiet_NaN());
  std::vector<double> tails(static_cast<std::size_t>(side * side), 0.0);
  std::vector<char> pole(static_cast<std::size_t>(side * side), 0);
  parallel_for(side * side, [&](Index p) {
    const double sigma = centre.real() + static_cast<double>(p / side - kSub) * fine;
    const double t = centre.imag() + static_cast<double>(p % side - kSub) * fine;
    if (sigma < region.re_min || sigma > region.re_max || t < region.im_min || t > region.im_max)
      return;
    try {
      const SeriesValue v = eval(Complex(sigma, t));
      mod[static_cast<std::size_t>(p)] = std::abs(v.value);
      tails[static_cast<std::size_t>(p)] = v.tail_bound;
    } catch (const PoleError&) {
      pole[static_cast<std::size_t>(p)] = 1;
    }
  });
  for (Index p = 0; p < side * side; ++p) {
    const Complex s(centre.real() + static_cast<double>(p / side - kSub) * fine,
                    centre.imag() + static_cast<double>(p % side - kSub) * fine);
    if (pole[static_cast<std::size_t>(p)])
      report.masked_cells.push_back(s);
    const double m = mod[static_cast<std::size_t>(p)];
    if (std::isnan(m))
      continue;
    ++report.points;
    report.max_tail = std::max(report.max_tail, tails[static_cast<std::size_t>(p)]);
    if (m < ext.min_abs) {
      ext.min_abs = m;
      ext.argmin = s;
    }
    if (m > ext.max_abs) {
      ext.max_abs = m;
      ext.argmax = s;
    }
  }
}

ScanReport run_scan(const Evaluator& eval, const ScanRegion& region, double step, const ScanThresholds& thr) {
  const ScanGrid grid = build_grid(eval, region, step);
  ScanReport report;
  report.region = region;
  report.step = step;
  report.thresholds = thr;
  report.masked_cells = grid.masked_cells;
  report.max_tail = grid.max_tail;

  Extremes ext;
  for (Index i = 0; i < grid.sigma.size(); ++i)
    for (Index j = 0; j < grid.t.size(); ++j) {
      const double m = grid.modulus(i, j);
      if (std::isnan(m))
        continue;
      ++report.points;
      if (m < ext.min_abs) {
        ext.min_abs = m;
        ext.argmin = {grid.sigma[i], grid.t[j]};
      }
      if (m > ext.max_abs) {
        ext.max_abs = m;
        ext.argmax = {grid.sigma[i], grid.t[j]};
      }
    }
  if (report.points == 0)
    throw NumericalError("scan: every grid cell is masked");

  const Complex coarse_min = ext.argmin;
  const Complex coarse_max = ext.argmax;
  ScanReport scratch;
  refine_around(eval, region, step, coarse_max, ext, scratch);
  refine_around(eval, region, step, coarse_min, ext, scratch);
  report.points += scratch.points;
  report.max_tail = std::max(report.max_tail, scratch.max_tail);
  for (const Complex& c : scratch.masked_cells)
    report.masked_cells.push_back(c);

  report.min_abs = ext.min_abs;
  report.max_abs = ext.max_abs;
  report.argmin = ext.argmin;
  report.argmax = ext.argmax;

  if (!std::isfinite(report.max_tail) || report.max_tail > thr.lo)
    report.verdict = Verdict::Inconclusive;
  else if (report.max_abs > thr.hi)
    report.verdict = Verdict::UnboundedSuspected;
  else if (report.min_abs < thr.lo)
    report.verdict = Verdict::NearZeroSuspected;
  else
    report.verdict = Verdict::Bounded;
  return report;
}

Evaluator system_evaluator(const DilatedSystem& sys) {
  return [sys](Complex s) { return sys.l_series(s); };
}

Evaluator raw_evaluator(const CoeffVector& a) {
  return [a](Complex s) { return dirichlet_series(a, s, std::numeric_limits<double>::min(), true); };
}

} // namespace

ScanGrid halfplane_grid(const DilatedSystem& sys, const ScanRegion& region, double step) {
  return build_grid(system_evaluator(sys), region, step);
}

ScanGrid halfplane_grid(const CoeffVector& a, const ScanRegion& region, double step) {
  return build_grid(raw_evaluator(a), region, step);
}

ScanReport halfplane_scan(const DilatedSystem& sys, const ScanRegion& region, double step,
                          const ScanThresholds& thresholds) {
  return run_scan(system_evaluator(sys), region, step, thresholds);
}

ScanReport halfplane_scan(const CoeffVector& a, const ScanRegion& region, double step,
                          const ScanThresholds& thresholds) {
  return run_scan(raw_evaluator(a), region, step, thresholds);
}

} // namespace riesz
