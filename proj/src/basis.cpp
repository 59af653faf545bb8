#include "riesz/basis.hpp"

#include "riesz/dirichlet.hpp"
#include "riesz/errors.hpp"
#include "riesz/expansion.hpp"
#include "riesz/io.hpp"
#include "riesz/parallel.hpp"
#include "riesz/summation.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <numbers>

namespace riesz {

std::string Family::label() const {
  switch (kind) {
  case FamilyKind::Polylog: return "polylog(k=" + io::format_number(k) + ")";
  case FamilyKind::Delta: return "delta";
  case FamilyKind::Custom: return "custom";
  }
  return "custom";
}

struct DilatedSystem::State {
  State(CoeffVector a_, Complex normalization_, Family family_)
      : a(std::move(a_)), normalization(normalization_), family(family_) {}

  CoeffVector a;
  Complex normalization{1.0};
  Family family;
  mutable std::once_flag dual_once;
  mutable std::unique_ptr<DualSystem> dual;
};

DilatedSystem DilatedSystem::polylog(double k, Index n) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError("polylog family needs a finite order k > 0");
  if (n < 1)
    throw LengthError("system truncation must be positive");
  auto a = CoeffVector::generate(n, [k](Index i) { return Complex(std::pow(static_cast<double>(i), -k)); },
                                 Decay{1.0, k});
  return DilatedSystem(std::make_shared<const State>(std::move(a), 1.0, Family{FamilyKind::Polylog, k}));
}

DilatedSystem DilatedSystem::delta(Index n) {
  if (n < 1)
    throw LengthError("system truncation must be positive");
  return DilatedSystem(
      std::make_shared<const State>(CoeffVector::delta(n), 1.0, Family{FamilyKind::Delta, 0.0}));
}

DilatedSystem DilatedSystem::from_coefficients(const CoeffVector& a) {
  const Complex a1 = a(1);
  if (a1 == Complex{})
    throw NonInvertibleError("generator needs a[1] != 0");
  CoeffVector normalized = a1 == Complex(1.0) ? a : a.scaled(1.0 / a1);
  return DilatedSystem(
      std::make_shared<const State>(std::move(normalized), a1, Family{FamilyKind::Custom, 0.0}));
}

const CoeffVector& DilatedSystem::generator() const { return state_->a; }
Complex DilatedSystem::normalization() const { return state_->normalization; }
const Family& DilatedSystem::family() const { return state_->family; }

CoeffVector DilatedSystem::coefficients(Index n) const {
  const auto& a = generator();
  if (n <= a.size())
    return a.head(n);
  switch (family().kind) {
  case FamilyKind::Polylog: {
    const double k = family().k;
    return CoeffVector::generate(n, [k](Index i) { return Complex(std::pow(static_cast<double>(i), -k)); },
                                 Decay{1.0, k});
  }
  case FamilyKind::Delta: return CoeffVector::delta(n);
  case FamilyKind::Custom: break;
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v.head(a.size()) = a.values();
  return CoeffVector(std::move(v), a.decay());
}

const DualSystem& DilatedSystem::dual() const {
  std::call_once(state_->dual_once, [this] {
    const auto& a = generator();
    CoeffVector b = dirichlet_inverse(a);
    const CoeffVector unit = dirichlet_convolve(a, b);
    double residual = 0.0;
    for (Index n = 1; n <= unit.size(); ++n)
      residual = std::max(residual, std::abs(unit(n) - (n == 1 ? 1.0 : 0.0)));
    state_->dual = std::make_unique<DualSystem>(DualSystem{std::move(b), residual});
  });
  return *state_->dual;
}

SeriesValue DilatedSystem::l_series(Complex s, double target_abs_err) const {
  switch (family().kind) {
  case FamilyKind::Polylog: return zeta(s + family().k, target_abs_err);
  case FamilyKind::Delta: return {Complex(1.0), 0.0, 1};
  case FamilyKind::Custom: break;
  }
  return dirichlet_series(generator(), s, target_abs_err, true);
}

SineVector phi_coefficients(const DilatedSystem& sys, Index n, Index K) {
  if (n < 1 || n > sys.size())
    throw LengthError("phi_coefficients: index out of range");
  if (K < 1)
    throw LengthError("phi_coefficients: truncation must be positive");
  const CoeffVector a = sys.coefficients(K / n == 0 ? 1 : K / n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(K);
  for (Index j = 1; j * n <= K; ++j)
    v[j * n - 1] = a(j);
  return {CoeffVector(std::move(v))};
}

SineVector dual_coefficients(const DilatedSystem& sys, Index n) {
  if (n < 1 || n > sys.size())
    throw LengthError("dual_coefficients: index out of range");
  const CoeffVector& b = sys.dual().b;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  for (const auto d : divisors(n))
    v[d - 1] = std::conj(b(n / d));
  return {CoeffVector(std::move(v))};
}

double biorthogonality_check(const DilatedSystem& sys, Index M) {
  if (M < 1 || M > sys.size())
    throw LengthError("biorthogonality_check: size out of range");
  std::vector<SineVector> duals, phis;
  duals.reserve(static_cast<std::size_t>(M));
  phis.reserve(static_cast<std::size_t>(M));
  for (Index n = 1; n <= M; ++n) {
    duals.push_back(dual_coefficients(sys, n));
    phis.push_back(phi_coefficients(sys, n, M));
  }
  double worst = 0.0;
  for (Index m = 1; m <= M; ++m)
    for (Index n = 1; n <= M; ++n) {
      const Complex pairing = inner(duals[m - 1], phis[n - 1]);
      worst = std::max(worst, std::abs(pairing - (m == n ? 1.0 : 0.0)));
    }
  return worst;
}

namespace {

// sum_{j > J} j^{-p} for p > 1
double power_tail(Index J, double p) {
  if (J < 1)
    return 1.0 + 1.0 / (p - 1.0);
  return std::pow(static_cast<double>(J), 1.0 - p) / (p - 1.0);
}

const Decay& square_summable_decay(const DilatedSystem& sys) {
  const auto& d = sys.generator().decay();
  if (!d)
    throw InsufficientDecayError("Gram data needs decay metadata on the generator");
  if (!std::isinf(d->k) && !(2.0 * d->k > 1.0))
    throw InsufficientDecayError("generator envelope is not square-summable (need k > 1/2)");
  return *d;
}

} // namespace

GramSummary gram_matrix(const DilatedSystem& sys, Index M, Index K) {
  if (M < 1 || M > sys.size())
    throw LengthError("gram_matrix: size out of range");
  if (K < M)
    throw LengthError("gram_matrix: truncation K must be at least M");
  const Decay decay = square_summable_decay(sys);
  const CoeffVector a = sys.coefficients(K);

  std::vector<std::pair<Index, Index>> pairs;
  for (Index m = 1; m <= M; ++m)
    for (Index n = m; n <= M; ++n)
      pairs.emplace_back(m, n);

  std::vector<Complex> values(pairs.size());
  std::vector<double> tails(pairs.size());
  const Index stored = sys.size();
  const bool closed = sys.closed_form();
  parallel_for(static_cast<Index>(pairs.size()), [&](Index p) {
    const auto [m, n] = pairs[static_cast<std::size_t>(p)];
    const Index lcm = std::lcm(m, n);
    const Index sm = lcm / m;
    const Index sn = lcm / n;
    CompensatedSum<Complex> acc;
    for (Index j = 1, k = lcm; k <= K; ++j, k += lcm)
      acc.add(std::conj(a(j * sm)) * a(j * sn));
    Complex g = acc.value();
    if (m == n)
      g = g.real();
    values[static_cast<std::size_t>(p)] = g;

    if (std::isinf(decay.k)) {
      tails[static_cast<std::size_t>(p)] = 0.0;
    } else {
      const Index reach = closed ? K : std::min(K, stored * std::min(m, n));
      const double scale = std::pow(static_cast<double>(m) * static_cast<double>(n) /
                                        (static_cast<double>(lcm) * static_cast<double>(lcm)),
                                    decay.k);
      tails[static_cast<std::size_t>(p)] = decay.C * decay.C * scale * power_tail(reach / lcm, 2.0 * decay.k);
    }
  });

  GramSummary out;
  out.M = M;
  out.K = K;
  out.entries.resize(M, M);
  double frob = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [m, n] = pairs[p];
    out.entries(m - 1, n - 1) = values[p];
    out.entries(n - 1, m - 1) = std::conj(values[p]);
    frob += (m == n ? 1.0 : 2.0) * tails[p] * tails[p];
  }
  out.tail_bound = std::sqrt(frob);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out.entries);
  if (solver.info() != Eigen::Success)
    throw NumericalError("gram_matrix: eigen-decomposition did not converge");
  const auto& lambda = solver.eigenvalues();
  out.lambda_min = lambda[0];
  out.lambda_max = lambda[M - 1];
  const Eigen::MatrixXcd resid =
      out.entries * solver.eigenvectors() - solver.eigenvectors() * lambda.cast<Complex>().asDiagonal();
  out.eig_residual = resid.colwise().norm().maxCoeff();
  if (out.eig_residual > 1e-10 * std::abs(out.lambda_max))
    throw NumericalError("gram_matrix: eigenpair residual above 1e-10 lambda_max");
  out.cond = out.lambda_min > 0.0 ? out.lambda_max / out.lambda_min : std::numeric_limits<double>::infinity();
  return out;
}

GramSummary gram_matrix(const DilatedSystem& sys, Index M) { return gram_matrix(sys, M, (Index{1} << 16) * M); }

Corridor riesz_corridor(const DilatedSystem& sys, double t_max, double step) {
  if (!(step > 0.0))
    throw DomainError("riesz_corridor: step must be positive");
  if (!(t_max >= 0.0))
    throw DomainError("riesz_corridor: t_max must be non-negative");
  const Index J = static_cast<Index>(std::floor(t_max / step + 1e-9));
  const bool real_generator = sys.closed_form() || sys.generator().values().imag().isZero(0.0);

  const Index first = real_generator ? 0 : -J;
  const Index count = J - first + 1;
  std::vector<double> mod2(static_cast<std::size_t>(count));
  std::vector<double> tail(static_cast<std::size_t>(count));
  parallel_for(count, [&](Index i) {
    const double t = static_cast<double>(first + i) * step;
    const SeriesValue v = sys.l_series(Complex(0.5, t));
    mod2[static_cast<std::size_t>(i)] = std::norm(v.value);
    tail[static_cast<std::size_t>(i)] = v.tail_bound;
  });

  Corridor c;
  c.lo = std::numeric_limits<double>::infinity();
  c.hi = -std::numeric_limits<double>::infinity();
  auto visit = [&](Index j, std::size_t slot) {
    const double t = static_cast<double>(j) * step;
    if (mod2[slot] < c.lo) {
      c.lo = mod2[slot];
      c.t_lo = t;
    }
    if (mod2[slot] > c.hi) {
      c.hi = mod2[slot];
      c.t_hi = t;
    }
    c.tail_bound = std::max(c.tail_bound, tail[slot]);
  };
  // ascending t; a real generator reuses the t >= 0 values for -t
  for (Index j = -J; j <= J; ++j) {
    const Index src = real_generator ? std::abs(j) : j;
    visit(j, static_cast<std::size_t>(src - first));
  }
  c.points = 2 * J + 1;
  return c;
}

BariResidual bari_g_residual(const DilatedSystem& sys, Index M, Index K) {
  if (M < 1 || M > sys.size() || K < M)
    throw LengthError("bari_g_residual: need 1 <= M <= min(N, K)");
  const CoeffVector a = sys.coefficients(K);
  const auto& decay = sys.generator().decay();

  BariResidual out;
  for (Index n = 1; n <= M; ++n) {
    const SineVector dual = dual_coefficients(sys, n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(K);
    v.head(dual.size()) = dual.coeffs.values();

    // w = U^dagger v: w[l] = sum_{l | k <= K} conj(a[k/l]) v[k]
    Eigen::VectorXcd w(K);
    for (Index l = 1; l <= K; ++l) {
      CompensatedSum<Complex> acc;
      for (Index q = 1, k = l; k <= K; ++q, k += l)
        if (v[k - 1] != Complex{})
          acc.add(std::conj(a(q)) * v[k - 1]);
      w[l - 1] = acc.value();
    }
    // r = U w: r[j] = sum_{l | j} a[j/l] w[l], ascending l per entry
    std::vector<CompensatedSum<Complex>> racc(static_cast<std::size_t>(K));
    for (Index l = 1; l <= K; ++l) {
      const Complex wl = w[l - 1];
      if (wl == Complex{})
        continue;
      for (Index q = 1, j = l; j <= K; ++q, j += l)
        racc[static_cast<std::size_t>(j - 1)].add(a(q) * wl);
    }
    const SineVector phi = phi_coefficients(sys, n, K);
    double diff2 = 0.0;
    for (Index j = 1; j <= K; ++j)
      diff2 += std::norm(phi(j) - racc[static_cast<std::size_t>(j - 1)].value());
    const double phi_norm = phi.norm();
    out.residual = std::max(out.residual, std::sqrt(diff2) / phi_norm);

    double truncation = std::numeric_limits<double>::infinity();
    if (decay)
      truncation = std::isinf(decay->k) ? 0.0 : decay->C * std::sqrt(power_tail(K / n, 2.0 * decay->k));
    const double rounding = 32.0 * std::numeric_limits<double>::epsilon() * std::log2(static_cast<double>(K) + 1.0);
    out.tail_bound = std::max(out.tail_bound, truncation / phi_norm + rounding);
  }
  return out;
}

GeneratorCheck dilation_generator_check(const std::function<double(double)>& f, double x, double lambda,
                                        double h) {
  auto inside = [](double y) { return y > 0.0 && y < 1.0; };
  const double scale = std::exp(lambda);
  if (!inside(x) || !inside(scale * x) || !(h > 0.0) || !inside(x - h) || !inside(x + h) ||
      !inside(x * std::exp(h)) || !inside(x * std::exp(-h)))
    throw DomainError("dilation_generator_check: evaluation points must stay inside (0, 1)");

  GeneratorCheck out;
  const double half = std::exp(0.5 * lambda);
  const double direct = f(scale * x);
  const double composed = f(half * (half * x));
  const double denom = std::max(std::abs(direct), std::numeric_limits<double>::min());
  out.identity_error = direct == composed ? 0.0 : std::abs(direct - composed) / denom;

  const double dilation_rate = (f(x * std::exp(h)) - f(x * std::exp(-h))) / (2.0 * h);
  const double x_fprime = x * (f(x + h) - f(x - h)) / (2.0 * h);
  out.generator_error = x_fprime == 0.0 ? std::numeric_limits<double>::infinity()
                                        : std::abs(dilation_rate - x_fprime) / std::abs(x_fprime);
  return out;
}

double dilation_identity_residual(Index n, Index modes) {
  if (n < 1 || n > modes)
    throw LengthError("dilation_identity_residual: n must lie in [1, modes]");
  const double scale = std::exp(std::log(static_cast<double>(n)));
  const auto dilated = [scale](double x) {
    return Complex(std::numbers::sqrt2 * std::sin(std::numbers::pi * scale * x));
  };
  const SineTransform tr = sine_coefficients(dilated, modes, {QuadMethod::Dst});
  double worst = 0.0;
  for (Index k = 1; k <= modes; ++k)
    worst = std::max(worst, std::abs(tr.psi(k) - (k == n ? 1.0 : 0.0)));
  return worst;
}

} // namespace riesz
