#include <riesz/basis.hpp>
#include <riesz/coeff_vector.hpp>
#include <riesz/dirichlet.hpp>
#include <riesz/errors.hpp>
#include <riesz/expansion.hpp>
#include <riesz/io.hpp>
#include <riesz/parallel.hpp>
#include <riesz/special.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace riesz;
using io::format_number;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Options {
  double k{2.0};
  std::string coeffs;
  bool delta{false};
  std::optional<double> decay_k;
  Index modes{0};
  Index gram_size{64};
  Index trunc{0};
  double re_min{0.01};
  double re_max{4.0};
  double im_max{50.0};
  double step{0.05};
  double hi{1e3};
  double lo{1e-3};
  std::uint64_t seed{20240601};
  std::string out{"."};
  std::string format;
  std::string target{"parabola"};
  Index points{512};
  Index curves{5};
  bool entries{false};
};

/// Raised for failures that should exit with the numerical-failure code.
struct ToleranceFailure : Error {
  using Error::Error;
};

CoeffVector padded(const CoeffVector& a, Index n) {
  if (a.size() >= n)
    return a;
  return CoeffVector::generate(n, [&](Index i) { return a.at_or_zero(i); }, a.decay());
}

CoeffVector load_coeffs(const Options& o) {
  CoeffVector a = read_coeff_csv(o.coeffs);
  if (o.decay_k)
    a = a.with_decay(Decay{a.fitted_constant(*o.decay_k), *o.decay_k});
  return a;
}

/// The generator as given (no normalisation), extended to n entries.
CoeffVector raw_generator(const Options& o, Index n) {
  if (o.delta)
    return CoeffVector::delta(n);
  if (!o.coeffs.empty())
    return padded(load_coeffs(o), n);
  return DilatedSystem::polylog(o.k, n).generator();
}

DilatedSystem make_system(const Options& o, Index n) {
  if (o.delta)
    return DilatedSystem::delta(n);
  if (!o.coeffs.empty())
    return DilatedSystem::from_coefficients(padded(load_coeffs(o), n));
  return DilatedSystem::polylog(o.k, n);
}

std::string family_label(const Options& o) {
  if (o.delta)
    return "delta";
  if (!o.coeffs.empty())
    return "coeffs:" + o.coeffs;
  return "polylog:" + format_number(o.k);
}

std::ofstream open_output(const Options& o, const std::string& name) {
  std::error_code ec;
  fs::create_directories(o.out, ec);
  const fs::path path = fs::path(o.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw IoError("cannot write " + path.string());
  return f;
}

void close_output(std::ofstream& f, const Options& o, const std::string& name) {
  f.close();
  if (!f)
    throw IoError("failed writing " + (fs::path(o.out) / name).string());
  std::cout << "wrote " << (fs::path(o.out) / name).string() << '\n';
}

bool wants(const Options& o, const std::string& fmt) { return o.format.empty() || o.format == fmt; }

// ---------------------------------------------------------------------------------------------
// figure

/// Terms j of sum_j a_j sin(j theta) needed for an Abel tail below tol, for a_j = j^{-k}.
double abel_terms(double k, double theta, double tol) {
  const double s = std::abs(std::sin(0.5 * theta));
  return std::pow(std::numbers::sqrt2 / (tol * s), 1.0 / k);
}

int cmd_figure(const Options& o) {
  constexpr double kTailTol = 1e-9;
  constexpr double kCrossTol = 1e-8;
  constexpr Index kMaxTerms = Index{1} << 22;
  const Index P = o.points;
  const Index curves = o.curves;
  if (P < 2 || curves < 1)
    throw DomainError("figure: need --points >= 2 and --curves >= 1");

  const bool polylog = !o.delta && o.coeffs.empty();
  if (polylog && !(o.k > 1.0))
    throw DomainError("figure: the polylog family needs k > 1 for a pointwise series");

  // terms[n][i]: truncation for phi_n at x_i = i / P; zero when n x_i is an integer (every term vanishes)
  std::vector<std::vector<Index>> terms(static_cast<std::size_t>(curves), std::vector<Index>(static_cast<std::size_t>(P)));
  Index custom_size = 0;
  if (!o.coeffs.empty())
    custom_size = load_coeffs(o).size();
  for (Index n = 1; n <= curves; ++n)
    for (Index i = 0; i < P; ++i) {
      Index t = 0;
      if ((n * i) % P != 0) {
        if (o.delta) {
          t = n;
        } else if (!polylog) {
          t = n * custom_size;
        } else {
          const double theta = std::numbers::pi * std::fmod(static_cast<double>(n * i) / static_cast<double>(P), 2.0);
          const double j = std::ceil(abel_terms(o.k, theta, kTailTol));
          if (j > static_cast<double>(kMaxTerms))
            throw ToleranceFailure("figure: series tail cannot reach 1e-9 within the term budget");
          t = n * static_cast<Index>(j);
        }
      }
      terms[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)] = t;
    }

  const DilatedSystem sys = make_system(o, polylog ? std::max<Index>(curves, 1) : std::max(custom_size, curves));
  Eigen::MatrixXd values(P, curves);
  double worst = 0.0;
  for (Index n = 1; n <= curves; ++n) {
    Index need = 0;
    for (Index t : terms[static_cast<std::size_t>(n - 1)])
      need = std::max(need, t);
    const SineVector phi = phi_coefficients(sys, n, std::max(need, n));
    parallel_for(P, [&](Index i) {
      const Index t = terms[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)];
      const double x = static_cast<double>(i) / static_cast<double>(P);
      values(i, n - 1) = t == 0 ? 0.0 : (eval(phi, x, t) * sys.normalization()).real();
    });
    for (Index i = 0; i < P; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(P);
      double reference = std::numeric_limits<double>::quiet_NaN();
      if (polylog)
        reference = phi_polylog_periodic(o.k, static_cast<double>(n) * x);
      else if (o.delta)
        reference = std::numbers::sqrt2 * std::sin(std::numbers::pi * static_cast<double>(n) * x);
      if (!std::isnan(reference))
        worst = std::max(worst, std::abs(values(i, n - 1) - reference));
    }
  }

  if (wants(o, "csv")) {
    auto f = open_output(o, "figure.csv");
    f << 'x';
    for (Index n = 1; n <= curves; ++n)
      f << ",phi_" << n;
    f << '\n';
    for (Index i = 0; i < P; ++i) {
      f << format_number(static_cast<double>(i) / static_cast<double>(P));
      for (Index n = 0; n < curves; ++n)
        f << ',' << format_number(values(i, n));
      f << '\n';
    }
    close_output(f, o, "figure.csv");
  }
  if (wants(o, "svg")) {
    constexpr double W = 800.0, H = 400.0, pad = 20.0;
    const double ymax = std::max(1e-300, values.cwiseAbs().maxCoeff());
    static constexpr const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    auto f = open_output(o, "figure.svg");
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
      << W << ' ' << H << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<line x1=\"" << pad << "\" y1=\"" << H / 2 << "\" x2=\"" << W - pad << "\" y2=\"" << H / 2
      << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    for (Index n = 0; n < curves; ++n) {
      f << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << colours[n % 6] << "\" points=\"";
      for (Index i = 0; i < P; ++i) {
        const double x = pad + (W - 2 * pad) * static_cast<double>(i) / static_cast<double>(P);
        const double y = H / 2 - (H / 2 - pad) * values(i, n) / ymax;
        f << (i ? " " : "") << format_number(x) << ',' << format_number(y);
      }
      f << "\"/>\n";
    }
    f << "</svg>\n";
    close_output(f, o, "figure.svg");
  }

  const bool checked = polylog || o.delta;
  std::cout << "figure: " << family_label(o) << ", " << P << " points, " << curves << " curves";
  if (checked)
    std::cout << ", max |series - closed form| = " << format_number(worst);
  std::cout << '\n';
  if (checked && !(worst <= kCrossTol))
    throw ToleranceFailure("figure: cross-check against the closed form exceeds 1e-8");
  return 0;
}

// ---------------------------------------------------------------------------------------------
// gram

int cmd_gram(const Options& o) {
  const Index M = o.gram_size;
  if (M < 1)
    throw DomainError("gram: --gram-size must be positive");
  const DilatedSystem sys = make_system(o, std::max(M, o.modes));
  const Index K = o.trunc > 0 ? o.trunc : (Index{1} << 16) * M;
  const GramSummary g = gram_matrix(sys, M, K);

  if (wants(o, "json")) {
    auto f = open_output(o, "gram.json");
    io::JsonWriter w(f);
    w.begin_object();
    w.field("family", family_label(o));
    w.field("M", static_cast<long long>(g.M));
    w.field("K", static_cast<long long>(g.K));
    w.field("lambda_min", g.lambda_min);
    w.field("lambda_max", g.lambda_max);
    w.field("cond", g.cond);
    w.field("tail_bound", g.tail_bound);
    w.field("eig_residual", g.eig_residual);
    w.end_object();
    w.finish();
    close_output(f, o, "gram.json");
  }
  if (o.entries || o.format == "csv") {
    auto f = open_output(o, "gram_entries.csv");
    f << "m,n,re,im\n";
    for (Index m = 1; m <= M; ++m)
      for (Index n = 1; n <= M; ++n) {
        const Complex z = g.entries(m - 1, n - 1);
        f << m << ',' << n << ',' << format_number(z.real()) << ',' << format_number(z.imag()) << '\n';
      }
    close_output(f, o, "gram_entries.csv");
  }
  std::cout << "gram: M=" << g.M << " K=" << g.K << " lambda_min=" << format_number(g.lambda_min)
            << " lambda_max=" << format_number(g.lambda_max) << " cond=" << format_number(g.cond) << '\n';
  if (!(g.eig_residual <= 1e-10 * g.lambda_max))
    throw ToleranceFailure("gram: eigen-decomposition residual above 1e-10 lambda_max");
  return 0;
}

// ---------------------------------------------------------------------------------------------
// scan

void write_scan_json(std::ostream& out, const ScanReport& r, const std::string& family) {
  io::JsonWriter w(out);
  w.begin_object();
  w.field("family", family);
  w.key("region").begin_object();
  w.field("re_min", r.region.re_min);
  w.field("re_max", r.region.re_max);
  w.field("im_min", r.region.im_min);
  w.field("im_max", r.region.im_max);
  w.end_object();
  w.field("step", r.step);
  w.field("points", static_cast<long long>(r.points));
  w.field("min_abs", r.min_abs);
  w.field("max_abs", r.max_abs);
  w.field("argmin", r.argmin);
  w.field("argmax", r.argmax);
  w.key("masked_cells").begin_array();
  for (const Complex s : r.masked_cells)
    w.value(s);
  w.end_array();
  w.field("max_tail", r.max_tail);
  w.field("verdict", to_string(r.verdict));
  w.key("thresholds").begin_object();
  w.field("hi", r.thresholds.hi);
  w.field("lo", r.thresholds.lo);
  w.end_object();
  w.end_object();
  w.finish();
}

int cmd_scan(const Options& o) {
  const ScanRegion region{o.re_min, o.re_max, -o.im_max, o.im_max};
  const ScanThresholds thresholds{o.hi, o.lo};
  ScanReport r;
  if (!o.coeffs.empty())
    r = halfplane_scan(load_coeffs(o), region, o.step, thresholds);
  else
    r = halfplane_scan(make_system(o, std::max<Index>(o.modes, 1)), region, o.step, thresholds);

  auto f = open_output(o, "scan.json");
  write_scan_json(f, r, family_label(o));
  close_output(f, o, "scan.json");
  std::cout << "scan: " << r.points << " points, min_abs=" << format_number(r.min_abs)
            << " max_abs=" << format_number(r.max_abs) << " verdict=" << to_string(r.verdict) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------------------------
// expand

SineVector expansion_target(const Options& o, Index N, std::string& method, Index& points) {
  const std::string& t = o.target;
  method = "exact";
  points = 0;
  if (t == "random") {
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(N);
    for (Index n = 0; n < N; ++n) {
      const double re = g(rng);
      const double im = g(rng);
      v[n] = Complex(re, im);
    }
    return {CoeffVector(v / v.norm())};
  }
  if (t.size() > 2 && t.rfind("e:", 0) == 0) {
    const long n = std::stol(t.substr(2));
    if (n < 1 || n > N)
      throw DomainError("expand: basis index out of range");
    return SineVector::unit(n, N);
  }
  std::function<Complex(double)> f;
  if (t == "parabola") {
    f = [](double x) { return Complex(x * (1.0 - x)); };
  } else if (t == "generator") {
    if (o.delta || !o.coeffs.empty() || !(o.k > 1.0))
      throw DomainError("expand: --target generator needs the polylog family with k > 1");
    const double k = o.k;
    f = [k](double x) { return Complex(phi_polylog(k, x)); };
  } else {
    // a coefficient file holding sine coefficients
    return {padded(read_coeff_csv(t), N).head(N)};
  }
  const SineTransform tr = sine_coefficients(f, N);
  method = tr.method == QuadMethod::Dst ? "dst" : "gauss";
  points = tr.points;
  return tr.psi;
}

int cmd_expand(const Options& o) {
  const Index N = o.modes > 0 ? o.modes : 1023;
  const DilatedSystem sys = make_system(o, N);
  std::string method;
  Index points = 0;
  const SineVector psi = expansion_target(o, N, method, points);
  const ExpansionResult r = analyze(sys, psi);

  {
    auto f = open_output(o, "expansion.csv");
    f << "n,c_re,c_im\n";
    for (Index n = 1; n <= r.c.size(); ++n)
      f << n << ',' << format_number(r.c(n).real()) << ',' << format_number(r.c(n).imag()) << '\n';
    close_output(f, o, "expansion.csv");
  }
  {
    auto f = open_output(o, "expansion.json");
    io::JsonWriter w(f);
    w.begin_object();
    w.field("family", family_label(o));
    w.field("target", o.target);
    w.field("N", static_cast<long long>(N));
    w.field("method", method);
    w.field("points", static_cast<long long>(points));
    w.field("normalization", sys.normalization());
    w.field("psi_norm", psi.norm());
    w.field("c_norm", r.c.values().norm());
    w.field("residual_l2", r.residual_l2);
    w.end_object();
    w.finish();
    close_output(f, o, "expansion.json");
  }
  std::cout << "expand: N=" << N << " residual_l2=" << format_number(r.residual_l2) << '\n';
  if (!(r.residual_l2 <= 1e-12 * std::max(1.0, psi.norm())))
    throw ToleranceFailure("expand: round-trip residual above 1e-12");
  return 0;
}

// ---------------------------------------------------------------------------------------------
// inverse

int cmd_inverse(const Options& o) {
  const Index N = o.modes > 0 ? o.modes : 64;
  const CoeffVector a = raw_generator(o, N).head(N);
  const CoeffVector b = dirichlet_inverse(a);
  auto f = open_output(o, "inverse.csv");
  write_csv(f, b);
  close_output(f, o, "inverse.csv");
  const CoeffVector check = dirichlet_convolve(a, b);
  const double residual = (check.values() - CoeffVector::delta(N).values()).cwiseAbs().maxCoeff();
  std::cout << "inverse: N=" << N << " max |a * b - delta| = " << format_number(residual) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------------------------
// check

struct CheckRow {
  std::string name;
  std::string measured;
  std::string limit;
  bool pass;
};

class CheckTable {
public:
  void add(std::string name, double measured, const std::string& relation, double limit, bool pass) {
    rows_.push_back({std::move(name), format_number(measured), relation + " " + format_number(limit), pass});
  }
  void add(std::string name, std::string measured, std::string limit, bool pass) {
    rows_.push_back({std::move(name), std::move(measured), std::move(limit), pass});
  }
  void fail(std::string name, const std::exception& e) { rows_.push_back({std::move(name), e.what(), "-", false}); }

  bool all_pass() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const CheckRow& r) { return r.pass; });
  }

  void print(std::ostream& out) const {
    std::size_t w0 = 5, w1 = 8;
    for (const auto& r : rows_) {
      w0 = std::max(w0, r.name.size());
      w1 = std::max(w1, r.measured.size());
    }
    out << std::left << std::setw(static_cast<int>(w0)) << "check" << "  " << std::setw(static_cast<int>(w1))
        << "measured" << "  " << std::setw(28) << "limit" << "  result\n";
    for (const auto& r : rows_)
      out << std::setw(static_cast<int>(w0)) << r.name << "  " << std::setw(static_cast<int>(w1)) << r.measured
          << "  " << std::setw(28) << r.limit << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
    const auto passed = std::count_if(rows_.begin(), rows_.end(), [](const CheckRow& r) { return r.pass; });
    out << passed << '/' << rows_.size() << " checks passed\n";
  }

private:
  std::vector<CheckRow> rows_;
};

template <typename F>
void guarded(CheckTable& table, const std::string& name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    table.fail(name, e);
  }
}

int cmd_check(const Options& o) {
  const Index N = o.modes > 0 ? o.modes : 256;
  CheckTable table;

  const CoeffVector a = raw_generator(o, N).head(N);
  guarded(table, "convolution a * inverse(a) = delta", [&] {
    const CoeffVector b = dirichlet_inverse(a);
    const double scale = std::max(1.0, a.values().cwiseAbs().maxCoeff() * b.values().cwiseAbs().maxCoeff());
    const double r = (dirichlet_convolve(a, b).values() - CoeffVector::delta(N).values()).cwiseAbs().maxCoeff();
    table.add("convolution a * inverse(a) = delta", r, "<=", 1e-13 * scale, r <= 1e-13 * scale);
  });
  guarded(table, "convolution commutes", [&] {
    const CoeffVector b = dirichlet_inverse(a);
    const double r = (dirichlet_convolve(a, b).values() - dirichlet_convolve(b, a).values()).cwiseAbs().maxCoeff();
    table.add("convolution commutes", r, "<=", 1e-14, r <= 1e-14);
  });
  guarded(table, "mobius form of the inverse", [&] {
    if (!is_completely_multiplicative(a, N, 1e-14).completely_multiplicative || a(1) != Complex(1.0)) {
      table.add("mobius form of the inverse", "n/a", "needs completely multiplicative a", true);
      return;
    }
    const CoeffVector b = dirichlet_inverse(a);
    double r = 0.0;
    for (Index n = 1; n <= N; ++n)
      r = std::max(r, std::abs(b(n) - static_cast<double>(mobius(n)) * a(n)));
    table.add("mobius form of the inverse", r, "<=", 1e-13, r <= 1e-13);
  });

  const DilatedSystem sys = make_system(o, N);
  const Index M = std::min<Index>(64, N);
  guarded(table, "biorthogonality", [&] {
    const double r = biorthogonality_check(sys, M);
    table.add("biorthogonality M=" + std::to_string(M), r, "<=", 1e-12, r <= 1e-12);
  });
  guarded(table, "round trip", [&] {
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> g;
    const SineVector psi{CoeffVector::generate(N, [&](Index) {
      const double re = g(rng);
      const double im = g(rng);
      return Complex(re, im);
    })};
    const ExpansionResult r = analyze(sys, psi);
    const double d = (synthesize(sys, r.c).coeffs.values() - psi.coeffs.values()).cwiseAbs().maxCoeff();
    table.add("round trip N=" + std::to_string(N), d, "<=", 1e-12, d <= 1e-12);
  });

  for (Index gm : {16, 32, 64}) {
    const std::string name = "corridor containment M=" + std::to_string(gm);
    guarded(table, name, [&] {
      const DilatedSystem s = make_system(o, std::max(N, gm));
      const Corridor c = riesz_corridor(s, 50.0, 0.01);
      const GramSummary g = gram_matrix(s, gm);
      const double slack = g.tail_bound + c.tail_bound;
      const bool ok = g.lambda_min >= c.lo - slack && g.lambda_max <= c.hi + slack;
      table.add(name, "[" + format_number(g.lambda_min) + ", " + format_number(g.lambda_max) + "]",
                "in [" + format_number(c.lo) + ", " + format_number(c.hi) + "] +- " + format_number(slack), ok);
    });
  }

  guarded(table, "conditioning growth k=0.6", [&] {
    const DilatedSystem s = DilatedSystem::polylog(0.6, 64);
    std::string seq;
    double previous = 0.0;
    bool ok = true;
    for (Index gm : {8, 16, 32, 64}) {
      const double cond = gram_matrix(s, gm, Index{1} << 20).cond;
      ok = ok && cond > previous;
      previous = cond;
      seq += (seq.empty() ? "" : " ") + format_number(cond);
    }
    table.add("conditioning growth k=0.6", seq, "strictly increasing", ok);
  });

  guarded(table, "zeta golden values", [&] {
    const double pi = std::numbers::pi;
    const double e2 = std::abs(zeta(2.0).value - pi * pi / 6.0);
    const double e4 = std::abs(zeta(4.0).value - std::pow(pi, 4) / 90.0);
    table.add("zeta(2) - pi^2/6", e2, "<=", 1e-10, e2 <= 1e-10);
    table.add("zeta(4) - pi^4/90", e4, "<=", 1e-10, e4 <= 1e-10);
    double m = 1.0;
    for (int j = 0; j <= 300; ++j)
      m = std::min(m, std::abs(zeta({0.5, 14.0 + 1e-3 * j}).value));
    table.add("min |zeta(1/2+it)|, t in [14, 14.3]", m, "<", 1e-3, m < 1e-3);
  });

  guarded(table, "generator checks", [&] {
    double identity = 0.0;
    for (Index n = 1; n <= 8; ++n)
      identity = std::max(identity, dilation_identity_residual(n, 63));
    table.add("dilation identity n<=8", identity, "<=", 1e-13, identity <= 1e-13);
    double worst = 0.0, composition = 0.0;
    auto f = [](double x) { return std::sin(std::numbers::pi * x); };
    for (int i = 1; i <= 10; ++i) {
      const double x = 0.04 * i;
      const GeneratorCheck c = dilation_generator_check(f, x, 0.1, 1e-5);
      worst = std::max(worst, c.generator_error);
      composition = std::max(composition, c.identity_error);
    }
    table.add("dilation generator (finite difference)", worst, "<", 1e-6, worst < 1e-6);
    table.add("dilation composition", composition, "<=", 1e-15, composition <= 1e-15);
  });

  std::cout << "check: " << family_label(o) << ", N=" << N << '\n';
  table.print(std::cout);
  return table.all_pass() ? 0 : kExitNumerical;
}

// ---------------------------------------------------------------------------------------------

void add_family(CLI::App* cmd, Options& o) {
  auto* k = cmd->add_option("--k", o.k, "polylog order: a_n = n^-k (default 2)");
  auto* coeffs = cmd->add_option("--coeffs", o.coeffs, "generator from an n,re,im CSV file");
  auto* delta = cmd->add_flag("--delta", o.delta, "the unit generator (orthonormal sine basis)");
  k->excludes(coeffs)->excludes(delta);
  coeffs->excludes(delta);
  cmd->add_option("--decay-k", o.decay_k, "decay exponent asserted for --coeffs (constant fitted)")->needs(coeffs);
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "seed for random inputs");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dilated sine systems generated by Dirichlet coefficients"};
  app.require_subcommand(1);
  Options o;

  auto* figure = app.add_subcommand("figure", "phi_1..phi_n on a uniform grid (CSV and SVG)");
  add_family(figure, o);
  figure->add_option("--points", o.points, "grid points x = i / P, i < P")->check(CLI::PositiveNumber);
  figure->add_option("--curves", o.curves, "number of dilations n = 1..curves")->check(CLI::PositiveNumber);
  figure->add_option("--format", o.format, "csv or svg (default: both)")->check(CLI::IsMember({"csv", "svg"}));

  auto* gram = app.add_subcommand("gram", "truncated Gram matrix and its extreme eigenvalues");
  add_family(gram, o);
  gram->add_option("--gram-size", o.gram_size, "matrix size M")->check(CLI::PositiveNumber);
  gram->add_option("--trunc", o.trunc, "sum truncation K (default 2^16 M)")->check(CLI::PositiveNumber);
  gram->add_option("--modes", o.modes, "stored generator length");
  gram->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  gram->add_flag("--entries", o.entries, "also write gram_entries.csv");

  auto* scan = app.add_subcommand("scan", "|L_a(s)| over a half-plane rectangle with a verdict");
  add_family(scan, o);
  scan->add_option("--re-min", o.re_min, "smallest Re(s), at least 0.01");
  scan->add_option("--re-max", o.re_max, "largest Re(s)");
  scan->add_option("--im-max", o.im_max, "|Im(s)| bound");
  scan->add_option("--step", o.step, "grid spacing")->check(CLI::PositiveNumber);
  scan->add_option("--hi", o.hi, "upper verdict threshold");
  scan->add_option("--lo", o.lo, "lower verdict threshold");
  scan->add_option("--modes", o.modes, "stored generator length for built-in families");
  scan->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  auto* expand = app.add_subcommand("expand", "expansion coefficients of a target in the system");
  add_family(expand, o);
  expand->add_option("--modes", o.modes, "sine modes N (default 1023)")->check(CLI::PositiveNumber);
  expand->add_option("--target", o.target, "parabola | generator | random | e:<n> | path to a sine-coefficient CSV");
  expand->add_option("--format", o.format, "csv")->check(CLI::IsMember({"csv", "json"}));

  auto* inverse = app.add_subcommand("inverse", "Dirichlet inverse of the generator as CSV");
  add_family(inverse, o);
  inverse->add_option("--modes", o.modes, "length N (default 64)")->check(CLI::PositiveNumber);
  inverse->add_option("--format", o.format, "csv")->check(CLI::IsMember({"csv"}));

  auto* check = app.add_subcommand("check", "invariant suite as a pass/fail table");
  add_family(check, o);
  check->add_option("--modes", o.modes, "length N (default 256)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*figure)
      return cmd_figure(o);
    if (*gram)
      return cmd_gram(o);
    if (*scan)
      return cmd_scan(o);
    if (*expand)
      return cmd_expand(o);
    if (*inverse)
      return cmd_inverse(o);
    if (*check)
      return cmd_check(o);
  } catch (const ToleranceFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ResolutionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InsufficientDecayError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
