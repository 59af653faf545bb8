#include "riesz/coeff_vector.hpp"

#include "riesz/errors.hpp"
#include "riesz/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace riesz {

double Decay::envelope(Index n) const {
  if (std::isinf(k))
    return n == 1 ? C : 0.0;
  return C * std::pow(static_cast<double>(n), -k);
}

namespace {

void check_envelope(const Eigen::VectorXcd& v, const Decay& d) {
  if (!(d.C >= 0.0) || std::isnan(d.k))
    throw DomainError("decay metadata must have C >= 0 and a numeric exponent");
  for (Index n = 1; n <= v.size(); ++n) {
    const double bound = d.envelope(n);
    // slack for entries generated by the very formula that defines the bound
    if (std::abs(v[n - 1]) > bound * (1.0 + 1e-12) + 1e-300)
      throw DomainError("coefficient " + std::to_string(n) + " violates its decay envelope");
  }
}

} // namespace

CoeffVector::CoeffVector(Eigen::VectorXcd values, std::optional<Decay> decay)
    : values_(std::move(values)), decay_(decay) {
  if (values_.size() < 1)
    throw LengthError("coefficient vector needs at least one entry");
  if (decay_)
    check_envelope(values_, *decay_);
}

CoeffVector CoeffVector::delta(Index n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  if (n >= 1)
    v[0] = 1.0;
  return CoeffVector(std::move(v), Decay{1.0, std::numeric_limits<double>::infinity()});
}

CoeffVector CoeffVector::generate(Index n, const std::function<Complex(Index)>& entry,
                                  std::optional<Decay> decay) {
  Eigen::VectorXcd v(n);
  for (Index i = 1; i <= n; ++i)
    v[i - 1] = entry(i);
  return CoeffVector(std::move(v), decay);
}

CoeffVector CoeffVector::head(Index n) const {
  if (n < 1 || n > size())
    throw LengthError("head: truncation out of range");
  return CoeffVector(values_.head(n), decay_);
}

CoeffVector CoeffVector::with_decay(std::optional<Decay> decay) const {
  return CoeffVector(values_, decay);
}

CoeffVector CoeffVector::scaled(Complex factor) const {
  std::optional<Decay> d = decay_;
  if (d)
    d->C *= std::abs(factor);
  return CoeffVector(values_ * factor, d);
}

double CoeffVector::fitted_constant(double k) const {
  double c = 0.0;
  for (Index n = 1; n <= size(); ++n)
    c = std::max(c, std::abs(values_[n - 1]) * std::pow(static_cast<double>(n), k));
  return c;
}

void write_csv(std::ostream& out, const CoeffVector& a) {
  out << "n,re,im\n";
  for (Index n = 1; n <= a.size(); ++n)
    out << n << ',' << io::format_number(a(n).real()) << ',' << io::format_number(a(n).imag()) << '\n';
}

CoeffVector read_coeff_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw IoError("coefficient CSV is empty");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != "n,re,im")
    throw IoError("coefficient CSV must start with the header 'n,re,im'");
  std::vector<Complex> vals;
  Index expected = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    Index n = 0;
    double re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(row >> n >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
      throw IoError("malformed coefficient row: '" + line + "'");
    if (n != expected)
      throw IoError("coefficient rows must be indexed 1, 2, 3, ... without gaps");
    vals.emplace_back(re, im);
    ++expected;
  }
  if (vals.empty())
    throw IoError("coefficient CSV has no rows");
  Eigen::VectorXcd v(static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    v[static_cast<Index>(i)] = vals[i];
  return CoeffVector(std::move(v));
}

CoeffVector read_coeff_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open coefficient file " + path);
  return read_coeff_csv(in);
}

} // namespace riesz
