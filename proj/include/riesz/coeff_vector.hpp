#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace riesz {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Envelope |a_n| <= C n^{-k}. An infinite exponent means the sequence vanishes beyond n = 1.
struct Decay {
  double C{1.0};
  double k{0.0};

  double envelope(Index n) const;
};

/// Complex sequence a_1..a_N with optional decay envelope.
///
/// Storage is an Eigen column vector, so `values()[n - 1]` is the n-th entry;
/// `operator()` takes the 1-based index used throughout the number-theoretic code.
/// Instances are immutable once constructed.
class CoeffVector {
public:
  /// Throws LengthError for an empty vector and DomainError if an entry breaks the envelope.
  explicit CoeffVector(Eigen::VectorXcd values, std::optional<Decay> decay = std::nullopt);

  static CoeffVector delta(Index n);
  static CoeffVector generate(Index n, const std::function<Complex(Index)>& entry,
                              std::optional<Decay> decay = std::nullopt);

  Index size() const { return values_.size(); }
  const Complex& operator()(Index n) const { return values_[n - 1]; }
  /// Entry n, or zero past the stored truncation.
  Complex at_or_zero(Index n) const { return n <= size() ? values_[n - 1] : Complex{}; }

  const Eigen::VectorXcd& values() const { return values_; }
  const std::optional<Decay>& decay() const { return decay_; }

  CoeffVector head(Index n) const;
  CoeffVector with_decay(std::optional<Decay> decay) const;
  CoeffVector scaled(Complex factor) const;

  /// Smallest C with |a_n| <= C n^{-k} over the stored entries.
  double fitted_constant(double k) const;

private:
  Eigen::VectorXcd values_;
  std::optional<Decay> decay_;
};

/// `n,re,im` CSV, 17 significant digits.
void write_csv(std::ostream& out, const CoeffVector& a);
CoeffVector read_coeff_csv(std::istream& in);
CoeffVector read_coeff_csv(const std::string& path);

} // namespace riesz
