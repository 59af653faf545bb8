#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace riesz::io {

/// 17 significant digits, shortest of fixed/scientific, '.' separator regardless of locale.
std::string format_number(double x);

/// Minimal streaming JSON emitter. Numbers go through `format_number`; keys keep insertion order.
class JsonWriter {
public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double x);
  JsonWriter& value(long long x);
  JsonWriter& value(int x) { return value(static_cast<long long>(x)); }
  JsonWriter& value(long x) { return value(static_cast<long long>(x)); }
  JsonWriter& value(bool b);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view{s}); }
  JsonWriter& value(std::complex<double> z);

  template <typename T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  /// Terminates the document with a newline.
  void finish();

private:
  void separator();
  void write_string(std::string_view s);

  std::ostream& out_;
  std::vector<bool> first_;  // one flag per open container
  bool after_key_{false};
  int depth_{0};
};

} // namespace riesz::io
