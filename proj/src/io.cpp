#include "riesz/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace riesz::io {

std::string format_number(double x) {
  if (std::isnan(x))
    return "NaN";
  if (std::isinf(x))
    return x > 0 ? "Infinity" : "-Infinity";
  if (x == 0.0)
    x = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void JsonWriter::separator() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back())
      out_ << ',';
    first_.back() = false;
    out_ << '\n' << std::string(static_cast<std::size_t>(2 * depth_), ' ');
  }
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ << '{';
  first_.push_back(true);
  ++depth_;
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool empty = first_.back();
  first_.pop_back();
  --depth_;
  if (!empty)
    out_ << '\n' << std::string(static_cast<std::size_t>(2 * depth_), ' ');
  out_ << '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ << '[';
  first_.push_back(true);
  ++depth_;
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool empty = first_.back();
  first_.pop_back();
  --depth_;
  if (!empty)
    out_ << '\n' << std::string(static_cast<std::size_t>(2 * depth_), ' ');
  out_ << ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  separator();
  write_string(k);
  out_ << ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  separator();
  // JSON has no literal for non-finite values
  if (std::isfinite(x))
    out_ << format_number(x);
  else
    out_ << '"' << format_number(x) << '"';
  return *this;
}

JsonWriter& JsonWriter::value(long long x) {
  separator();
  out_ << x;
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  separator();
  out_ << (b ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
  separator();
  write_string(s);
  return *this;
}

void JsonWriter::write_string(std::string_view s) {
  out_ << '"';
  for (char c : s) {
    switch (c) {
    case '"': out_ << "\\\""; break;
    case '\\': out_ << "\\\\"; break;
    case '\n': out_ << "\\n"; break;
    case '\t': out_ << "\\t"; break;
    default: out_ << c;
    }
  }
  out_ << '"';
}

JsonWriter& JsonWriter::value(std::complex<double> z) {
  begin_array();
  value(z.real());
  value(z.imag());
  return end_array();
}

void JsonWriter::finish() { out_ << '\n'; }

} // namespace riesz::io
