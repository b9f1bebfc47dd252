#pragma once

// Exact arithmetic core: arbitrary-precision counts, exact rationals in
// [0,1], factorials and binomial coefficients, and decimal rendering.
// Every quantity in this library is exact; decimals exist only at the
// rendering boundary.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace derange {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Nonnegative exact integer. The result type of all counting operations.
class Count {
 public:
  Count() = default;
  Count(const Int& v) : value_(v) {
    if (value_ < 0) throw std::domain_error("Count must be nonnegative");
  }
  Count(long long v) : Count(Int(v)) {}
  Count(int v) : Count(Int(v)) {}
  Count(unsigned long long v) : value_(v) {}

  const Int& value() const { return value_; }

  friend bool operator==(const Count& a, const Count& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Count& a, const Count& b) { return a.value_ != b.value_; }
  friend bool operator<(const Count& a, const Count& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Count& a, const Count& b) { return a.value_ <= b.value_; }
  friend Count operator+(const Count& a, const Count& b) { return Count(a.value_ + b.value_); }
  friend Count operator*(const Count& a, const Count& b) { return Count(a.value_ * b.value_); }

  std::string str() const { return value_.str(); }

 private:
  Int value_{};
};

// Exact rational in [0,1], kept in lowest terms (the underlying
// representation normalizes on every operation).
class Prob {
 public:
  Prob() = default;  // zero

  static Prob from_rat(const Rat& r) {
    if (r < 0 || r > 1) throw std::domain_error("Prob out of [0,1]: " + to_string(r));
    return Prob(r);
  }

  const Rat& rat() const { return r_; }
  Int num() const { return numerator(r_); }
  Int den() const { return denominator(r_); }

  friend bool operator==(const Prob& a, const Prob& b) { return a.r_ == b.r_; }
  friend bool operator!=(const Prob& a, const Prob& b) { return a.r_ != b.r_; }
  friend bool operator<(const Prob& a, const Prob& b) { return a.r_ < b.r_; }
  friend bool operator<=(const Prob& a, const Prob& b) { return a.r_ <= b.r_; }
  friend bool operator>(const Prob& a, const Prob& b) { return a.r_ > b.r_; }
  friend bool operator>=(const Prob& a, const Prob& b) { return a.r_ >= b.r_; }

  // Products of probabilities stay in [0,1]; sums and differences do not,
  // so those are done in Rat and re-checked via from_rat.
  friend Prob operator*(const Prob& a, const Prob& b) { return Prob(a.r_ * b.r_); }

  std::string str() const { return num().str() + "/" + den().str(); }

  static std::string to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
  }

 private:
  explicit Prob(Rat r) : r_(std::move(r)) {}
  Rat r_{};
};

// n!, exact. Memoized in a growable table safe for concurrent readers
// with serialized growth.
Count factorial(unsigned n);

// C(n, k) as a total function: zero when k < 0 or k > n.
Count binomial(long long n, long long k);

// num/den reduced to lowest terms. Errors on den = 0 and on num > den.
Prob prob_make(const Count& num, const Count& den);

// 10^places as an exact integer.
Int pow10(unsigned places);

// Scaled integer round(value * 10^places), rounding half away from zero.
Int round_scaled(const Rat& value, unsigned places);

// Fixed-width decimal: "0.333", "1.000"; with leading_zero=false the zero
// integer part is dropped: ".1698", ".0000".
std::string render_fixed(const Rat& value, unsigned places, bool leading_zero = true);

// Table-style rendering for values in [0,1]: integers print bare ("0",
// "1"), fractions print with no leading zero and trailing zeros stripped
// (".5", ".4417").
std::string render_table(const Rat& value, unsigned places);

}  // namespace derange
