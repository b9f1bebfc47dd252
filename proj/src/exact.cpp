#include "derange/exact.hpp"

#include <mutex>
#include <shared_mutex>
#include <vector>

namespace derange {

Count factorial(unsigned n) {
  static std::vector<Int> table = {Int(1)};
  static std::shared_mutex mutex;
  {
    std::shared_lock<std::shared_mutex> read(mutex);
    if (n < table.size()) return Count(table[n]);
  }
  std::unique_lock<std::shared_mutex> write(mutex);
  while (table.size() <= n) {
    Int next = table.back() * Int(table.size());
    table.push_back(std::move(next));
  }
  return Count(table[n]);
}

Count binomial(long long n, long long k) {
  if (n < 0) throw std::domain_error("binomial: n must be nonnegative");
  if (k < 0 || k > n) return Count(0);
  if (k > n - k) k = n - k;
  Int result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= Int(n - k + i);
    result /= Int(i);  // exact: result is C(n-k+i, i) after this step
  }
  return Count(result);
}

Prob prob_make(const Count& num, const Count& den) {
  if (den.value() == 0) throw std::domain_error("prob_make: zero denominator");
  if (num.value() > den.value())
    throw std::domain_error("prob_make: numerator exceeds denominator");
  return Prob::from_rat(Rat(num.value(), den.value()));
}

Int pow10(unsigned places) {
  Int s = 1;
  for (unsigned i = 0; i < places; ++i) s *= 10;
  return s;
}

Int round_scaled(const Rat& value, unsigned places) {
  Int num = numerator(value);
  Int den = denominator(value);  // > 0 by normalization
  const bool negative = num < 0;
  if (negative) num = -num;
  // floor((2*num*10^p + den) / (2*den)) rounds half away from zero.
  Int q = (2 * num * pow10(places) + den) / (2 * den);
  return negative ? Int(-q) : q;
}

static std::string frac_digits(const Int& scaled_abs, unsigned places) {
  std::string digits = scaled_abs.str();
  if (digits.size() < places) digits.insert(0, places - digits.size(), '0');
  return digits;
}

std::string render_fixed(const Rat& value, unsigned places, bool leading_zero) {
  Int s = round_scaled(value, places);
  const bool negative = s < 0;
  if (negative) s = -s;
  const Int scale = pow10(places);
  Int whole = s / scale;
  std::string frac = frac_digits(s % scale, places);
  std::string out = negative ? "-" : "";
  if (whole != 0 || leading_zero) out += whole.str();
  if (places > 0) out += "." + frac;
  return out;
}

std::string render_table(const Rat& value, unsigned places) {
  if (value < 0 || value > 1)
    throw std::domain_error("render_table: value outside [0,1]");
  const Int s = round_scaled(value, places);
  const Int scale = pow10(places);
  if (s == 0) return "0";
  if (s == scale) return "1";
  std::string digits = frac_digits(s, places);
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  return "." + digits;
}

}  // namespace derange
