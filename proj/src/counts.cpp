#include "derange/counts.hpp"

#include <string>

namespace derange {

static void check_common(long long n, long long k, long long d) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  if (d > k) throw std::invalid_argument("d exceeds k");
}

Params make_count_params(long long n, long long k, long long d) {
  check_common(n, k, d);
  if (k > n) throw std::invalid_argument("k exceeds n");
  return Params{static_cast<unsigned>(n), static_cast<unsigned>(k), static_cast<unsigned>(d)};
}

Params make_cond_params(long long n, long long k, long long d) {
  check_common(n, k, d);
  if (k > n - 1) throw std::invalid_argument("k must be < n for f");
  return Params{static_cast<unsigned>(n), static_cast<unsigned>(k), static_cast<unsigned>(d)};
}

Count partial_derangements(unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("partial_derangements: k exceeds n");
  // Alternating sum; the accumulator is signed, intermediate values may
  // dip negative, the result may not.
  Int acc = 0;
  for (unsigned j = 0; j <= k; ++j) {
    Int term = binomial(k, j).value() * factorial(n - j).value();
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  if (acc < 0) throw std::logic_error("partial_derangements: negative total");
  return Count(acc);
}

Count derangements(unsigned n) { return partial_derangements(n, n); }

Count count_exact_fixed(const Params& params) {
  // c(n,k,d) = C(k,d) * d_{n-d,k-d}: choose which d points of [k] are
  // fixed, then derange the remaining k-d among the other n-d points.
  return binomial(params.k, params.d) * partial_derangements(params.n - params.d, params.k - params.d);
}

Int count_any(long long n, long long k, long long d) {
  if (n < 0 || k < 0 || d < 0 || d > k || k > n) return Int(0);
  return binomial(k, d).value() *
         partial_derangements(static_cast<unsigned>(n - d), static_cast<unsigned>(k - d)).value();
}

Prob prob_exact_fixed(const Params& params) {
  return prob_make(count_exact_fixed(params), factorial(params.n));
}

Prob prob_via_point_split(const Params& params) {
  const unsigned n = params.n, k = params.k, d = params.d;
  if (k == 0 || k >= n)
    throw std::invalid_argument("prob_via_point_split: requires 0 < k < n");
  const Int nf = factorial(n - 1).value();
  Rat left = Rat(k, n) * Rat(count_any(n - 1, k - 1, d), nf);
  Rat right = Rat(n - k, n) * Rat(count_any(n - 1, k, d), nf);
  return Prob::from_rat(left + right);
}

VerificationReport recurrence_suite(unsigned n_max) {
  if (n_max < 2) throw std::invalid_argument("recurrence_suite: n_max must be >= 2");
  VerificationReport report;
  DerangementTable table(n_max + 1);
  auto param_str = [](unsigned n, long long k) {
    std::string s = "n=" + std::to_string(n);
    if (k >= 0) s += " k=" + std::to_string(k);
    return s;
  };
  auto check = [&](const char* claim, std::string params, const Int& lhs, const Int& rhs) {
    report.add(claim, std::move(params),
               lhs == rhs ? ClaimStatus::holds : ClaimStatus::violation,
               "lhs=" + lhs.str() + " rhs=" + rhs.str());
  };
  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned k = 0; k + 1 <= n; ++k)
      check("pd-step", param_str(n, k), table.dnk(n, k),
            table.dnk(n, k + 1) + table.dnk(n - 1, k));
    check("one-fixed-count", param_str(n, -1), table.dnk(n, n), table.c(n, n - 1, 1));
    if (n >= 2)
      check("dn-product", param_str(n, -1), table.dnk(n, n),
            Int(n - 1) * (table.dnk(n - 1, n - 1) + table.dnk(n - 2, n - 2)));
    check("dn-shift", param_str(n, -1), Int(n + 1) * table.dnk(n, n), table.c(n + 1, n + 1, 1));
    check("dn-alternating", param_str(n, -1), table.dnk(n, n),
          Int(n) * table.dnk(n - 1, n - 1) + (n % 2 == 0 ? Int(1) : Int(-1)));
  }
  return report;
}

std::optional<Params> find_p_nonmonotone_witness(unsigned n_max) {
  DerangementTable table(n_max);
  for (unsigned n = 1; n <= n_max; ++n)
    for (unsigned k = 2; k <= n; ++k)
      for (unsigned d = 1; d + 1 <= k; ++d)
        if (table.p(n, k, d) > table.p(n, k - 1, d)) return Params{n, k, d};
  return std::nullopt;
}

DerangementTable::DerangementTable(unsigned n_max) : n_max_(n_max) {
  rows_.resize(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    rows_[n].reserve(n + 1);
    for (unsigned k = 0; k <= n; ++k) rows_[n].push_back(partial_derangements(n, k).value());
  }
}

const Int& DerangementTable::dnk(unsigned n, unsigned k) const {
  if (n > n_max_ || k > n) throw std::out_of_range("DerangementTable::dnk");
  return rows_[n][k];
}

Int DerangementTable::c(long long n, long long k, long long d) const {
  if (n < 0 || k < 0 || d < 0 || d > k || k > n) return Int(0);
  if (n - d > n_max_) throw std::out_of_range("DerangementTable::c");
  return binomial(k, d).value() * rows_[static_cast<unsigned>(n - d)][static_cast<unsigned>(k - d)];
}

Rat DerangementTable::p(long long n, long long k, long long d) const {
  if (n < 0) throw std::out_of_range("DerangementTable::p");
  return Rat(c(n, k, d), factorial(static_cast<unsigned>(n)).value());
}

Rat DerangementTable::p0(unsigned n, unsigned k) const {
  return Rat(dnk(n, k), factorial(n).value());
}

Rat DerangementTable::f0(unsigned n, unsigned k) const {
  if (k + 1 > n) throw std::out_of_range("DerangementTable::f0: k must be < n");
  const Int& den = dnk(n, k);
  if (den <= 0) throw std::logic_error("DerangementTable::f0: vanishing denominator");
  return Rat(dnk(n - 1, k), den);
}

Rat DerangementTable::f(unsigned n, unsigned k, unsigned d) const {
  if (d > k) throw std::out_of_range("DerangementTable::f: d exceeds k");
  return f0(n - d, k - d);
}

}  // namespace derange
