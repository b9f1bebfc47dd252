#pragma once

// Exact counts and probabilities of permutations by fixed-point pattern.
//
// c(n,k,d) counts permutations of [n] with exactly d fixed points among
// the first k points; p(n,k,d) = c(n,k,d)/n!. The d = 0 column is the
// partial-derangement count d_{n,k}, evaluated by the alternating
// inclusion-exclusion sum; general d factors through
// c(n,k,d) = C(k,d) * d_{n-d,k-d}.

#include <optional>

#include "derange/exact.hpp"
#include "derange/report.hpp"

namespace derange {

// Validated (n, k, d) triple. Count contexts allow k <= n; conditional
// contexts require k <= n-1.
struct Params {
  unsigned n = 1;
  unsigned k = 0;
  unsigned d = 0;
};

Params make_count_params(long long n, long long k, long long d);
Params make_cond_params(long long n, long long k, long long d);

// d_{n,k}: permutations of [n] with no fixed point among the first k.
// Requires 0 <= k <= n.
Count partial_derangements(unsigned n, unsigned k);

// d_n = d_{n,n}; d_0 = 1 (the empty permutation is a derangement).
Count derangements(unsigned n);

// c(n,k,d) with validated count-context params.
Count count_exact_fixed(const Params& params);

// c(n,k,d) extended by zero outside the valid domain. Used by identities
// whose index shifts can step outside it.
Int count_any(long long n, long long k, long long d);

// p(n,k,d) = c(n,k,d)/n! in lowest terms.
Prob prob_exact_fixed(const Params& params);

// p(n,k,d) = (k/n) p(n-1,k-1,d) + (1-k/n) p(n-1,k,d); requires 0 < k < n.
// Equals prob_exact_fixed on the same params.
Prob prob_via_point_split(const Params& params);

// Checks, for all applicable n <= n_max:
//   pd-step            d_{n,k} = d_{n,k+1} + d_{n-1,k}        (0 <= k <= n-1)
//   one-fixed-count    d_n = c(n,n-1,1)
//   dn-product         d_n = (n-1)(d_{n-1} + d_{n-2})         (n >= 2)
//   dn-shift           (n+1) d_n = c(n+1,n+1,1)
//   dn-alternating     d_n = n d_{n-1} + (-1)^n
VerificationReport recurrence_suite(unsigned n_max);

// First (n,k,d) with d != 0 and p(n,k,d) > p(n,k-1,d), scanning
// n <= n_max in lexicographic (n,k,d) order. Monotonicity of p in k holds
// only for d = 0; this discovers a counterexample for d != 0.
std::optional<Params> find_p_nonmonotone_witness(unsigned n_max);

// Read-only cache of d_{n,k} for n <= n_max, plus the derived exact
// probabilities. Safe for concurrent readers once built; sweeps build one
// up front and share it across worker threads.
class DerangementTable {
 public:
  explicit DerangementTable(unsigned n_max);

  unsigned n_max() const { return n_max_; }
  const Int& dnk(unsigned n, unsigned k) const;

  Int c(long long n, long long k, long long d) const;    // zero-extended
  Rat p(long long n, long long k, long long d) const;    // zero-extended
  Rat p0(unsigned n, unsigned k) const;                  // p(n,k,0)
  Rat f0(unsigned n, unsigned k) const;                  // f(n,k,0), k <= n-1
  Rat f(unsigned n, unsigned k, unsigned d) const;       // f(n,k,d), k <= n-1

 private:
  unsigned n_max_;
  std::vector<std::vector<Int>> rows_;  // rows_[n][k] = d_{n,k}
};

}  // namespace derange
