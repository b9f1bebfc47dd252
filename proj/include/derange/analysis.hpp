#pragma once

// Theorem audit engine: exact monotonicity sweeps with declared exception
// sets, identity sweeps, sandwich-bound sweeps, triangle generation, and
// the 4-place reference tables.
//
// Sweeps are embarrassingly parallel over parameter tuples: each sweep
// materializes its tuple list, evaluates records into pre-sized slots
// (OpenMP across slots), and so produces bit-identical reports for any
// worker count. threads = 1 forces the serial reference path; 0 uses the
// OpenMP default.

#include <string>
#include <vector>

#include "derange/counts.hpp"
#include "derange/exact.hpp"
#include "derange/report.hpp"

namespace derange::analysis {

// All f(n,k,d) for 0 <= d <= k <= n-1, exact.
class Triangle {
 public:
  explicit Triangle(unsigned n);
  unsigned n() const { return n_; }
  const Prob& at(unsigned k, unsigned d) const;

 private:
  unsigned n_;
  std::vector<Prob> entries_;  // row-major by d, then k = d..n-1
};

Triangle triangle(unsigned n);  // requires 1 <= n <= 30

// f(n,j,d) < f(n,i,d) for adjacent i < j = i+1, except exactly at
// n = j+1 = i+2 = d+3 where the inequality reverses strictly
// ("cond-monotone-k"). Non-adjacent pairs spanning the reversal are
// spot-checked for the equality f(n,d,d) = f(n,d+2,d) when n-d = 3
// ("cond-monotone-k-span").
VerificationReport monotone_in_k(unsigned n_max, int threads = 0);

// f(m,k,d) < f(n,k,d) for every m > n, except exactly at n = d+2,
// k = d+1 where f(n,k,d) = 0 and the inequality reverses.
VerificationReport monotone_in_n(unsigned n_max, int threads = 0);

// f(n,k,d) > f(n,k,c) for every c < d, except exactly at n = k+1 = d+2
// where f(n,n-1,n-2) = 0.
VerificationReport monotone_in_d(unsigned n_max, int threads = 0);

// The biconditional: f(n,k-1,0) < f(n-1,k-1,0) iff f(n,k,0) < f(n,k-1,0),
// for 3 < n <= n_max, 0 < k < n.
VerificationReport decrease_equivalence(unsigned n_max);

// Exact probability identities and inequalities:
//   cond-complement   f(n,k,0) = 1 - p(n,k+1,0)/p(n,k,0)
//   point-split       p(n,k,d) = (k/n)p(n-1,k-1,d) + (1-k/n)p(n-1,k,d)
//   p-step-down       p(n,k+1,0) = p(n,k,0) - (1/n)p(n-1,k,0)
//   ratio-expansion   p(n,k+1,0)/p(n,k,0) = 1 - 1/n + [k/(n^2(n-1))] p(n-2,k-1,0)/p(n,k,0)
//   parity-boundary   p(n,n,0) - p(n-1,n-1,0) = (-1)^n/n!
//   p-monotone-k      p(n,k,0) <= p(n,k-1,0)
//   p-monotone-n      p(n-1,k,0) <= p(n,k,0)          (k < n)
//   p-diagonal        p(n,k,0) <= p(n-1,k-1,0)        (0 < k < n)
//   p-nonmonotone-d-witness   some (n,k,d), d != 0, with p(n,k,d) > p(n,k-1,d)
VerificationReport identity_suite(unsigned n_max, int threads = 0);

// Sandwich containment lower <= f(n,k,d) <= upper wherever n-d > 3
// ("sandwich"), the ratio floor p(n,k+1,0)/p(n,k,0) >= (n-1)/n
// ("ratio-floor"), and f(n,k,0) <= 1/n for 0 < k ("f-cap").
VerificationReport sandwich_suite(unsigned n_max, int threads = 0);

// 4-place-style reference tables. which is 'p' or 'f'; cells are rendered
// with render_table. Rows n = 1..n_max; columns k = 0..min(k_max, n) for
// p and k = 0..min(k_max, n-1) for f.
std::vector<std::vector<std::string>> table_cells(char which, unsigned n_max, unsigned k_max,
                                                  unsigned places);
std::string table_render(char which, unsigned n_max, unsigned k_max, unsigned places);

}  // namespace derange::analysis
