#pragma once

// The conditional probability f(n,k,d) that point k+1 is fixed given
// exactly d fixed points among the first k, in several independently
// computed forms, plus closed-form small-k simplifications, the
// 1/(n-d) - (k-d)/((n-d)^2(n-d-1)) approximation with its exact sandwich
// bounds, and the gap |f(n,n-1,0) - 1/(n+1)|.

#include "derange/counts.hpp"
#include "derange/exact.hpp"

namespace derange {

// f(n,k,d) = c(n-1,k,d)/c(n,k,d). Computed by first reducing to
// f(n-d,k-d,0); the direct ratio is evaluated as well and the two routes
// are required to agree. Requires 0 <= k <= n-1.
Prob cond_fix_prob(const Params& params);

// f(n,k,d) by inclusion-exclusion. Evaluates both the one-minus-ratio
// form and the direct-ratio form and insists they agree.
Prob cond_fix_prob_incl_excl(const Params& params);

// Closed forms of f(n,k,0) for k <= 3:
//   1/n,  (n-2)/(n-1)^2,  (n^2-5n+7)/((n-2)(n^2-3n+3)),
//   (n^3-9n^2+29n-34)/((n-3)(n^3-6n^2+14n-13)).
// Requires 0 <= k <= 3 and k <= n-1.
Prob closed_form_small_k(unsigned n, unsigned k);

// Exact sandwich around f(n,k,d), with m = n-d, kappa = k-d:
//   lower   = 1/m - kappa/(m^2(m-1)) * m/(m-1)
//   central = 1/m - kappa/(m^2(m-1))
//   upper   = 1/m - kappa/(m^2(m-1)) * (m-3)/(m-2)
// lower <= f <= upper is a theorem only for m > 3; outside that range the
// values are still returned but flagged. The ordering lower <= central
// <= upper is not asserted anywhere; only containment of f matters.
struct BoundsTriple {
  Rat lower;
  Rat central;
  Rat upper;
  bool outside_hypothesis = false;  // set when n-d <= 3
};

BoundsTriple f_bounds(const Params& params);

// |f(n,n-1,0) - 1/(n+1)| exactly; equals 1/((n+1) d_{n,n-1}). Requires
// n >= 2.
Rat last_point_gap(unsigned n);

}  // namespace derange
