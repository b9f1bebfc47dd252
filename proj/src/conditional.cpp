#include "derange/conditional.hpp"

namespace derange {

static void require_cond(const Params& params) {
  // Re-validate; Params may have been built in a count context.
  make_cond_params(params.n, params.k, params.d);
}

Prob cond_fix_prob(const Params& params) {
  require_cond(params);
  const unsigned n = params.n, k = params.k, d = params.d;
  // Reduced route: f(n,k,d) = f(n-d,k-d,0) = d_{n-d-1,k-d} / d_{n-d,k-d}.
  const Int den_reduced = partial_derangements(n - d, k - d).value();
  if (den_reduced <= 0) throw std::logic_error("cond_fix_prob: vanishing d_{n-d,k-d}");
  const Rat reduced(partial_derangements(n - d - 1, k - d).value(), den_reduced);
  // Direct route: c(n-1,k,d)/c(n,k,d). c(n,k,d) > 0 for k <= n-1; asserted
  // rather than trusted.
  const Int den_direct = count_any(n, k, d);
  if (den_direct <= 0) throw std::logic_error("cond_fix_prob: vanishing c(n,k,d)");
  const Rat direct(count_any(n - 1, k, d), den_direct);
  if (direct != reduced)
    throw std::logic_error("cond_fix_prob: reduced and direct routes disagree");
  return Prob::from_rat(reduced);
}

Prob cond_fix_prob_incl_excl(const Params& params) {
  require_cond(params);
  const unsigned n = params.n, kappa = params.k - params.d, m = params.n - params.d;
  (void)n;
  auto alternating = [](unsigned top, unsigned bank) {
    // sum_{j=0..top} (-1)^j C(top,j) (bank-j)!
    Int acc = 0;
    for (unsigned j = 0; j <= top; ++j) {
      Int term = binomial(top, j).value() * factorial(bank - j).value();
      if (j % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    return acc;
  };
  const Int den = alternating(kappa, m);
  if (den <= 0) throw std::logic_error("cond_fix_prob_incl_excl: vanishing denominator");
  const Rat one_minus = Rat(1) - Rat(alternating(kappa + 1, m), den);
  const Rat direct = Rat(alternating(kappa, m - 1), den);
  if (one_minus != direct)
    throw std::logic_error("cond_fix_prob_incl_excl: the two inclusion-exclusion forms disagree");
  return Prob::from_rat(direct);
}

Prob closed_form_small_k(unsigned n, unsigned k) {
  if (k > 3) throw std::invalid_argument("closed_form_small_k: k must be <= 3");
  if (k + 1 > n) throw std::invalid_argument("closed_form_small_k: k must be < n");
  const Int nn(n);
  switch (k) {
    case 0:
      return Prob::from_rat(Rat(1, nn));
    case 1:
      return Prob::from_rat(Rat(nn - 2, (nn - 1) * (nn - 1)));
    case 2:
      return Prob::from_rat(Rat(nn * nn - 5 * nn + 7, (nn - 2) * (nn * nn - 3 * nn + 3)));
    default:
      return Prob::from_rat(Rat(nn * nn * nn - 9 * nn * nn + 29 * nn - 34,
                                (nn - 3) * (nn * nn * nn - 6 * nn * nn + 14 * nn - 13)));
  }
}

BoundsTriple f_bounds(const Params& params) {
  if (params.k >= params.n) throw std::invalid_argument("f_bounds: requires k < n");
  if (params.d > params.k) throw std::invalid_argument("f_bounds: d exceeds k");
  const unsigned m = params.n - params.d;
  const unsigned kappa = params.k - params.d;
  BoundsTriple out;
  out.outside_hypothesis = (m <= 3);
  if (kappa == 0) {
    out.lower = out.central = out.upper = Rat(1, m);
    return out;
  }
  if (m <= 2)
    throw std::invalid_argument("f_bounds: undefined for n-d <= 2 with k > d");
  const Rat base(Int(kappa), Int(m) * m * (m - 1));
  out.lower = Rat(1, m) - base * Rat(m, m - 1);
  out.central = Rat(1, m) - base;
  out.upper = Rat(1, m) - base * Rat(Int(m) - 3, Int(m) - 2);
  return out;
}

Rat last_point_gap(unsigned n) {
  if (n < 2) throw std::invalid_argument("last_point_gap: requires n >= 2");
  const Rat f = cond_fix_prob(make_cond_params(n, n - 1, 0)).rat();
  Rat gap = f - Rat(1, n + 1);
  return gap < 0 ? Rat(-gap) : gap;
}

}  // namespace derange
