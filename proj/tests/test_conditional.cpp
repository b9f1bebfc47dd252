#include "derange/conditional.hpp"

#include <algorithm>
#include <vector>

#include "derange/oracle.hpp"
#include "doctest.h"

using namespace derange;

TEST_CASE("conditional probability values from the reference tables") {
  CHECK(cond_fix_prob(make_cond_params(5, 4, 0)).str() == "9/53");
  CHECK(render_fixed(cond_fix_prob(make_cond_params(5, 4, 0)).rat(), 4, false) == ".1698");
  CHECK(cond_fix_prob(make_cond_params(5, 3, 2)).rat() == Rat(1, 4));
  for (unsigned n = 1; n <= 12; ++n) CHECK(cond_fix_prob(make_cond_params(n, 0, 0)).rat() == Rat(1, n));
  for (unsigned n = 2; n <= 12; ++n)
    CHECK(cond_fix_prob(make_cond_params(n, n - 1, n - 2)).rat() == 0);
  CHECK_THROWS_AS(cond_fix_prob(make_count_params(5, 5, 0)), std::invalid_argument);
}

TEST_CASE("inclusion-exclusion forms") {
  CHECK(cond_fix_prob_incl_excl(make_cond_params(5, 2, 1)).rat() == Rat(2, 9));
  CHECK(render_fixed(cond_fix_prob_incl_excl(make_cond_params(5, 2, 1)).rat(), 3) == "0.222");
  CHECK(cond_fix_prob_incl_excl(make_cond_params(4, 3, 0)).rat() == Rat(2, 11));
  CHECK(cond_fix_prob_incl_excl(make_cond_params(6, 5, 0)).rat() == Rat(44, 309));
  CHECK(render_fixed(cond_fix_prob_incl_excl(make_cond_params(6, 5, 0)).rat(), 4, false) ==
        ".1424");
}

TEST_CASE("all routes agree, including the enumeration oracle") {
  for (unsigned n = 1; n <= 12; ++n)
    for (unsigned k = 0; k < n; ++k)
      for (unsigned d = 0; d <= k; ++d) {
        const Params params = make_cond_params(n, k, d);
        const Prob direct = cond_fix_prob(params);
        CHECK(direct == cond_fix_prob_incl_excl(params));
        if (d == 0 && k <= 3) CHECK(direct == closed_form_small_k(n, k));
        if (n <= 8) {
          std::vector<int> prefix;
          for (unsigned x = 1; x <= k; ++x) prefix.push_back(static_cast<int>(x));
          CHECK(direct.rat() ==
                oracle::conditional_on_subset(n, prefix, static_cast<int>(k + 1), d).rat());
        }
      }
}

TEST_CASE("reduction by shared fixed points") {
  for (unsigned n = 1; n <= 12; ++n)
    for (unsigned k = 0; k < n; ++k)
      for (unsigned d = 0; d <= k; ++d)
        for (unsigned a = 0; a <= d; ++a)
          CHECK(cond_fix_prob(make_cond_params(n, k, d)) ==
                cond_fix_prob(make_cond_params(n - a, k - a, d - a)));
}

TEST_CASE("closed forms for small k") {
  CHECK(closed_form_small_k(4, 1).rat() == Rat(2, 9));
  CHECK(render_fixed(closed_form_small_k(4, 1).rat(), 4, false) == ".2222");
  CHECK(closed_form_small_k(5, 2).rat() == Rat(7, 39));
  CHECK(render_fixed(closed_form_small_k(5, 2).rat(), 4, false) == ".1795");
  CHECK(closed_form_small_k(6, 3).rat() == Rat(32, 213));
  CHECK(render_fixed(closed_form_small_k(6, 3).rat(), 4, false) == ".1502");
  CHECK_THROWS_AS(closed_form_small_k(10, 4), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_small_k(3, 3), std::invalid_argument);
  for (unsigned n = 2; n <= 30; ++n)
    for (unsigned k = 0; k <= std::min(3u, n - 1); ++k)
      CHECK(closed_form_small_k(n, k) == cond_fix_prob(make_cond_params(n, k, 0)));
}

TEST_CASE("sandwich bounds") {
  const BoundsTriple b = f_bounds(make_cond_params(5, 3, 0));
  CHECK(b.lower == Rat(13, 80));
  CHECK(b.central == Rat(17, 100));
  CHECK(b.upper == Rat(9, 50));
  CHECK_FALSE(b.outside_hypothesis);
  const Rat f = cond_fix_prob(make_cond_params(5, 3, 0)).rat();
  CHECK(f == Rat(11, 64));
  CHECK(b.lower <= f);
  CHECK(f <= b.upper);

  // kappa = 0 collapses the sandwich to 1/(n-d).
  for (unsigned n = 2; n <= 10; ++n) {
    const BoundsTriple flat = f_bounds(make_cond_params(n, 0, 0));
    CHECK(flat.lower == Rat(1, n));
    CHECK(flat.central == Rat(1, n));
    CHECK(flat.upper == Rat(1, n));
    CHECK(cond_fix_prob(make_cond_params(n, 0, 0)).rat() == Rat(1, n));
  }

  // Shifted instance: bounds of (7,4,1) are those of (6,3,0).
  const BoundsTriple shifted = f_bounds(make_cond_params(7, 4, 1));
  CHECK(shifted.lower == f_bounds(make_cond_params(6, 3, 0)).lower);
  CHECK(shifted.upper == f_bounds(make_cond_params(6, 3, 0)).upper);
  const Rat f741 = cond_fix_prob(make_cond_params(7, 4, 1)).rat();
  CHECK(f741 == Rat(32, 213));
  CHECK(shifted.lower <= f741);
  CHECK(f741 <= shifted.upper);

  // Containment wherever the hypothesis n-d > 3 holds.
  const DerangementTable table(30);
  for (unsigned n = 1; n <= 30; ++n)
    for (unsigned k = 0; k < n; ++k)
      for (unsigned d = 0; d <= k; ++d) {
        if (n - d <= 3) continue;
        const BoundsTriple bb = f_bounds(Params{n, k, d});
        const Rat ff = table.f(n, k, d);
        CHECK(bb.lower <= ff);
        CHECK(ff <= bb.upper);
      }

  // Outside the hypothesis the values are flagged but still produced.
  CHECK(f_bounds(make_cond_params(3, 2, 0)).outside_hypothesis);
  CHECK(f_bounds(make_cond_params(5, 3, 2)).outside_hypothesis);
  CHECK_THROWS_AS(f_bounds(make_cond_params(2, 1, 0)), std::invalid_argument);
}

TEST_CASE("gap to 1/(n+1) at the last point") {
  CHECK(last_point_gap(5) == Rat(1, 318));
  CHECK(last_point_gap(3) == Rat(1, 12));
  CHECK(last_point_gap(10) < Rat(1, 1000000));
  // The gap simplifies to 1/((n+1) d_{n,n-1}); verified instance by
  // instance, not assumed.
  for (unsigned n = 2; n <= 20; ++n)
    CHECK(last_point_gap(n) == Rat(1, Int(n + 1) * partial_derangements(n, n - 1).value()));
  for (unsigned n = 3; n < 20; ++n) CHECK(last_point_gap(n + 1) < last_point_gap(n));
}
