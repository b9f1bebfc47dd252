#pragma once

// Ground truth by exhaustive enumeration of S_n for small n, plus the
// explicit bijection between {rho in S_n : rho(i) = j} and S_{n-1} with
// fixed-point tracking.
//
// Enumeration is streamed in lexicographic order; nothing of size n! is
// ever materialized. The guard is n <= 10 by default, n <= 12 with
// allow_large; nothing beyond 12 under any flag.

#include <cstdint>
#include <vector>

#include "derange/counts.hpp"
#include "derange/exact.hpp"
#include "derange/report.hpp"

namespace derange::oracle {

inline constexpr unsigned kEnumGuard = 10;
inline constexpr unsigned kEnumHardCap = 12;

// A bijection on [n], stored as the 1-indexed image sequence: the value
// at position x is alpha(x).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(unsigned n);

  unsigned size() const { return static_cast<unsigned>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<unsigned>(x - 1)]; }
  const std::vector<int>& images() const { return images_; }

  unsigned fixed_in_prefix(unsigned k) const;

  friend bool operator==(const Permutation& a, const Permutation& b) = default;

 private:
  std::vector<int> images_;
};

// A bijection [n] \ {domain hole} -> [n] \ {codomain hole}, stored as a
// length-n image sequence with a zero at the hole. Points keep their
// original labels; relabeling happens only in relabel_down.
class PartialMap {
 public:
  PartialMap(std::vector<int> images, int domain_excluded, int codomain_excluded);

  unsigned size() const { return static_cast<unsigned>(images_.size()); }
  int domain_excluded() const { return domain_excluded_; }
  int codomain_excluded() const { return codomain_excluded_; }
  int at(int x) const;

  friend bool operator==(const PartialMap& a, const PartialMap& b) = default;

 private:
  std::vector<int> images_;
  int domain_excluded_;
  int codomain_excluded_;
};

// |{alpha in S_n : exactly d fixed points among the first k}| by
// enumeration.
Count enumerate_count(unsigned n, unsigned k, unsigned d, bool allow_large = false);

// P(alpha(a) = a | exactly d fixed points in A) by enumeration; A is a
// set of points, a a point outside A.
Prob conditional_on_subset(unsigned n, const std::vector<int>& points, int a, unsigned d,
                           bool allow_large = false);

// The three components of the collapse bijection, each individually
// testable for its fixed-point behavior:
//   restrict_domain  drops the point i from a permutation with rho(i)=j,
//   rewire_image     redirects the value i to j (only needed when i != j),
//   relabel_down     closes the hole by shifting labels above i down by 1.
PartialMap restrict_domain(const Permutation& rho, int i, int j);
PartialMap rewire_image(const PartialMap& pm);
Permutation relabel_down(const PartialMap& pm);

// Collapse rho in S_n with rho(i) = j to a permutation of [n-1], and the
// inverse expansion. collapse(expand(alpha,i,j),i,j) == alpha and
// expand(collapse(rho,i,j),i,j) == rho.
Permutation collapse(const Permutation& rho, int i, int j);
Permutation expand(const Permutation& alpha, int i, int j);

// |{alpha in S_n : alpha(i) = j, exactly d fixed in [k]}| by enumeration.
// Equals c(n-1,k,d) when k < min(i,j) and c(n-1,k-1,d) when i <= k < j.
Count count_B(unsigned n, unsigned k, unsigned d, int i, int j, bool allow_large = false);

// Histogram hist[k][d] of prefix fixed-point counts over all of S_n, for
// every 0 <= d <= k <= n, in one streamed pass. The _parallel variant splits
// the pass by the image of point 1 across OpenMP threads and merges; the
// two agree exactly.
using Histogram = std::vector<std::vector<std::uint64_t>>;
Histogram fixed_prefix_histogram(unsigned n, bool allow_large = false);
Histogram fixed_prefix_histogram_parallel(unsigned n, bool allow_large = false);

// Enumeration-vs-formula audit: c(n,k,d) against the histogram, the
// partition sum_d c(n,k,d) = n!, the one-point-fixed counts, and
// subset-independence of the conditional probability.
VerificationReport oracle_suite(unsigned n_cap);

// Bijection audit: collapse is injective onto S_{n-1} with the exact
// expected cardinality for every (i,j), expand round-trips, the
// fixed-point claims of each component map hold exhaustively, and the
// known-image counts match c(n-1,...). Includes one pinned S_8 example.
VerificationReport bijection_suite(unsigned n_cap);

}  // namespace derange::oracle
