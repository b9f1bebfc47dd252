#include "derange/sampler.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace derange::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, unsigned worker) {
  return splitmix64(seed + 0x632BE59BD9B4E019ULL * (worker + 1));
}

void shuffle_identity(std::vector<int>& images, Rng& rng) {
  const unsigned n = static_cast<unsigned>(images.size());
  std::iota(images.begin(), images.end(), 1);
  for (unsigned i = n; i >= 2; --i) {
    const std::uint64_t j = bounded_uniform(rng, i);
    std::swap(images[i - 1], images[static_cast<unsigned>(j)]);
  }
}

struct Tally {
  std::uint64_t conditioned = 0;
  std::uint64_t hits = 0;
};

Tally run_stream(unsigned n, unsigned k, unsigned d, std::uint64_t trials, Rng rng) {
  Tally tally;
  std::vector<int> images(n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    shuffle_identity(images, rng);
    unsigned fixed = 0;
    for (unsigned x = 1; x <= k; ++x) fixed += (images[x - 1] == static_cast<int>(x));
    if (fixed != d) continue;  // conditioning by rejection
    ++tally.conditioned;
    tally.hits += (images[k] == static_cast<int>(k + 1));
  }
  return tally;
}

}  // namespace

std::uint64_t bounded_uniform(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

oracle::Permutation sample_permutation(unsigned n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_permutation: n must be >= 1");
  std::vector<int> images(n);
  shuffle_identity(images, rng);
  return oracle::Permutation(std::move(images));
}

Estimate estimate_f(unsigned n, unsigned k, unsigned d, std::uint64_t trials,
                    std::uint64_t seed, unsigned workers) {
  make_cond_params(n, k, d);
  if (trials < 1) throw std::invalid_argument("estimate_f: trials must be >= 1");
  if (workers < 1) throw std::invalid_argument("estimate_f: workers must be >= 1");

  std::vector<Tally> tallies(workers);
  if (workers == 1) {
    tallies[0] = run_stream(n, k, d, trials, Rng(seed));
  } else {
    const std::uint64_t base = trials / workers, extra = trials % workers;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (int w = 0; w < static_cast<int>(workers); ++w) {
      const unsigned uw = static_cast<unsigned>(w);
      const std::uint64_t share = base + (uw < extra ? 1 : 0);
      tallies[uw] = run_stream(n, k, d, share, Rng(substream_seed(seed, uw)));
    }
  }

  Tally total;
  for (const Tally& t : tallies) {
    total.conditioned += t.conditioned;
    total.hits += t.hits;
  }

  Estimate est;
  est.trials_total = trials;
  est.trials_conditioned = total.conditioned;
  est.seed = seed;
  est.workers = workers;
  if (total.conditioned > 0) {
    est.point_estimate = static_cast<double>(total.hits) / static_cast<double>(total.conditioned);
    est.standard_error = std::sqrt(est.point_estimate * (1.0 - est.point_estimate) /
                                   static_cast<double>(total.conditioned));
  }
  return est;
}

}  // namespace derange::mc
