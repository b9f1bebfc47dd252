#pragma once

// Monte Carlo cross-validation: uniform random permutations and
// rejection-conditioned estimates of the conditional fixed-point
// probability, with standard errors.
//
// Single-stream mode (workers = 1) is the default and is bit-reproducible
// from the seed alone. With workers > 1 each worker draws from its own
// substream derived from (seed, worker index) and the pooled counts are
// identical for a given (seed, workers) regardless of scheduling.

#include <cstdint>
#include <random>
#include <string>

#include "derange/oracle.hpp"

namespace derange::mc {

using Rng = std::mt19937_64;

inline constexpr const char* kGeneratorName = "mt19937-64";

struct Estimate {
  double point_estimate = 0.0;  // meaningful only when trials_conditioned > 0
  double standard_error = 0.0;
  std::uint64_t trials_total = 0;
  std::uint64_t trials_conditioned = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string generator = kGeneratorName;

  bool degenerate() const { return trials_conditioned == 0; }
};

// Unbiased draw from [0, bound) by rejection; avoids the
// implementation-defined std::uniform_int_distribution.
std::uint64_t bounded_uniform(Rng& rng, std::uint64_t bound);

// Uniform over S_n: backward swap construction, each of the n! outcomes
// equally likely.
oracle::Permutation sample_permutation(unsigned n, Rng& rng);

// Draws `trials` unconditioned permutations; among those with exactly d
// fixed points in [k], reports the fraction fixing k+1 and the binomial
// standard error sqrt(p(1-p)/conditioned).
Estimate estimate_f(unsigned n, unsigned k, unsigned d, std::uint64_t trials,
                    std::uint64_t seed, unsigned workers = 1);

}  // namespace derange::mc
