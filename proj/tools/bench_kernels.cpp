// Compares the serial reference kernels against their OpenMP variants and
// reports timings. The parallel paths must agree exactly with the serial
// ones; this binary also re-checks that on every run.

#include <cstdio>
#include <cstdlib>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#else
#include <chrono>
#endif

#include "derange/analysis.hpp"
#include "derange/oracle.hpp"
#include "derange/sampler.hpp"

namespace {

double now() {
#if defined(_OPENMP)
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

void row(const char* name, double serial, double parallel, const char* note) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, note);
}

}  // namespace

int main(int argc, char** argv) {
  unsigned n_enum = 10;
  unsigned n_sweep = 26;
  std::uint64_t trials = 4000000;
  if (argc > 1) n_enum = static_cast<unsigned>(std::atoi(argv[1]));
  if (argc > 2) n_sweep = static_cast<unsigned>(std::atoi(argv[2]));
  if (argc > 3) trials = static_cast<std::uint64_t>(std::atoll(argv[3]));

#if defined(_OPENMP)
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const bool large = n_enum > derange::oracle::kEnumGuard;
    double t0 = now();
    const auto serial = derange::oracle::fixed_prefix_histogram(n_enum, large);
    double t1 = now();
    const auto parallel = derange::oracle::fixed_prefix_histogram_parallel(n_enum, large);
    double t2 = now();
    row(("enumeration n=" + std::to_string(n_enum)).c_str(), t1 - t0, t2 - t1,
        serial == parallel ? "exact match" : "MISMATCH");
  }
  {
    double t0 = now();
    const auto serial = derange::analysis::monotone_in_d(n_sweep, 1);
    double t1 = now();
    const auto parallel = derange::analysis::monotone_in_d(n_sweep, 0);
    double t2 = now();
    bool agree = serial.size() == parallel.size();
    for (std::size_t i = 0; agree && i < serial.size(); ++i)
      agree = serial.records()[i].claim == parallel.records()[i].claim &&
              serial.records()[i].params == parallel.records()[i].params &&
              serial.records()[i].status == parallel.records()[i].status &&
              serial.records()[i].witness == parallel.records()[i].witness;
    row(("monotone-d sweep n=" + std::to_string(n_sweep)).c_str(), t1 - t0, t2 - t1,
        agree ? "identical report" : "MISMATCH");
  }
  {
    const unsigned workers = 8;
    double t0 = now();
    const auto single = derange::mc::estimate_f(6, 3, 0, trials, 7, 1);
    double t1 = now();
    const auto pooled = derange::mc::estimate_f(6, 3, 0, trials, 7, workers);
    double t2 = now();
    // Pooled substreams draw different variates; only the accounting and
    // the statistical agreement are comparable.
    const bool agree = single.trials_total == pooled.trials_total;
    row(("sampler trials=" + std::to_string(trials)).c_str(), t1 - t0, t2 - t1,
        agree ? "independent streams" : "MISMATCH");
  }
  return 0;
}
