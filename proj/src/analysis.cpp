#include "derange/analysis.hpp"

#include <sstream>

#include "derange/conditional.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace derange::analysis {

namespace {

std::string rat_str(const Rat& r) { return Prob::to_string(r); }

// Evaluates one record per tuple into a pre-sized vector, optionally in
// parallel. Slot i is written exactly once, so the result is identical
// for any thread count.
template <typename Tuple, typename Eval>
std::vector<ClaimRecord> run_sweep(const std::vector<Tuple>& tuples, Eval eval, int threads) {
  std::vector<ClaimRecord> out(tuples.size());
  const long long total = static_cast<long long>(tuples.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (threads != 1)
#endif
  for (long long idx = 0; idx < total; ++idx) {
    try {
      out[static_cast<std::size_t>(idx)] = eval(tuples[static_cast<std::size_t>(idx)]);
    } catch (const std::exception& e) {
      out[static_cast<std::size_t>(idx)] =
          ClaimRecord{"sweep-error", "", ClaimStatus::violation, e.what()};
    }
  }
  (void)threads;
  return out;
}

}  // namespace

Triangle::Triangle(unsigned n) : n_(n) {
  if (n < 1 || n > 30) throw std::invalid_argument("Triangle: n must be in 1..30");
  DerangementTable table(n);
  entries_.reserve(n * (n + 1) / 2);
  for (unsigned d = 0; d + 1 <= n; ++d)
    for (unsigned k = d; k + 1 <= n; ++k) entries_.push_back(Prob::from_rat(table.f(n, k, d)));
}

const Prob& Triangle::at(unsigned k, unsigned d) const {
  if (d > k || k + 1 > n_) throw std::out_of_range("Triangle::at");
  // Row d starts after rows 0..d-1, which hold (n-0-1)+...+(n-d) entries.
  std::size_t offset = 0;
  for (unsigned r = 0; r < d; ++r) offset += n_ - r;
  return entries_[offset + (k - d)];
}

Triangle triangle(unsigned n) { return Triangle(n); }

VerificationReport monotone_in_k(unsigned n_max, int threads) {
  if (n_max < 2) throw std::invalid_argument("monotone_in_k: n_max must be >= 2");
  DerangementTable table(n_max);
  struct T {
    unsigned n, d, i;
  };
  std::vector<T> tuples;
  for (unsigned n = 2; n <= n_max; ++n)
    for (unsigned d = 0; d + 1 < n; ++d)
      for (unsigned i = d; i + 2 <= n; ++i) tuples.push_back({n, d, i});
  auto eval = [&](const T& t) {
    const unsigned n = t.n, d = t.d, i = t.i, j = t.i + 1;
    const Rat fi = table.f(n, i, d), fj = table.f(n, j, d);
    const bool exceptional = (n == j + 1 && n == i + 2 && n == d + 3);
    const bool ok = exceptional ? (fj > fi) : (fj < fi);
    return ClaimRecord{"cond-monotone-k",
                       "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                           " j=" + std::to_string(j) + " d=" + std::to_string(d),
                       ok ? (exceptional ? ClaimStatus::exception_expected : ClaimStatus::holds)
                          : ClaimStatus::violation,
                       "f(j)=" + rat_str(fj) + " f(i)=" + rat_str(fi)};
  };
  VerificationReport report;
  for (ClaimRecord& r : run_sweep(tuples, eval, threads)) report.add(std::move(r));
  // Pairs that span the reversal: transitivity breaks across the
  // exceptional tuple, and the endpoints in fact coincide.
  for (unsigned n = 3; n <= n_max; ++n) {
    const unsigned d = n - 3;
    const Rat lo = table.f(n, d, d), hi = table.f(n, d + 2, d);
    report.add("cond-monotone-k-span",
               "n=" + std::to_string(n) + " i=" + std::to_string(d) +
                   " j=" + std::to_string(d + 2) + " d=" + std::to_string(d),
               lo == hi ? ClaimStatus::holds : ClaimStatus::violation,
               "f(i)=" + rat_str(lo) + " f(j)=" + rat_str(hi));
  }
  return report;
}

VerificationReport monotone_in_n(unsigned n_max, int threads) {
  if (n_max < 3) throw std::invalid_argument("monotone_in_n: n_max must be >= 3");
  DerangementTable table(n_max);
  struct T {
    unsigned n, m, k, d;
  };
  std::vector<T> tuples;
  for (unsigned d = 0; d < n_max; ++d)
    for (unsigned k = d; k < n_max; ++k)
      for (unsigned n = k + 1; n < n_max; ++n)
        for (unsigned m = n + 1; m <= n_max; ++m) tuples.push_back({n, m, k, d});
  auto eval = [&](const T& t) {
    const Rat fn = table.f(t.n, t.k, t.d), fm = table.f(t.m, t.k, t.d);
    const bool exceptional = (t.n == t.d + 2 && t.k == t.d + 1);
    const bool ok = exceptional ? (fm > fn && fn == 0) : (fm < fn);
    return ClaimRecord{"cond-monotone-n",
                       "n=" + std::to_string(t.n) + " m=" + std::to_string(t.m) +
                           " k=" + std::to_string(t.k) + " d=" + std::to_string(t.d),
                       ok ? (exceptional ? ClaimStatus::exception_expected : ClaimStatus::holds)
                          : ClaimStatus::violation,
                       "f(m)=" + rat_str(fm) + " f(n)=" + rat_str(fn)};
  };
  VerificationReport report;
  for (ClaimRecord& r : run_sweep(tuples, eval, threads)) report.add(std::move(r));
  return report;
}

VerificationReport monotone_in_d(unsigned n_max, int threads) {
  if (n_max < 3) throw std::invalid_argument("monotone_in_d: n_max must be >= 3");
  DerangementTable table(n_max);
  struct T {
    unsigned n, k, d, c;
  };
  std::vector<T> tuples;
  for (unsigned n = 2; n <= n_max; ++n)
    for (unsigned k = 0; k < n; ++k)
      for (unsigned d = 1; d <= k; ++d)
        for (unsigned c = 0; c < d; ++c) tuples.push_back({n, k, d, c});
  auto eval = [&](const T& t) {
    const Rat fd = table.f(t.n, t.k, t.d), fc = table.f(t.n, t.k, t.c);
    const bool exceptional = (t.n == t.k + 1 && t.n == t.d + 2);
    const bool ok = exceptional ? (fd == 0 && fc > 0) : (fd > fc);
    return ClaimRecord{"cond-monotone-d",
                       "n=" + std::to_string(t.n) + " k=" + std::to_string(t.k) +
                           " d=" + std::to_string(t.d) + " c=" + std::to_string(t.c),
                       ok ? (exceptional ? ClaimStatus::exception_expected : ClaimStatus::holds)
                          : ClaimStatus::violation,
                       "f(d)=" + rat_str(fd) + " f(c)=" + rat_str(fc)};
  };
  VerificationReport report;
  for (ClaimRecord& r : run_sweep(tuples, eval, threads)) report.add(std::move(r));
  return report;
}

VerificationReport decrease_equivalence(unsigned n_max) {
  if (n_max < 4) throw std::invalid_argument("decrease_equivalence: n_max must be >= 4");
  DerangementTable table(n_max);
  VerificationReport report;
  for (unsigned n = 4; n <= n_max; ++n) {
    for (unsigned k = 1; k < n; ++k) {
      const bool lhs = table.f0(n, k - 1) < table.f0(n - 1, k - 1);
      const bool rhs = table.f0(n, k) < table.f0(n, k - 1);
      report.add("decrease-equivalence", "n=" + std::to_string(n) + " k=" + std::to_string(k),
                 lhs == rhs ? ClaimStatus::holds : ClaimStatus::violation,
                 std::string("in-n=") + (lhs ? "true" : "false") + " in-k=" +
                     (rhs ? "true" : "false"));
    }
  }
  return report;
}

VerificationReport identity_suite(unsigned n_max, int threads) {
  if (n_max < 2) throw std::invalid_argument("identity_suite: n_max must be >= 2");
  DerangementTable table(n_max);
  struct T {
    unsigned n, k, d;
    int which;
  };
  enum {
    kCondComplement,
    kPointSplit,
    kStepDown,
    kRatioExpansion,
    kParityBoundary,
    kPMonotoneK,
    kPMonotoneN,
    kPDiagonal,
  };
  std::vector<T> tuples;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned k = 0; k < n; ++k) tuples.push_back({n, k, 0, kCondComplement});
    for (unsigned k = 1; k < n; ++k)
      for (unsigned d = 0; d <= k; ++d) tuples.push_back({n, k, d, kPointSplit});
    for (unsigned k = 0; k < n; ++k) tuples.push_back({n, k, 0, kStepDown});
    if (n >= 3)
      for (unsigned k = 1; k < n; ++k) tuples.push_back({n, k, 0, kRatioExpansion});
    tuples.push_back({n, 0, 0, kParityBoundary});
    for (unsigned k = 1; k <= n; ++k) tuples.push_back({n, k, 0, kPMonotoneK});
    if (n >= 2)
      for (unsigned k = 0; k < n; ++k) tuples.push_back({n, k, 0, kPMonotoneN});
    for (unsigned k = 1; k < n; ++k) tuples.push_back({n, k, 0, kPDiagonal});
  }
  auto nk = [](const T& t) {
    return "n=" + std::to_string(t.n) + " k=" + std::to_string(t.k);
  };
  auto eval = [&](const T& t) -> ClaimRecord {
    const unsigned n = t.n, k = t.k, d = t.d;
    switch (t.which) {
      case kCondComplement: {
        const Rat lhs = table.f0(n, k);
        const Rat rhs = Rat(1) - table.p0(n, k + 1) / table.p0(n, k);
        return {"cond-complement", nk(t),
                lhs == rhs ? ClaimStatus::holds : ClaimStatus::violation,
                "lhs=" + rat_str(lhs) + " rhs=" + rat_str(rhs)};
      }
      case kPointSplit: {
        const Rat lhs = table.p(n, k, d);
        const Rat rhs = Rat(k, n) * table.p(n - 1, static_cast<long long>(k) - 1, d) +
                        Rat(n - k, n) * table.p(n - 1, k, d);
        return {"point-split", nk(t) + " d=" + std::to_string(d),
                lhs == rhs ? ClaimStatus::holds : ClaimStatus::violation,
                "lhs=" + rat_str(lhs) + " rhs=" + rat_str(rhs)};
      }
      case kStepDown: {
        const Rat lhs = table.p0(n, k + 1);
        const Rat rhs = table.p0(n, k) - Rat(1, n) * table.p(n - 1, k, 0);
        return {"p-step-down", nk(t),
                lhs == rhs ? ClaimStatus::holds : ClaimStatus::violation,
                "lhs=" + rat_str(lhs) + " rhs=" + rat_str(rhs)};
      }
      case kRatioExpansion: {
        const Rat lhs = table.p0(n, k + 1) / table.p0(n, k);
        const Rat rhs =
            Rat(1) - Rat(1, n) +
            Rat(Int(k), Int(n) * n * (n - 1)) *
                (table.p(n - 2, static_cast<long long>(k) - 1, 0) / table.p0(n, k));
        return {"ratio-expansion", nk(t),
                lhs == rhs ? ClaimStatus::holds : ClaimStatus::violation,
                "lhs=" + rat_str(lhs) + " rhs=" + rat_str(rhs)};
      }
      case kParityBoundary: {
        // n = 1 compares against p(0,0,0) = 1, consistent with d_0 = 1.
        const Rat lhs = table.p0(n, n) - table.p0(n - 1, n - 1);
        const Rat rhs = Rat(n % 2 == 0 ? Int(1) : Int(-1), factorial(n).value());
        return {"parity-boundary", "n=" + std::to_string(n),
                lhs == rhs ? ClaimStatus::holds : ClaimStatus::violation,
                "lhs=" + rat_str(lhs) + " rhs=" + rat_str(rhs)};
      }
      case kPMonotoneK: {
        const Rat a = table.p0(n, k), b = table.p0(n, k - 1);
        return {"p-monotone-k", nk(t), a <= b ? ClaimStatus::holds : ClaimStatus::violation,
                "p(k)=" + rat_str(a) + " p(k-1)=" + rat_str(b)};
      }
      case kPMonotoneN: {
        const Rat a = table.p0(n - 1, k), b = table.p0(n, k);
        return {"p-monotone-n", nk(t), a <= b ? ClaimStatus::holds : ClaimStatus::violation,
                "p(n-1)=" + rat_str(a) + " p(n)=" + rat_str(b)};
      }
      default: {
        const Rat a = table.p0(n, k), b = table.p0(n - 1, k - 1);
        return {"p-diagonal", nk(t), a <= b ? ClaimStatus::holds : ClaimStatus::violation,
                "p(n,k)=" + rat_str(a) + " p(n-1,k-1)=" + rat_str(b)};
      }
    }
  };
  VerificationReport report;
  for (ClaimRecord& r : run_sweep(tuples, eval, threads)) report.add(std::move(r));

  // Discovered, not hard-coded: monotonicity of p in k fails somewhere
  // once d != 0.
  const auto witness = find_p_nonmonotone_witness(std::min(n_max, 8u));
  if (witness) {
    const Rat a = table.p(witness->n, witness->k, witness->d);
    const Rat b = table.p(witness->n, witness->k - 1, witness->d);
    report.add("p-nonmonotone-d-witness",
               "n=" + std::to_string(witness->n) + " k=" + std::to_string(witness->k) +
                   " d=" + std::to_string(witness->d),
               ClaimStatus::holds, "p(k)=" + rat_str(a) + " > p(k-1)=" + rat_str(b));
  } else {
    report.add("p-nonmonotone-d-witness", "n<=" + std::to_string(std::min(n_max, 8u)),
               ClaimStatus::violation, "no witness found");
  }
  return report;
}

VerificationReport sandwich_suite(unsigned n_max, int threads) {
  if (n_max < 2) throw std::invalid_argument("sandwich_suite: n_max must be >= 2");
  DerangementTable table(n_max);
  struct T {
    unsigned n, k, d;
    int which;
  };
  std::vector<T> tuples;
  for (unsigned n = 1; n <= n_max; ++n)
    for (unsigned k = 0; k < n; ++k)
      for (unsigned d = 0; d <= k; ++d)
        if (n - d > 3) tuples.push_back({n, k, d, 0});
  for (unsigned n = 2; n <= n_max; ++n)
    for (unsigned k = 1; k < n; ++k) {
      tuples.push_back({n, k, 0, 1});
      tuples.push_back({n, k, 0, 2});
    }
  auto eval = [&](const T& t) -> ClaimRecord {
    const unsigned n = t.n, k = t.k, d = t.d;
    if (t.which == 0) {
      const BoundsTriple b = f_bounds(Params{n, k, d});
      const Rat f = table.f(n, k, d);
      const bool ok = !b.outside_hypothesis && b.lower <= f && f <= b.upper;
      return {"sandwich",
              "n=" + std::to_string(n) + " k=" + std::to_string(k) + " d=" + std::to_string(d),
              ok ? ClaimStatus::holds : ClaimStatus::violation,
              "lower=" + rat_str(b.lower) + " f=" + rat_str(f) + " upper=" + rat_str(b.upper)};
    }
    if (t.which == 1) {
      const Rat ratio = table.p0(n, k + 1) / table.p0(n, k);
      const Rat floor = Rat(n - 1, n);
      return {"ratio-floor", "n=" + std::to_string(n) + " k=" + std::to_string(k),
              ratio >= floor ? ClaimStatus::holds : ClaimStatus::violation,
              "ratio=" + rat_str(ratio)};
    }
    const Rat f = table.f0(n, k);
    return {"f-cap", "n=" + std::to_string(n) + " k=" + std::to_string(k),
            f <= Rat(1, n) ? ClaimStatus::holds : ClaimStatus::violation, "f=" + rat_str(f)};
  };
  VerificationReport report;
  for (ClaimRecord& r : run_sweep(tuples, eval, threads)) report.add(std::move(r));
  return report;
}

std::vector<std::vector<std::string>> table_cells(char which, unsigned n_max, unsigned k_max,
                                                  unsigned places) {
  if (which != 'p' && which != 'f') throw std::invalid_argument("table: which must be p or f");
  if (n_max < 1 || n_max > 30) throw std::invalid_argument("table: n_max must be in 1..30");
  if (places < 1) throw std::invalid_argument("table: places must be >= 1");
  DerangementTable table(n_max);
  std::vector<std::vector<std::string>> rows;
  for (unsigned n = 1; n <= n_max; ++n) {
    std::vector<std::string> row;
    const unsigned k_top = (which == 'p') ? std::min(k_max, n) : std::min(k_max, n - 1);
    for (unsigned k = 0; k <= k_top; ++k)
      row.push_back(render_table(which == 'p' ? table.p0(n, k) : table.f0(n, k), places));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table_render(char which, unsigned n_max, unsigned k_max, unsigned places) {
  const auto rows = table_cells(which, n_max, k_max, places);
  const unsigned width = places + 3;
  std::ostringstream out;
  unsigned k_top = 0;
  for (const auto& row : rows) k_top = std::max<unsigned>(k_top, static_cast<unsigned>(row.size()));
  out << "n\\k";
  for (unsigned k = 0; k < k_top; ++k) {
    std::string head = std::to_string(k);
    out << std::string(width - head.size(), ' ') << head;
  }
  out << "\n";
  for (unsigned n = 1; n <= rows.size(); ++n) {
    std::string label = std::to_string(n);
    out << label << std::string(3 - std::min<std::size_t>(3, label.size()), ' ');
    for (const std::string& cell : rows[n - 1])
      out << std::string(width - std::min<std::size_t>(width, cell.size()), ' ') << cell;
    out << "\n";
  }
  return out.str();
}

}  // namespace derange::analysis
