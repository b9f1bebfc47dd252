// Acceptance suite: runs each numbered criterion end to end and prints
// one PASS/FAIL line per criterion, with runtime against its budget.
//
//   acceptance --cli <path-to-cli> [criterion ...]
//
// Exit status is the number of failed criteria (0 = all pass).
//
// Criterion 2 compares the rendered 4-place tables cell-for-cell against
// the published reference tables transcribed below, verbatim. Two cells
// of the published p-table are arithmetically inconsistent with exact
// arithmetic (see the adjudication notes printed on mismatch); they are
// NOT patched here, so criterion 2 is expected to report those two cells
// as failures, each cross-checked against brute-force enumeration.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "derange/analysis.hpp"
#include "derange/conditional.hpp"
#include "derange/counts.hpp"
#include "derange/exact.hpp"
#include "derange/oracle.hpp"
#include "derange/sampler.hpp"

using namespace derange;

namespace {

std::string g_cli;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(std::string note) {
    pass = false;
    notes.push_back("FAIL: " + std::move(note));
  }
  void note(std::string text) { notes.push_back(std::move(text)); }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult result;
  if (!pipe) return result;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
  result.status = WEXITSTATUS(pclose(pipe));
  return result;
}

std::vector<std::string> numeric_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && cur.find_first_of("0123456789") != std::string::npos &&
        cur.find('=') == std::string::npos)
      out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == '\t') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------
// 1. Triangle reproduction at n = 5, 3 places.
Outcome criterion_1() {
  Outcome out;
  const RunResult r = run_cli("triangle 5 --places 3");
  out.expect(r.status == 0, "CLI exit status " + std::to_string(r.status));
  const std::vector<std::string> expected = {
      "1.000", "0.500", "0.000", "0.333", "0.250", "0.333", "0.250", "0.222",
      "0.214", "0.182", "0.200", "0.188", "0.179", "0.172", "0.170"};
  std::vector<std::string> got;
  for (const std::string& tok : numeric_tokens(r.out))
    if (tok.find('.') != std::string::npos) got.push_back(tok);
  out.expect(got == expected, "triangle cells differ");
  if (got != expected) {
    std::string s = "got:";
    for (const auto& t : got) s += " " + t;
    out.note(s);
  }
  return out;
}

// ---------------------------------------------------------------------
// 2. Table reproduction at 4 places, cell for cell, exact string match
// against the published reference tables.
const std::vector<std::vector<std::string>> kReferenceTableP = {
    {"1", "0"},
    {"1", ".5", ".5"},
    {"1", ".6666", ".5", ".3333"},
    {"1", ".75", ".5833", ".4583", ".375"},
    {"1", ".8", ".65", ".5333", ".4417", ".3667"},
    {"1", ".8333", ".7", ".5917", ".5203", ".4292", ".3681"},
};
const std::vector<std::vector<std::string>> kReferenceTableF = {
    {"1"},
    {".5", "0"},
    {".3333", ".25", ".3333"},
    {".25", ".2222", ".2143", ".1818"},
    {".2", ".1875", ".1795", ".1719", ".1698"},
    {".1667", ".16", ".1548", ".1502", ".1464", ".1424"},
};

Outcome check_table(char which, const std::vector<std::vector<std::string>>& reference) {
  Outcome out;
  const RunResult r = run_cli(std::string("table ") + which + " 6 --places 4");
  out.expect(r.status == 0, "CLI exit status " + std::to_string(r.status));
  // Parse the ascii table: row label then cells.
  std::vector<std::vector<std::string>> got;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header row
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> row;
    cells >> cell;  // row label n
    while (cells >> cell) row.push_back(cell);
    if (!row.empty()) got.push_back(row);
  }
  out.expect(got.size() == reference.size(), "row count differs");
  const DerangementTable table(6);
  for (unsigned n = 1; n <= reference.size() && n <= got.size(); ++n) {
    const auto& want_row = reference[n - 1];
    const auto& got_row = got[n - 1];
    if (got_row.size() != want_row.size()) {
      out.fail("row n=" + std::to_string(n) + " has " + std::to_string(got_row.size()) +
               " cells, reference has " + std::to_string(want_row.size()));
      continue;
    }
    for (unsigned k = 0; k < want_row.size(); ++k) {
      if (got_row[k] == want_row[k]) continue;
      // Adjudicate the mismatch against brute-force enumeration, which
      // shares nothing with the rendering path under test.
      const Int enumerated = oracle::enumerate_count(n, k, 0).value();
      const Rat exact = (which == 'p')
                            ? Rat(enumerated, factorial(n).value())
                            : Rat(oracle::enumerate_count(n - 1, k, 0).value(), enumerated);
      const std::string from_enum = render_table(exact, 4);
      std::ostringstream note;
      note << which << "(" << n << "," << k << ",0): rendered " << got_row[k]
           << " but reference prints " << want_row[k] << "; enumeration over S_" << n
           << " gives " << Prob::to_string(exact) << " -> " << from_enum;
      if (from_enum == got_row[k])
        note << " (agrees with the rendered value; the reference cell is a misprint)";
      else
        note << " (DISAGREES with the rendered value: implementation bug)";
      out.fail(note.str());
    }
  }
  return out;
}

Outcome criterion_2() {
  Outcome p = check_table('p', kReferenceTableP);
  Outcome f = check_table('f', kReferenceTableF);
  Outcome out;
  out.pass = p.pass && f.pass;
  out.notes = p.notes;
  out.notes.insert(out.notes.end(), f.notes.begin(), f.notes.end());
  out.note(std::string("f-table: ") + (f.pass ? "all 21 cells match" : "mismatches above"));
  return out;
}

// ---------------------------------------------------------------------
// 3. Oracle equivalence for n <= 8 plus the partition identity.
Outcome criterion_3() {
  Outcome out;
  for (unsigned n = 1; n <= 8; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      Int partition = 0;
      for (unsigned d = 0; d <= k; ++d) {
        const Count formula = count_exact_fixed(make_count_params(n, k, d));
        const Count enumerated = oracle::enumerate_count(n, k, d);
        if (!(formula == enumerated))
          out.fail("c(" + std::to_string(n) + "," + std::to_string(k) + "," +
                   std::to_string(d) + "): formula " + formula.str() + " vs enumeration " +
                   enumerated.str());
        partition += formula.value();
      }
      if (partition != factorial(n).value())
        out.fail("partition sum at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  if (out.pass) out.note("all (n,k,d) with n <= 8 agree; partition sums equal n!");
  return out;
}

// ---------------------------------------------------------------------
// 4. Bijection suite.
Outcome criterion_4() {
  Outcome out;
  const oracle::Permutation rho(std::vector<int>{7, 2, 1, 5, 8, 6, 4, 3});
  const oracle::Permutation expected(std::vector<int>{6, 2, 1, 7, 5, 4, 3});
  out.expect(oracle::collapse(rho, 4, 5) == expected, "worked S_8 example");
  const VerificationReport report = oracle::bijection_suite(6);
  for (const auto& rec : report.records())
    if (rec.status == ClaimStatus::violation)
      out.fail(rec.claim + " " + rec.params + " " + rec.witness);
  if (out.pass)
    out.note(std::to_string(report.size()) + " bijection records, zero failures");
  return out;
}

// ---------------------------------------------------------------------
// 5. Identity suite to n = 30.
Outcome criterion_5() {
  Outcome out;
  const VerificationReport rec = recurrence_suite(30);
  const VerificationReport ids = analysis::identity_suite(30);
  for (const auto& r : rec.records())
    if (r.status == ClaimStatus::violation) out.fail(r.claim + " " + r.params);
  for (const auto& r : ids.records())
    if (r.status == ClaimStatus::violation) out.fail(r.claim + " " + r.params);
  // The criterion's identity list must actually have been exercised.
  std::set<std::string> claims;
  for (const auto& r : rec.records()) claims.insert(r.claim);
  for (const auto& r : ids.records()) claims.insert(r.claim);
  for (const char* required :
       {"pd-step", "one-fixed-count", "dn-product", "dn-shift", "dn-alternating",
        "cond-complement", "point-split", "p-step-down", "ratio-expansion",
        "parity-boundary"})
    out.expect(claims.count(required) == 1, std::string("claim missing: ") + required);
  if (out.pass)
    out.note(std::to_string(rec.size() + ids.size()) + " identity records, zero failures");
  return out;
}

// ---------------------------------------------------------------------
// 6. Sandwich bounds to n = 30.
Outcome criterion_6() {
  Outcome out;
  const DerangementTable table(30);
  unsigned long long checked = 0;
  for (unsigned n = 1; n <= 30; ++n)
    for (unsigned k = 0; k < n; ++k)
      for (unsigned d = 0; d <= k; ++d) {
        if (n - d <= 3) continue;
        const BoundsTriple b = f_bounds(Params{n, k, d});
        const Rat f = table.f(n, k, d);
        ++checked;
        if (!(b.lower <= f && f <= b.upper))
          out.fail("containment at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                   " d=" + std::to_string(d));
      }
  const BoundsTriple spot = f_bounds(Params{5, 3, 0});
  out.expect(spot.lower == Rat(13, 80) && spot.upper == Rat(9, 50) &&
                 table.f(5, 3, 0) == Rat(11, 64),
             "spot values at (5,3,0)");
  if (out.pass) out.note(std::to_string(checked) + " tuples inside the sandwich");
  return out;
}

// ---------------------------------------------------------------------
// 7. Monotonicity audits at n_max = 12 with exact exception sets.
Outcome criterion_7() {
  Outcome out;
  const VerificationReport in_k = analysis::monotone_in_k(12);
  const VerificationReport in_n = analysis::monotone_in_n(12);
  const VerificationReport in_d = analysis::monotone_in_d(12);
  for (const VerificationReport* report : {&in_k, &in_n, &in_d})
    for (const auto& r : report->records())
      if (r.status == ClaimStatus::violation) out.fail(r.claim + " " + r.params);

  // k-direction exceptions: exactly n = j+1 = i+2 = d+3.
  std::set<std::string> got_k, want_k;
  for (const auto& r : in_k.records())
    if (r.status == ClaimStatus::exception_expected) got_k.insert(r.params);
  for (unsigned n = 3; n <= 12; ++n)
    want_k.insert("n=" + std::to_string(n) + " i=" + std::to_string(n - 2) +
                  " j=" + std::to_string(n - 1) + " d=" + std::to_string(n - 3));
  out.expect(got_k == want_k, "k-direction exception set");

  // n-direction exceptions: exactly n = d+2, k = d+1 (any m > n).
  for (const auto& r : in_n.records()) {
    unsigned n = 0, m = 0, k = 0, d = 0;
    if (std::sscanf(r.params.c_str(), "n=%u m=%u k=%u d=%u", &n, &m, &k, &d) != 4) continue;
    const bool should = (n == d + 2 && k == d + 1);
    if ((r.status == ClaimStatus::exception_expected) != should)
      out.fail("n-direction exception flag at " + r.params);
  }

  // d-direction exceptions: exactly n = k+1 = d+2.
  for (const auto& r : in_d.records()) {
    unsigned n = 0, k = 0, d = 0, c = 0;
    if (std::sscanf(r.params.c_str(), "n=%u k=%u d=%u c=%u", &n, &k, &d, &c) != 4) continue;
    const bool should = (n == k + 1 && n == d + 2);
    if ((r.status == ClaimStatus::exception_expected) != should)
      out.fail("d-direction exception flag at " + r.params);
  }

  const DerangementTable table(12);
  out.expect(table.f(3, 2, 0) == Rat(1, 3) && table.f(3, 1, 0) == Rat(1, 4) &&
                 table.f(3, 2, 0) > table.f(3, 1, 0),
             "reversed inequality f(3,2,0) > f(3,1,0)");
  for (unsigned n = 2; n <= 12; ++n)
    out.expect(table.f(n, n - 1, n - 2) == 0,
               "f(n,n-1,n-2) = 0 at n=" + std::to_string(n));
  if (out.pass)
    out.note(std::to_string(in_k.size() + in_n.size() + in_d.size()) +
             " monotonicity records; exceptions exactly as declared");
  return out;
}

// ---------------------------------------------------------------------
// 8. Gap to 1/(n+1): strictly decreasing on 3..20 and < 1e-6 by n = 10.
Outcome criterion_8() {
  Outcome out;
  for (unsigned n = 3; n < 20; ++n)
    if (!(last_point_gap(n + 1) < last_point_gap(n)))
      out.fail("gap not strictly decreasing at n=" + std::to_string(n));
  out.expect(last_point_gap(10) < Rat(1, 1000000), "gap(10) < 1e-6");
  if (out.pass)
    out.note("gap(10) = " + Prob::to_string(last_point_gap(10)) + ", decreasing on 3..20");
  return out;
}

// ---------------------------------------------------------------------
// 9. Monte Carlo calibration over the n = 5 triangle.
Outcome criterion_9() {
  Outcome out;
  const std::uint64_t kSeed = 424242, kTrials = 100000;
  const DerangementTable table(5);
  unsigned misses = 0;
  for (unsigned d = 0; d < 5; ++d)
    for (unsigned k = d; k < 5; ++k) {
      const mc::Estimate est = mc::estimate_f(5, k, d, kTrials, kSeed);
      if (est.degenerate()) {
        out.fail("degenerate cell (" + std::to_string(k) + "," + std::to_string(d) + ")");
        continue;
      }
      const Rat exact = table.f(5, k, d);
      const double exact_d = numerator(exact).convert_to<double>() /
                             denominator(exact).convert_to<double>();
      const double deviation = est.point_estimate - exact_d;
      if (std::abs(deviation) > 3.0 * est.standard_error) {
        ++misses;
        out.note("cell (k=" + std::to_string(k) + ",d=" + std::to_string(d) +
                 ") off by " + std::to_string(deviation) + " (3se=" +
                 std::to_string(3.0 * est.standard_error) + ")");
      }
    }
  out.expect(misses <= 1, std::to_string(misses) + " of 15 cells outside 3 standard errors");
  const mc::Estimate a = mc::estimate_f(5, 3, 0, kTrials, kSeed);
  const mc::Estimate b = mc::estimate_f(5, 3, 0, kTrials, kSeed);
  out.expect(a.point_estimate == b.point_estimate &&
                 a.trials_conditioned == b.trials_conditioned,
             "fixed seed must reproduce identical output");
  if (out.pass)
    out.note("15 cells at 1e5 trials, " + std::to_string(misses) + " outside 3se (seed " +
             std::to_string(kSeed) + ")");
  return out;
}

// ---------------------------------------------------------------------
// 10. Existence witness for non-monotone p in k with d != 0.
Outcome criterion_10() {
  Outcome out;
  const auto witness = find_p_nonmonotone_witness(8);
  if (!witness) {
    out.fail("no witness found for n <= 8");
    return out;
  }
  const DerangementTable table(8);
  out.expect(witness->d != 0, "witness must have d != 0");
  out.expect(table.p(witness->n, witness->k, witness->d) >
                 table.p(witness->n, witness->k - 1, witness->d),
             "witness inequality re-check");
  out.note("witness: p(" + std::to_string(witness->n) + "," + std::to_string(witness->k) +
           "," + std::to_string(witness->d) + ") > p(" + std::to_string(witness->n) + "," +
           std::to_string(witness->k - 1) + "," + std::to_string(witness->d) + ")");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else {
      selected.push_back(std::atoi(arg.c_str()));
    }
  }
  if (g_cli.empty()) {
    std::cerr << "usage: acceptance --cli <path> [criterion ...]\n";
    return 64;
  }

  const std::vector<Criterion> criteria = {
      {1, "triangle reproduction", 1.0, criterion_1},
      {2, "table reproduction", 1.0, criterion_2},
      {3, "oracle equivalence", 60.0, criterion_3},
      {4, "bijection suite", 60.0, criterion_4},
      {5, "identity suite", 10.0, criterion_5},
      {6, "sandwich bounds", 30.0, criterion_6},
      {7, "monotonicity audits", 60.0, criterion_7},
      {8, "limit behavior", 1.0, criterion_8},
      {9, "monte carlo calibration", 30.0, criterion_9},
      {10, "existence witness", 60.0, criterion_10},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds)
      outcome.fail("runtime " + std::to_string(seconds) + "s exceeds budget " +
                   std::to_string(c.budget_seconds) + "s");
    failures += outcome.pass ? 0 : 1;
    std::printf("criterion %2d [%s]: %s (%.2fs)\n", c.id, c.name,
                outcome.pass ? "PASS" : "FAIL", seconds);
    for (const std::string& note : outcome.notes) std::printf("    %s\n", note.c_str());
  }
  return failures;
}
