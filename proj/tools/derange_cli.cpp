// derange: exact fixed-point statistics of random permutations.
//
// Subcommands: count, cond, triangle, table, verify, sample. Exit codes:
// 0 success / all checks pass, 1 a verification VIOLATION was found,
// 2 usage or parameter error.

#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "derange/analysis.hpp"
#include "derange/conditional.hpp"
#include "derange/counts.hpp"
#include "derange/exact.hpp"
#include "derange/oracle.hpp"
#include "derange/report.hpp"
#include "derange/sampler.hpp"
#include "derange/version.hpp"

namespace {

using nlohmann::json;

json json_doc(const std::string& command, json params, json results) {
  return json{{"command", command},
              {"params", std::move(params)},
              {"results", std::move(results)},
              {"version", derange::kVersion}};
}

json rational_json(const derange::Rat& r, const std::string& decimal) {
  return json{{"num", numerator(r).str()}, {"den", denominator(r).str()}, {"decimal", decimal}};
}

struct CommonOpts {
  std::string format = "ascii";
  unsigned places = 4;
};

void add_format(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"ascii", "csv", "json"}))
      ->capture_default_str();
}

void add_places(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--places", opts.places, "Decimal places")
      ->check(CLI::Range(1u, 12u))
      ->capture_default_str();
}

int run_count(long long n, long long k, long long d, const CommonOpts& opts) {
  const derange::Params params = derange::make_count_params(n, k, d);
  const derange::Count c = derange::count_exact_fixed(params);
  if (opts.format == "ascii") {
    std::cout << c.str() << "\n";
  } else if (opts.format == "csv") {
    std::cout << "n,k,d,count\n"
              << params.n << "," << params.k << "," << params.d << "," << c.str() << "\n";
  } else {
    json results = json::array(
        {{{"n", params.n}, {"k", params.k}, {"d", params.d}, {"count", c.str()}}});
    std::cout << json_doc("count", {{"n", params.n}, {"k", params.k}, {"d", params.d}},
                          std::move(results))
                     .dump(2)
              << "\n";
  }
  return 0;
}

int run_cond(long long n, long long k, long long d, const CommonOpts& opts) {
  const derange::Params params = derange::make_cond_params(n, k, d);
  const derange::Prob f = derange::cond_fix_prob(params);
  const std::string decimal = derange::render_fixed(f.rat(), opts.places, false);
  if (opts.format == "ascii") {
    std::cout << f.str() << " ≈ " << decimal << "\n";
  } else if (opts.format == "csv") {
    std::cout << "n,k,d,num,den,decimal\n"
              << params.n << "," << params.k << "," << params.d << "," << f.num().str() << ","
              << f.den().str() << "," << decimal << "\n";
  } else {
    json row = rational_json(f.rat(), decimal);
    row["n"] = params.n;
    row["k"] = params.k;
    row["d"] = params.d;
    std::cout << json_doc("cond",
                          {{"n", params.n}, {"k", params.k}, {"d", params.d},
                           {"places", opts.places}},
                          json::array({row}))
                     .dump(2)
              << "\n";
  }
  return 0;
}

int run_triangle(long long n_arg, const CommonOpts& opts) {
  if (n_arg < 1 || n_arg > 30) throw std::invalid_argument("n must be in 1..30");
  const unsigned n = static_cast<unsigned>(n_arg);
  const derange::analysis::Triangle tri = derange::analysis::triangle(n);
  if (opts.format == "ascii") {
    // Rows from d = n-1 down to 0, entry (k,d) in column slot 2k-d, as in
    // the triangle figure.
    const unsigned cell = opts.places + 5;
    for (unsigned row = 0; row < n; ++row) {
      const unsigned d = n - 1 - row;
      std::string line = "d=" + std::to_string(d) + ":";
      line.append(6 > line.size() ? 6 - line.size() : 1, ' ');
      std::string body((2 * (n - 1) + 1) * cell, ' ');
      for (unsigned k = d; k < n; ++k) {
        const std::string value =
            derange::render_fixed(tri.at(k, d).rat(), opts.places, true);
        const unsigned slot = 2 * k - d;
        body.replace(slot * cell, value.size(), value);
      }
      while (!body.empty() && body.back() == ' ') body.pop_back();
      std::cout << line << body << "\n";
    }
    return 0;
  }
  if (opts.format == "csv") {
    std::cout << "n,k,d,num,den,decimal\n";
    for (unsigned row = 0; row < n; ++row) {
      const unsigned d = n - 1 - row;
      for (unsigned k = d; k < n; ++k) {
        const derange::Prob& f = tri.at(k, d);
        std::cout << n << "," << k << "," << d << "," << f.num().str() << "," << f.den().str()
                  << "," << derange::render_fixed(f.rat(), opts.places, true) << "\n";
      }
    }
    return 0;
  }
  json results = json::array();
  for (unsigned row = 0; row < n; ++row) {
    const unsigned d = n - 1 - row;
    for (unsigned k = d; k < n; ++k) {
      const derange::Prob& f = tri.at(k, d);
      json cell = rational_json(f.rat(), derange::render_fixed(f.rat(), opts.places, true));
      cell["n"] = n;
      cell["k"] = k;
      cell["d"] = d;
      results.push_back(std::move(cell));
    }
  }
  std::cout << json_doc("triangle", {{"n", n}, {"places", opts.places}}, std::move(results))
                   .dump(2)
            << "\n";
  return 0;
}

int run_table(const std::string& which, long long n_max, const CommonOpts& opts) {
  if (which != "p" && which != "f") throw std::invalid_argument("which must be p or f");
  if (n_max < 1 || n_max > 30) throw std::invalid_argument("n-max must be in 1..30");
  const unsigned n = static_cast<unsigned>(n_max);
  const unsigned k_max = (which == "p") ? n : n - 1;
  if (opts.format == "ascii") {
    std::cout << derange::analysis::table_render(which[0], n, k_max, opts.places);
    return 0;
  }
  const auto cells = derange::analysis::table_cells(which[0], n, k_max, opts.places);
  derange::DerangementTable table(n);
  if (opts.format == "csv") {
    std::cout << "n,k,num,den,decimal\n";
    for (unsigned r = 1; r <= cells.size(); ++r)
      for (unsigned k = 0; k < cells[r - 1].size(); ++k) {
        const derange::Rat v = (which == "p") ? table.p0(r, k) : table.f0(r, k);
        std::cout << r << "," << k << "," << numerator(v).str() << "," << denominator(v).str()
                  << "," << cells[r - 1][k] << "\n";
      }
    return 0;
  }
  json results = json::array();
  for (unsigned r = 1; r <= cells.size(); ++r)
    for (unsigned k = 0; k < cells[r - 1].size(); ++k) {
      const derange::Rat v = (which == "p") ? table.p0(r, k) : table.f0(r, k);
      json cell = rational_json(v, cells[r - 1][k]);
      cell["n"] = r;
      cell["k"] = k;
      results.push_back(std::move(cell));
    }
  std::cout << json_doc("table", {{"which", which}, {"n_max", n}, {"places", opts.places}},
                        std::move(results))
                   .dump(2)
            << "\n";
  return 0;
}

int run_verify(long long n_max_arg, std::vector<std::string> checks, bool allow_large,
               const CommonOpts& opts) {
  if (n_max_arg < 1) throw std::invalid_argument("n-max must be >= 1");
  const unsigned n_max = static_cast<unsigned>(n_max_arg);
  const std::set<std::string> known = {"recurrences", "monotone-k", "monotone-n",
                                       "monotone-d", "lemx",       "bounds",
                                       "oracle",      "bijection"};
  if (checks.empty()) checks.assign(known.begin(), known.end());
  for (const std::string& c : checks)
    if (!known.count(c)) throw std::invalid_argument("unknown check: " + c);

  derange::VerificationReport report;
  for (const std::string& check : checks) {
    if (check == "recurrences" && n_max >= 2) {
      report.merge(derange::recurrence_suite(n_max));
      report.merge(derange::analysis::identity_suite(n_max));
    } else if (check == "monotone-k" && n_max >= 2) {
      report.merge(derange::analysis::monotone_in_k(n_max));
    } else if (check == "monotone-n" && n_max >= 3) {
      report.merge(derange::analysis::monotone_in_n(n_max));
    } else if (check == "monotone-d" && n_max >= 3) {
      report.merge(derange::analysis::monotone_in_d(n_max));
    } else if (check == "lemx" && n_max >= 4) {
      report.merge(derange::analysis::decrease_equivalence(n_max));
    } else if (check == "bounds" && n_max >= 2) {
      report.merge(derange::analysis::sandwich_suite(n_max));
    } else if (check == "oracle" && n_max >= 2) {
      report.merge(derange::oracle::oracle_suite(std::min(n_max, allow_large ? 10u : 8u)));
    } else if (check == "bijection" && n_max >= 2) {
      report.merge(derange::oracle::bijection_suite(std::min(n_max, 6u)));
    }
  }

  const std::size_t violations = report.violations();
  if (opts.format == "json") {
    json doc = json_doc("verify",
                        {{"n_max", n_max}, {"checks", checks}, {"allow_large", allow_large}},
                        report.to_json());
    doc["summary"] = {{"records", report.size()},
                      {"exceptions", report.exceptions()},
                      {"violations", violations}};
    std::cout << doc.dump(2) << "\n";
  } else if (opts.format == "csv") {
    std::cout << "claim,params,status,witness\n";
    for (const auto& r : report.records())
      std::cout << r.claim << ",\"" << r.params << "\"," << derange::to_string(r.status)
                << ",\"" << r.witness << "\"\n";
  } else {
    report.write_lines(std::cout);
    std::cout << "records=" << report.size() << " exceptions=" << report.exceptions()
              << " violations=" << violations << "\n";
  }
  return violations == 0 ? 0 : 1;
}

int run_sample(long long n, long long k, long long d, std::uint64_t trials, std::uint64_t seed,
               unsigned workers, const CommonOpts& opts) {
  const derange::Params params = derange::make_cond_params(n, k, d);
  const derange::mc::Estimate est =
      derange::mc::estimate_f(params.n, params.k, params.d, trials, seed, workers);
  const derange::Prob exact = derange::cond_fix_prob(params);
  const double exact_val =
      static_cast<double>(exact.num().convert_to<double>() / exact.den().convert_to<double>());
  const double z = est.standard_error > 0
                       ? (est.point_estimate - exact_val) / est.standard_error
                       : 0.0;
  std::ostringstream est_s, se_s, z_s;
  est_s.precision(6);
  est_s << std::fixed << est.point_estimate;
  se_s.precision(6);
  se_s << std::fixed << est.standard_error;
  z_s.precision(2);
  z_s << std::fixed << z;
  if (est.degenerate())
    std::cerr << "warning: no sample satisfied the conditioning event\n";
  if (opts.format == "ascii") {
    std::cout << "estimate=" << est_s.str() << " stderr=" << se_s.str() << " exact="
              << exact.str() << " (" << derange::render_fixed(exact.rat(), opts.places, false)
              << ") z=" << z_s.str() << " trials=" << est.trials_total
              << " conditioned=" << est.trials_conditioned << " seed=" << est.seed
              << " workers=" << est.workers << " generator=" << est.generator << "\n";
  } else if (opts.format == "csv") {
    std::cout << "n,k,d,trials,conditioned,estimate,stderr,exact_num,exact_den,z,seed,workers,"
                 "generator\n"
              << params.n << "," << params.k << "," << params.d << "," << est.trials_total << ","
              << est.trials_conditioned << "," << est_s.str() << "," << se_s.str() << ","
              << exact.num().str() << "," << exact.den().str() << "," << z_s.str() << ","
              << est.seed << "," << est.workers << "," << est.generator << "\n";
  } else {
    json row = {{"n", params.n},
                {"k", params.k},
                {"d", params.d},
                {"trials", est.trials_total},
                {"conditioned", est.trials_conditioned},
                {"estimate", est.point_estimate},
                {"stderr", est.standard_error},
                {"exact", rational_json(exact.rat(),
                                        derange::render_fixed(exact.rat(), opts.places, false))},
                {"z", z},
                {"seed", est.seed},
                {"workers", est.workers},
                {"generator", est.generator}};
    std::cout << json_doc("sample",
                          {{"n", params.n}, {"k", params.k}, {"d", params.d},
                           {"trials", trials}, {"seed", seed}},
                          json::array({std::move(row)}))
                     .dump(2)
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fixed-point statistics of random permutations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", derange::kVersion);

  long long n = 0, k = 0, d = 0, n_max = 12;
  std::string which;
  std::uint64_t trials = 100000, seed = 1;
  unsigned workers = 1;
  bool allow_large = false;
  std::vector<std::string> checks;

  CommonOpts count_opts, cond_opts, tri_opts, table_opts, verify_opts, sample_opts;
  tri_opts.places = 3;

  CLI::App* cmd_count = app.add_subcommand("count", "c(n,k,d): permutations of [n] with exactly d fixed points among the first k");
  cmd_count->add_option("n", n)->required();
  cmd_count->add_option("k", k)->required();
  cmd_count->add_option("d", d)->required();
  add_format(cmd_count, count_opts);

  CLI::App* cmd_cond = app.add_subcommand("cond", "f(n,k,d): probability that point k+1 is fixed given d fixed among the first k");
  cmd_cond->add_option("n", n)->required();
  cmd_cond->add_option("k", k)->required();
  cmd_cond->add_option("d", d)->required();
  add_places(cmd_cond, cond_opts);
  add_format(cmd_cond, cond_opts);

  CLI::App* cmd_tri = app.add_subcommand("triangle", "All f(n,k,d) for one n, laid out as a triangle");
  cmd_tri->add_option("n", n)->required();
  add_places(cmd_tri, tri_opts);
  add_format(cmd_tri, tri_opts);

  CLI::App* cmd_table = app.add_subcommand("table", "Reference table of p(n,k,0) or f(n,k,0)");
  cmd_table->add_option("which", which, "p or f")->required();
  cmd_table->add_option("n_max", n_max)->required();
  add_places(cmd_table, table_opts);
  add_format(cmd_table, table_opts);

  CLI::App* cmd_verify = app.add_subcommand("verify", "Audit the counting identities, monotonicity claims, bounds, bijections, and the enumeration oracle");
  cmd_verify->add_option("--n-max", n_max, "Sweep ceiling")->capture_default_str();
  cmd_verify->add_option("--checks", checks, "Subset of: recurrences monotone-k monotone-n monotone-d lemx bounds oracle bijection")
      ->delimiter(',');
  cmd_verify->add_flag("--allow-large", allow_large, "Raise the enumeration guard from 8 to 10");
  add_format(cmd_verify, verify_opts);

  CLI::App* cmd_sample = app.add_subcommand("sample", "Monte Carlo estimate of f(n,k,d) vs the exact value");
  cmd_sample->add_option("n", n)->required();
  cmd_sample->add_option("k", k)->required();
  cmd_sample->add_option("d", d)->required();
  cmd_sample->add_option("--trials", trials, "Unconditioned draws")->capture_default_str();
  cmd_sample->add_option("--seed", seed, "Generator seed")->capture_default_str();
  cmd_sample->add_option("--workers", workers, "Substream count; 1 = single stream")
      ->capture_default_str();
  add_places(cmd_sample, sample_opts);
  add_format(cmd_sample, sample_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/diagnostic
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_count->parsed()) return run_count(n, k, d, count_opts);
    if (cmd_cond->parsed()) return run_cond(n, k, d, cond_opts);
    if (cmd_tri->parsed()) return run_triangle(n, tri_opts);
    if (cmd_table->parsed()) return run_table(which, n_max, table_opts);
    if (cmd_verify->parsed()) return run_verify(n_max, checks, allow_large, verify_opts);
    if (cmd_sample->parsed()) return run_sample(n, k, d, trials, seed, workers, sample_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
