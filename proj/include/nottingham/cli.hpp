#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nottingham/report.hpp"
#include "nottingham/suites.hpp"

namespace nott::cli {

// Exit codes: 0 = all checks passed, 1 = verification failure or exhausted
// search, 2 = usage or parameter errors.

inline std::vector<std::uint32_t> parse_primes(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (long long v : suites::resolve_range(suites::parse_range(text), 0)) {
    if (v < 2 || !is_small_prime(static_cast<std::uint32_t>(v)))
      throw parameter_domain_error("--p: " + std::to_string(v) + " is not prime");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

inline void emit(const RunReport& rep, bool json) {
  if (json)
    std::cout << rep.to_json(true).dump(2) << "\n";
  else
    rep.write_text(std::cout);
}

inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"exact Nottingham-group arithmetic and depth-bound verification"};
  app.require_subcommand(1);

  std::string p_text, k_text, n_text;
  std::uint64_t seed = 0;
  long long budget = -1;
  long long m = -1, jmax = -1, smax = -1;
  long long precision_override = -1;
  bool json = false, csv = false;

  auto* verify = app.add_subcommand("verify", "run a named verification suite over a grid");
  std::string suite;
  verify->add_option("suite", suite,
                     "one of: theorem-a, lemma-powers, lemma-basic, up-congruence, "
                     "matrix-vs-direct, c-vs-pi, mp-row, modp, ens, csum, genfun, slm, "
                     "residue, kk0, corollary-pm")
      ->required();
  verify->add_option("--p", p_text, "primes, e.g. 2,3,5");
  verify->add_option("--k", k_text, "k range, e.g. 1..3");
  verify->add_option("--n", n_text, "n range, may reference k, e.g. k..8");
  verify->add_option("--m", m, "power exponent for corollary-pm");
  verify->add_option("--seed", seed, "seed for randomized suites");
  verify->add_option("--budget", budget, "sample count for randomized suites");
  verify->add_option("--jmax", jmax, "index cap for table-style suites");
  verify->add_option("--smax", smax, "s cap for the ens suite");
  verify->add_option("--precision-override", precision_override, "force a larger working precision");
  verify->add_flag("--json", json, "emit the report as JSON");

  auto* search = app.add_subcommand("search", "search for a sharpness witness");
  long long sp = 0, sk = 0, sn = 0;
  search->add_option("--p", sp, "prime")->required();
  search->add_option("--k", sk, "depth of f")->required();
  search->add_option("--n", sn, "depth of g f^-1")->required();
  search->add_option("--seed", seed, "seed for the random phase");
  search->add_option("--budget", budget, "random candidates to try (default 5000)");
  search->add_option("--precision-override", precision_override, "force a larger working precision");
  search->add_flag("--json", json, "emit the report as JSON");

  auto* table = app.add_subcommand("table", "tabulate e(k,n) and the depth bound");
  long long kmax = 4, nmax = 8;
  table->add_option("--p", p_text, "primes, e.g. 2,3,5");
  table->add_option("--kmax", kmax, "largest k");
  table->add_option("--nmax", nmax, "largest n");
  table->add_flag("--json", json, "emit the report as JSON");
  table->add_flag("--csv", csv, "emit rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      suites::VerifyOptions o;
      o.suite = suite;
      if (!p_text.empty()) o.ps = parse_primes(p_text);
      if (!k_text.empty()) o.ks = suites::parse_range(k_text);
      if (!n_text.empty()) o.ns = suites::parse_range(n_text);
      o.seed = seed;
      o.budget = budget;
      o.m = m;
      o.jmax = jmax;
      o.smax = smax;
      if (precision_override > 0) o.precision_override = precision_override;
      RunReport rep = suites::run_verify(o);
      emit(rep, json);
      return rep.exit_code();
    }
    if (search->parsed()) {
      if (sp < 2 || sp > 1000000)
        throw parameter_domain_error("search: --p out of range");
      RunReport rep = suites::run_search(
          static_cast<std::uint32_t>(sp), sk, sn, budget >= 0 ? budget : 5000, seed,
          precision_override > 0 ? std::optional<long long>(precision_override) : std::nullopt);
      emit(rep, json);
      return rep.exit_code();
    }
    if (table->parsed()) {
      std::vector<std::uint32_t> ps = p_text.empty() ? std::vector<std::uint32_t>{2}
                                                     : parse_primes(p_text);
      RunReport rep = suites::run_table(ps, kmax, nmax);
      if (csv)
        std::cout << suites::table_csv(rep);
      else
        emit(rep, json);
      return rep.exit_code();
    }
  } catch (const parameter_domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace nott::cli
