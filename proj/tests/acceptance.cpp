// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nottingham/nottingham.hpp"

using namespace nott;
using nott::suites::VerifyOptions;

namespace {

struct Criterion {
  int num;
  std::string name;
  std::function<bool(std::string&)> run;
};

bool run_suite_pass(const std::string& suite, std::string& detail,
                    std::function<void(VerifyOptions&)> tweak = {}) {
  VerifyOptions o;
  o.suite = suite;
  if (tweak) tweak(o);
  RunReport rep = nott::suites::run_verify(o);
  std::size_t fails = 0;
  for (const auto& it : rep.items)
    if (!it.ok()) {
      ++fails;
      if (detail.empty()) detail = it.id + ": " + it.detail;
    }
  detail = std::to_string(rep.items.size() - fails) + "/" + std::to_string(rep.items.size()) +
           " items" + (detail.empty() ? "" : "; first failure: " + detail);
  return fails == 0;
}

std::vector<suites::GridPoint> witness_grid() {
  std::vector<suites::GridPoint> grid;
  auto add = [&](std::uint32_t p, long long kmax) {
    for (long long k = 1; k <= kmax; ++k)
      for (long long n = k; n <= 12; ++n) grid.push_back({p, k, n});
  };
  add(2, 4);
  add(3, 3);
  add(5, 2);
  return grid;
}

}  // namespace

int main() {
  std::vector<Criterion> cs;

  cs.push_back({1, "lemma-powers: D(f^p) = pk + k0 with the p = 2 expansions",
                [](std::string& d) { return run_suite_pass("lemma-powers", d); }});

  cs.push_back({2, "theorem-a: symbolic coefficient independence on the full grid",
                [](std::string& d) { return run_suite_pass("theorem-a", d); }});

  cs.push_back({3, "theorem-b: witness search achieves the bound exactly", [](std::string& d) {
                  long long found = 0, total = 0;
                  for (const auto& g : witness_grid()) {
                    ++total;
                    PrimeField F(g.p);
                    ParamSet ps(g.p, g.k, g.n);
                    Witness w = witness_search(F, g.k, g.n, 5000, 0);
                    bool ok = w.found && w.achieved == theorem_bound(ps);
                    if (ok && g.n <= g.k + ps.k0)
                      ok = w.random_tries == 0 && w.phase != "random";
                    if (!ok) {
                      if (d.empty())
                        d = "failed at p=" + std::to_string(g.p) + " k=" + std::to_string(g.k) +
                            " n=" + std::to_string(g.n) +
                            (w.found ? " phase=" + w.phase : " (not found)");
                      continue;
                    }
                    ++found;
                  }
                  d = std::to_string(found) + "/" + std::to_string(total) + " witnesses" +
                      (d.empty() ? "" : "; " + d);
                  return found == total;
                }});

  cs.push_back({4, "lemma-basic: 500 seeded pairs per prime, depth law exact",
                [](std::string& d) { return run_suite_pass("lemma-basic", d); }});

  cs.push_back({5, "three-route agreement for the coefficients of f^p",
                [](std::string& d) { return run_suite_pass("mp-row", d); }});

  cs.push_back({6, "matrix vs direct: v_p window and Pi column structure",
                [](std::string& d) { return run_suite_pass("matrix-vs-direct", d); }});

  cs.push_back({7, "c/pi bridge and the csum identity at symbolic n", [](std::string& d) {
                  std::string d1, d2;
                  bool a = run_suite_pass("c-vs-pi", d1);
                  bool b = run_suite_pass("csum", d2);
                  d = d1 + " | " + d2;
                  return a && b;
                }});

  cs.push_back({8, "generating-function suite: genfun, slm, residue, kk0", [](std::string& d) {
                  bool ok = true;
                  for (const char* s : {"genfun", "slm", "residue", "kk0"}) {
                    std::string di;
                    bool r = run_suite_pass(s, di);
                    ok = ok && r;
                    d += std::string(s) + " " + (r ? "ok" : "FAIL (" + di + ")") + "; ";
                  }
                  return ok;
                }});

  cs.push_back({9, "ens: C/E decomposition, periodicity, and entry periodicity mod p",
                [](std::string& d) {
                  std::string d1, d2;
                  bool a = run_suite_pass("ens", d1);
                  bool b = run_suite_pass("modp", d2);
                  d = d1 + " | " + d2;
                  return a && b;
                }});

  cs.push_back({10, "corollary-pm: specialized p^2 bound and the worked instance",
                [](std::string& d) { return run_suite_pass("corollary-pm", d); }});

  cs.push_back({11, "determinism: identical seeds give identical reports", [](std::string& d) {
                  VerifyOptions o;
                  o.suite = "lemma-basic";
                  o.budget = 60;
                  o.seed = 99;
                  auto a = nott::suites::run_verify(o).to_json(false);
                  auto b = nott::suites::run_verify(o).to_json(false);
                  auto s1 = nott::suites::run_search(3, 1, 4, 50, 7).to_json(false);
                  auto s2 = nott::suites::run_search(3, 1, 4, 50, 7).to_json(false);
                  d = "verify and search reports compared without timing";
                  return a == b && s1 == s2;
                }});

  int failures = 0;
  for (auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %2d  %-62s  [%6.1fs]  %s\n", ok ? "PASS" : "FAIL", c.num, c.name.c_str(),
                secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
