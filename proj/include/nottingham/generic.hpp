#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nottingham/bounds.hpp"
#include "nottingham/multipoly.hpp"
#include "nottingham/series.hpp"

namespace nott {

// Generic depth-k element: coefficient of x^{j+1} is the variable r_j for
// k <= j <= N-1, zero below x^{k+1}.
inline PolySeries generic_f(const PrimeField& F, long long k, long long N) {
  if (k < 1 || N < k + 1)
    throw parameter_domain_error("generic_f: requires k >= 1 and N >= k+1");
  FpPolyRing R{F};
  std::vector<MultiPoly<Fp>> c(static_cast<std::size_t>(N - 1));
  for (long long j = k; j <= N - 1; ++j)
    c[static_cast<std::size_t>(j - 1)] =
        MultiPoly<Fp>::variable(VarId::R(static_cast<std::uint32_t>(j)), F.one());
  return PolySeries(R, N, std::move(c));
}

// Generic depth-n element with coefficients s_n, s_{n+1}, ...
inline PolySeries generic_u1(const PrimeField& F, long long n, long long N) {
  if (n < 1 || N < n + 1)
    throw parameter_domain_error("generic_u1: requires n >= 1 and N >= n+1");
  FpPolyRing R{F};
  std::vector<MultiPoly<Fp>> c(static_cast<std::size_t>(N - 1));
  for (long long j = n; j <= N - 1; ++j)
    c[static_cast<std::size_t>(j - 1)] =
        MultiPoly<Fp>::variable(VarId::S(static_cast<std::uint32_t>(j)), F.one());
  return PolySeries(R, N, std::move(c));
}

// Optional cache of f^p per (p, k): the power at a larger precision restricts
// to any smaller one, so grid drivers can compute once and slice.
struct FpPowerCache {
  std::map<std::pair<std::uint32_t, long long>, PolySeries> pow;

  const PolySeries& get(const PrimeField& F, long long k, long long N) {
    auto key = std::make_pair(F.modulus(), k);
    auto it = pow.find(key);
    if (it == pow.end() || it->second.precision() < N) {
      PolySeries fp = group_pow(generic_f(F, k, N), static_cast<long long>(F.modulus()));
      it = pow.insert_or_assign(key, std::move(fp)).first;
    }
    return it->second;
  }
};

struct IndependenceReport {
  std::uint32_t p = 0;
  long long k = 0, n = 0, bound = 0;
  // offending variables r_j, j >= n, per coefficient index i = 2..bound
  std::vector<std::pair<long long, std::vector<VarId>>> offenders;
  bool pass = false;
};

// Checks that every coefficient of x^i in f^p, i <= n + (p-1)k + e(k,n), is
// free of the variables r_j with j >= n.
inline IndependenceReport verify_independence(const PrimeField& F, long long k, long long n,
                                              FpPowerCache* cache = nullptr) {
  ParamSet ps(F.modulus(), k, n);
  const long long B = theorem_bound(ps);
  IndependenceReport rep;
  rep.p = F.modulus();
  rep.k = k;
  rep.n = n;
  rep.bound = B;

  FpPowerCache local;
  const PolySeries& fp = (cache ? *cache : local).get(F, k, B);
  for (long long i = 2; i <= B; ++i) {
    std::vector<VarId> bad;
    for (VarId v : fp.coeff(i).variables())
      if (v.kind == VarKind::R && v.index >= static_cast<std::uint64_t>(n)) bad.push_back(v);
    if (!bad.empty()) rep.offenders.emplace_back(i, std::move(bad));
  }
  rep.pass = rep.offenders.empty();
  return rep;
}

// u_1 = generic depth-n element, u_{i+1} = [u_i, f]; returns u_1..u_p.
inline std::vector<PolySeries> u_chain(const PrimeField& F, long long k, long long n, long long N) {
  const long long p = F.modulus();
  std::vector<PolySeries> us;
  us.reserve(static_cast<std::size_t>(p));
  us.push_back(generic_u1(F, n, N));
  PolySeries f = generic_f(F, k, N);
  for (long long i = 2; i <= p; ++i) us.push_back(commutator(us.back(), f));
  return us;
}

// Checks g^p f^{-p} = u_p over the polynomial ring, coefficientwise up to
// x^M with M = min(n + (p-1)k + p, n + pk).  Collecting g^p = (u_1 f)^p
// leaves, besides f^p u_p, only p-th powers of the u_i (depth >= pn), mutual
// commutators of the u_i (depth >= 2n + k), and chain elements beyond u_p
// (depth >= n + pk); under n >= (p-1)k + p the first two exceed the quotient
// depth, so the congruence holds through x^M but not in general beyond.
inline bool verify_up_congruence(const PrimeField& F, long long k, long long n) {
  const long long p = F.modulus();
  ParamSet ps(F.modulus(), k, n);
  if (n < (p - 1) * k + p)
    throw parameter_domain_error("verify_up_congruence: requires n >= (p-1)k + p, got " + ps.str());
  const long long M = std::min(n + (p - 1) * k + p, n + p * k);
  PolySeries f = generic_f(F, k, M);
  PolySeries g = compose(generic_u1(F, n, M), f);
  PolySeries lhs = compose(group_pow(g, p), group_pow(f, -p));
  PolySeries up = u_chain(F, k, n, M).back();
  return lhs == up;
}

// Assignment of F_p values to variables.
struct Specialization {
  std::map<VarId, Fp> assign;
  std::uint64_t seed = 0;
};

// Coefficientwise substitution; a group homomorphism into N(F_p).
inline FpSeries specialize_series(const PolySeries& s, const Specialization& sigma) {
  const PrimeField& F = s.ring().field;
  std::vector<Fp> c(static_cast<std::size_t>(s.precision() - 1), F.zero());
  for (long long i = 2; i <= s.precision(); ++i) {
    MultiPoly<Fp> q = substitute(s.coeff(i), sigma.assign);
    if (!q.is_constant()) {
      std::string missing = q.variables().front().name();
      throw incomplete_specialization_error("specialize_series: variable " + missing +
                                            " has no assigned value");
    }
    c[static_cast<std::size_t>(i - 2)] = q.constant_value(F.zero());
  }
  return FpSeries(F, s.precision(), std::move(c));
}

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline FpSeries monomial_series(const PrimeField& F, long long d, long long N) {
  std::vector<Fp> c(static_cast<std::size_t>(N - 1), F.zero());
  c[static_cast<std::size_t>(d - 1)] = F.one();
  return FpSeries(F, N, std::move(c));
}

inline FpSeries random_series_with_depth(const PrimeField& F, long long d, long long N,
                                         std::mt19937_64& rng) {
  const std::uint32_t p = F.modulus();
  std::vector<Fp> c(static_cast<std::size_t>(N - 1), F.zero());
  c[static_cast<std::size_t>(d - 1)] = F.from(1 + static_cast<long long>(rng() % (p - 1)));
  for (long long i = d + 2; i <= N; ++i)
    c[static_cast<std::size_t>(i - 2)] = F.from(static_cast<long long>(rng() % p));
  return FpSeries(F, N, std::move(c));
}

}  // namespace detail

struct Witness {
  bool found = false;
  std::string phase;  // "case1-monomial", "case34-recipe", "shift-pair", "random"
  long long random_tries = 0;
  std::optional<FpSeries> f, g;
  long long achieved = -1;
  long long bound = 0;
  long long precision = 0;
};

// Searches for f, g over F_p with D(f) = k, D(g f^{-1}) = n and
// D(g^p f^{-p}) exactly equal to theorem_bound.  Structured candidates are
// tried in a fixed order before seeded random specializations, so the result
// is deterministic given the seed.
inline Witness witness_search(const PrimeField& F, long long k, long long n, long long budget,
                              std::uint64_t seed, bool structured = true,
                              std::optional<long long> precision_override = {}) {
  ParamSet ps(F.modulus(), k, n);
  const long long p = F.modulus();
  const long long bound = theorem_bound(ps);
  const long long N = std::max(precision_override.value_or(0), bound + 1 + p);

  Witness w;
  w.bound = bound;
  w.precision = N;

  auto try_pair = [&](const FpSeries& f, const FpSeries& g, const std::string& phase) -> bool {
    if (depth(f) != DepthResult::exact(k)) return false;
    if (depth(compose(g, inverse(f))) != DepthResult::exact(n)) return false;
    DepthResult d = depth(compose(group_pow(g, p), group_pow(f, -p)));
    if (!(d.is_exact() && d.value == bound)) return false;
    w.found = true;
    w.phase = phase;
    w.f = f;
    w.g = g;
    w.achieved = d.value;
    return true;
  };

  if (structured) {
    FpSeries f1 = detail::monomial_series(F, k, N);
    FpSeries u = detail::monomial_series(F, n, N);
    if (try_pair(f1, compose(u, f1), "case1-monomial")) return w;

    if (ps.k0 > 0) {
      std::vector<Fp> c(static_cast<std::size_t>(N - 1), F.zero());
      c[static_cast<std::size_t>(k - 1)] = F.one();
      c[static_cast<std::size_t>(k + ps.k0 - 1)] = F.one();
      FpSeries f2(F, N, std::move(c));
      if (try_pair(f2, compose(u, f2), "case34-recipe")) return w;
    }

    for (long long nprime : {k + ps.k0, n + 1}) {
      if (nprime <= n || nprime + 1 > N) continue;
      FpSeries fs = compose(detail::monomial_series(F, nprime, N), f1);
      FpSeries gs = compose(u, f1);
      if (try_pair(fs, gs, "shift-pair")) return w;
    }
  }

  for (long long t = 0; t < budget; ++t) {
    w.random_tries = t + 1;
    std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(t)));
    FpSeries f = detail::random_series_with_depth(F, k, N, rng);
    FpSeries u = detail::random_series_with_depth(F, n, N, rng);
    if (try_pair(f, compose(u, f), "random")) return w;
  }
  return w;
}

}  // namespace nott
