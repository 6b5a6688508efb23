#pragma once

#include <random>

#include "nottingham/generic.hpp"
#include "nottingham/multipoly.hpp"
#include "nottingham/prime_field.hpp"
#include "nottingham/series.hpp"

namespace testutil {

using namespace nott;

// Small random polynomial in r1..r4, s1..s2 over F_p.
inline MultiPoly<Fp> random_fp_poly(const PrimeField& F, std::mt19937_64& rng, int terms = 4) {
  MultiPoly<Fp> q;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int nv = static_cast<int>(rng() % 3);
    for (int v = 0; v < nv; ++v) {
      bool rvar = rng() % 3 != 0;
      std::uint32_t idx = 1 + static_cast<std::uint32_t>(rng() % 4);
      m = m * Monomial::var(rvar ? VarId::R(idx) : VarId::S(1 + idx % 2), 1 + rng() % 2);
    }
    q.add_term(m, F.from(static_cast<long long>(rng() % F.modulus())));
  }
  return q;
}

template <class C>
inline MultiPoly<C> random_int_poly(std::mt19937_64& rng, int terms = 4) {
  MultiPoly<C> q;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int nv = static_cast<int>(rng() % 3);
    for (int v = 0; v < nv; ++v)
      m = m * Monomial::var(VarId::R(1 + static_cast<std::uint32_t>(rng() % 4)), 1 + rng() % 2);
    long long c = static_cast<long long>(rng() % 19) - 9;
    q.add_term(m, C(static_cast<long>(c)));
  }
  return q;
}

inline FpSeries random_series(const PrimeField& F, long long N, std::mt19937_64& rng) {
  std::vector<Fp> c(static_cast<std::size_t>(N - 1), F.zero());
  for (auto& x : c) x = F.from(static_cast<long long>(rng() % F.modulus()));
  return FpSeries(F, N, std::move(c));
}

}  // namespace testutil
