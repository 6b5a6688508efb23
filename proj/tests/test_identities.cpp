#include <catch2/catch_amalgamated.hpp>

#include "nottingham/identities.hpp"

using namespace nott;

TEST_CASE("P_poly examples") {
  using ZP = MultiPoly<mpz_class>;
  CHECK(P_poly(3, 0) == ZP::constant(mpz_class(1)));
  // P_0(1) = n - K
  ZP n = ZP::variable(VarId::N(), mpz_class(1));
  ZP K = ZP::variable(VarId::K(), mpz_class(1));
  CHECK(P_poly(0, 1) == n - K);
  CHECK(P_poly(0, 2) == (n - K) * n);
  // concrete n
  CHECK(P_poly(0, 1, 5) == ZP::constant(mpz_class(5)) - K);
}

TEST_CASE("q_series examples") {
  auto q = q_series(1, 4);

  RatFunc q1 = -RatFunc::var(VarId::R(2));
  q1.divide_by_rk(1);
  CHECK(q[1] == q1);

  // q_2 = (r2^2 - r1 r3) / r1^2
  RatFunc q2 = RatFunc::var(VarId::R(2)) * RatFunc::var(VarId::R(2)) -
               RatFunc::var(VarId::R(1)) * RatFunc::var(VarId::R(3));
  q2.divide_by_rk(1, 2);
  CHECK(q[2] == q2);

  // defining identity: sum_{s} r_{k+s} q_{t-s} = 0 for t >= 1
  for (long long t = 1; t <= 4; ++t) {
    RatFunc acc = RatFunc::zero();
    for (long long s = 0; s <= t; ++s)
      acc = acc + RatFunc::var(VarId::R(static_cast<std::uint32_t>(1 + s))) * q[static_cast<std::size_t>(t - s)];
    CHECK(acc.is_zero());
  }
}

TEST_CASE("phi base values and conventions") {
  PhiTable T(1);
  CHECK(T.phi(0, 0, 0) == RatFunc::one());

  RatFunc phi101 = RatFunc::var(VarId::R(2));
  phi101.divide_by_rk(1);
  phi101.divide_by_linear(1, -1);
  CHECK(T.phi(1, 0, 1) == phi101);

  CHECK(T.phi(3, 2, 2).is_zero());  // a + b > j
  CHECK(T.phi(2, 2, 1).is_zero());  // phi_{jjb} = 0 for b >= 1
  CHECK(T.phi(-1, 0, 0).is_zero());
}

TEST_CASE("phidiff holds for all computed triples with indices <= 5") {
  PhiTable T(1);
  for (long long j = 0; j <= 5; ++j)
    for (long long a = 0; a + j <= 5; ++a)
      for (long long b = 0; b <= 5; ++b)
        CHECK(phidiff_check(T, j, a, b));
}

TEST_CASE("product law phi_{jab} = phi_{aa0} phi_{j-a,0,b}") {
  PhiTable T(1);
  for (long long j = 0; j <= 5; ++j)
    for (long long a = 0; a <= j; ++a)
      for (long long b = 0; b <= j; ++b)
        CHECK(phi_product_law_check(T, j, a, b));
}

TEST_CASE("csum identity") {
  PhiTable T(1);
  // j = 0: both sides are r_k^i P_0(i)
  for (long long i = 0; i <= 4; ++i) CHECK(csum_check(T, i, 0));
  CHECK(csum_check(T, 3, 1));
  CHECK(csum_check(T, 5, 3));
  // at a different base index and concrete n
  PhiTable T2(2);
  CHECK(csum_check(T2, 3, 2));
  CHECK(csum_check(T, 4, 2, 9));
}

TEST_CASE("generating function closed form") {
  PhiTable T(1);
  CHECK(generating_check(T, 0, 4, 3));
  CHECK(generating_check(T, 1, 4, 3));
  CHECK(generating_check(T, 2, 4, 3));
}

TEST_CASE("denominator profiles") {
  PhiTable T(1);
  // phi_{j00} lies in S_00
  for (long long j = 0; j <= 4; ++j) {
    SlmResult r = slm_check(T, j, 0, 0);
    CHECK(r.conforms);
    CHECK(r.l == 0);
  }
  // phi_{j0b} lies in S_{b, j+1-b}
  for (long long j = 1; j <= 4; ++j)
    for (long long b = 1; b <= j; ++b) {
      SlmResult r = slm_check(T, j, 0, b);
      CHECK(r.conforms);
      CHECK(r.l == b);
      CHECK(r.m == std::max<long long>(0, j + 1 - b));
    }
  // phi_{jj0} lies in S_jj
  for (long long j = 0; j <= 4; ++j) CHECK(slm_check(T, j, j, 0).conforms);

  CHECK_THROWS_AS(slm_check(T, 2, 2, 1), parameter_domain_error);
}

TEST_CASE("residue of phi_{j01} at K = j") {
  PhiTable T(1);
  for (long long j = 1; j <= 4; ++j) CHECK(residue_check(T, j));
  PhiTable T3(3);
  CHECK(residue_check(T3, 2));
}

TEST_CASE("expansions modulo (K-k0)^2") {
  CHECK(kk0_expansion_check(3, 1, 5));
  CHECK(kk0_expansion_check(3, 1, 8));
  CHECK(kk0_expansion_check(5, 2, 9));
  CHECK(kk0_expansion_check(7, 3, 12));
  // preconditions
  CHECK_THROWS_AS(kk0_expansion_check(3, 3, 5), parameter_domain_error);  // p | k0
  CHECK_THROWS_AS(kk0_expansion_check(3, 1, 7), parameter_domain_error);  // n = k0 mod p
}

TEST_CASE("bridge into the matrix side") {
  // e(4,15) = k0 = 1 < k for p = 3, fall-through case
  CHECK(case3_pi_bridge_check(PrimeField(3), 4, 15));
  // and a p = 5 instance: k = 7, k0 = 2, n = 35
  CHECK(case3_pi_bridge_check(PrimeField(5), 7, 35));
}
