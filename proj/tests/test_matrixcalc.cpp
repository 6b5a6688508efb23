#include <catch2/catch_amalgamated.hpp>

#include "nottingham/matrixcalc.hpp"

using namespace nott;

namespace {

MultiPoly<Fp> rmono(const PrimeField& F, std::uint32_t idx, long long c, std::uint32_t e = 1) {
  return MultiPoly<Fp>::monomial(Monomial::var(VarId::R(idx), e), F.from(c));
}

}  // namespace

TEST_CASE("build_A matches the entry formula") {
  PrimeField F5(5);
  DepthMatrix A = build_A(F5, 1, 9, 1, 1);  // n_1 = 8
  CHECK(A.n_h == 8);
  CHECK(A.a[0][0] == rmono(F5, 1, 3));
  CHECK(A.a[0][1] == rmono(F5, 2, 2));
  CHECK(A.a[1][0].is_zero());
  CHECK(A.a[1][1] == rmono(F5, 1, 4));

  // diagonal entries are (n_h + i) r_k
  PrimeField F3(3);
  DepthMatrix B = build_A(F3, 2, 9, 2, 2);
  for (long long i = 0; i <= 2; ++i)
    CHECK(B.a[i][i] == rmono(F3, 2, B.n_h + i));
}

TEST_CASE("build_A_prime differs only in the corner entry") {
  PrimeField F3(3);
  // e(1,7) = 1 = k = k0
  DepthMatrix A = build_A(F3, 1, 7, 1, 2);
  DepthMatrix Ap = build_A_prime(F3, 1, 7, 2);
  CHECK(Ap.a[1][1] == A.a[1][1]);
  CHECK(Ap.a[0][0] == A.a[0][0]);
  mpz_class top = mpz_of((2 - 1) * 1 + 7 + 1);  // (h-1)k + n + 1
  mpz_class bin;
  mpz_bin_ui(bin.get_mpz_t(), top.get_mpz_t(), 2);
  CHECK(Ap.a[0][1] - A.a[0][1] == rmono(F3, 1, bin.get_si(), 2));

  // outside the regime it raises
  CHECK_THROWS_AS(build_A_prime(F3, 1, 5, 1), parameter_domain_error);
}

TEST_CASE("c_value examples") {
  using ZP = MultiPoly<mpz_class>;
  CHECK(c_value(0, 0, 1) == ZP::constant(mpz_class(1)));
  CHECK(c_value(0, 1, 1).is_zero());

  // c_11 = (n - 1 - K) r_{k+1} at concrete n
  ZP c11 = c_value(1, 1, 1, 5);
  ZP expect = (ZP::constant(mpz_class(4)) - ZP::variable(VarId::K(), mpz_class(1))) *
              ZP::variable(VarId::R(2), mpz_class(1));
  CHECK(c11 == expect);

  // c_20 = r_k^2 (n - K) n symbolically
  ZP c20 = c_value(2, 0, 1);
  ZP n = ZP::variable(VarId::N(), mpz_class(1));
  ZP K = ZP::variable(VarId::K(), mpz_class(1));
  ZP rk2 = ZP::variable(VarId::R(1), mpz_class(1), 2);
  CHECK(c20 == rk2 * (n - K) * n);
}

TEST_CASE("pi equals reduced c") {
  PrimeField F3(3), F5(5);
  CHECK(pi_equals_cbar_check(F3, 1, 7, 1, 0));
  CHECK(pi_equals_cbar_check(F3, 1, 7, 0, 0));  // identity entry
  CHECK(pi_equals_cbar_check(F3, 1, 7, 2, 1));
  CHECK(pi_equals_cbar_check(F5, 2, 13, 2, 1));
  CHECK_THROWS_AS(pi_equals_cbar_check(F3, 1, 7, 1, 5), parameter_domain_error);
}

TEST_CASE("propagate_v matches the u-chain window") {
  PrimeField F3(3);
  ParamSet ps(3, 2, 9);
  const long long e = e_of(ps);
  REQUIRE(e == 1);
  auto v = propagate_v(F3, 2, 9);
  auto up = u_chain(F3, 2, 9, theorem_bound(ps) + 1).back();
  for (long long j = 0; j <= e; ++j)
    CHECK(v[static_cast<std::size_t>(j)] == up.coeff((3 - 1) * 2 + 9 + 1 + j));

  // scalar case e = 0: v_p is s_n times the product of the diagonal entries
  ParamSet ps2(3, 1, 5);
  REQUIRE(e_of(ps2) == 0);
  auto v2 = propagate_v(F3, 1, 5);
  MultiPoly<Fp> prod = MultiPoly<Fp>::variable(VarId::S(5), F3.one());
  for (long long h = 1; h <= 2; ++h)
    prod = prod * MultiPoly<Fp>::variable(VarId::R(1), F3.from((h - 2) * 1 + 5));
  CHECK(v2.size() == 1);
  CHECK(v2[0] == prod);

  // outside the regime (e >= k) it raises
  CHECK_THROWS_AS(propagate_v(F3, 1, 6), parameter_domain_error);
}

TEST_CASE("pi structure in the linear regime") {
  PrimeField F3(3);
  PiStructureReport rep = pi_structure_check(F3, 1, 5);  // e = 0
  CHECK(rep.e == 0);
  CHECK(rep.zero_columns_ok);  // vacuous
  CHECK(rep.last_column_nonzero);

  PiStructureReport rep2 = pi_structure_check(F3, 2, 9);  // e = 1 < k
  CHECK(rep2.zero_columns_ok);
  CHECK(rep2.last_column_nonzero);
  CHECK_FALSE(rep2.primed);

  // e = k: primed variant, with the scalar correction reported
  PiStructureReport rep3 = pi_structure_check(F3, 1, 7);
  CHECK(rep3.primed);
  CHECK(rep3.pass());
  CHECK(rep3.case4_m.has_value());
  CHECK(rep3.case4_m_clean);

  CHECK_THROWS_AS(pi_structure_check(F3, 3, 12), parameter_domain_error);  // p | k
  CHECK_THROWS_AS(pi_structure_check(F3, 1, 4), parameter_domain_error);   // n too small
}

TEST_CASE("pi entries shift along n") {
  // pi_{hij}(n) = pi_{h,0,j-i}(n+i)
  for (auto [p, k, n] : {std::tuple<std::uint32_t, long long, long long>{3, 2, 9},
                         {3, 2, 7},
                         {5, 2, 13}}) {
    PrimeField F(p);
    const long long e = e_of(ParamSet(p, k, n));
    for (long long h = 1; h <= static_cast<long long>(p) - 1; ++h) {
      FpPolyMatrix P = pi_product(F, k, n, e, h, false);
      for (long long i = 0; i <= e; ++i) {
        const long long eshift = e_of(ParamSet(p, k, n + i));
        FpPolyMatrix Q = pi_product(F, k, n + i, eshift, h, false);
        for (long long j = i; j <= e; ++j) {
          REQUIRE(j - i <= eshift);
          CHECK(P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                Q[0][static_cast<std::size_t>(j - i)]);
        }
      }
    }
  }
}

TEST_CASE("m_entry conventions and small values") {
  PrimeField F3(3), F2(2);
  CHECK(m_entry(F3, 2, 3, 2).is_zero());  // j - i < k
  CHECK(m_entry(F3, 3, 3, 1).is_zero());  // diagonal of M
  CHECK(m_entry(F3, 1, 5, 1) == rmono(F3, 4, 1));  // m_{1,1+d} = r_d
  CHECK(m_entry(F3, 2, 4, 2) == rmono(F3, 2, 2));  // m_{2,2+k} = 2 r_k
  CHECK(m_entry(F2, 2, 3, 1).is_zero());           // 2 r_1 = 0 mod 2

  // the two formulas agree on a grid
  for (long long i = 1; i <= 6; ++i)
    for (long long j = i + 1; j <= i + 8; ++j)
      for (long long k = 1; k <= 2; ++k)
        CHECK(m_entry(F3, i, j, k) == m_entry_multinomial(F3, i, j, k));
}

TEST_CASE("m_power_row reproduces the p = 2 expansions") {
  PrimeField F2(2);
  auto row = m_power_row(F2, 1, 6);
  MultiPoly<Fp> m14;
  m14.add_term(Monomial::var(VarId::R(1), 3), F2.one());
  m14.add_term(Monomial::var(VarId::R(1)) * Monomial::var(VarId::R(2)), F2.one());
  CHECK(row[4] == m14);
  MultiPoly<Fp> m15;
  m15.add_term(Monomial::var(VarId::R(2), 2), F2.one());
  m15.add_term(Monomial::var(VarId::R(1), 2) * Monomial::var(VarId::R(2)), F2.one());
  CHECK(row[5] == m15);
  // depth statement: zero up to pk + k0
  for (long long j = 2; j <= 3; ++j) CHECK(row[static_cast<std::size_t>(j)].is_zero());
}

TEST_CASE("binomial identity for (I+M)^p") {
  CHECK(im_binomial_check(PrimeField(2), 1, 8));
  CHECK(im_binomial_check(PrimeField(3), 2, 10));
}

TEST_CASE("entry periodicity mod p") {
  PrimeField F2(2), F3(3);
  CHECK(modp_periodicity_check(F2, 1, 1, 1));
  CHECK(modp_periodicity_check(F3, 2, 3, 1));
  CHECK_THROWS_AS(modp_periodicity_check(F2, 1, 2, 1), parameter_domain_error);  // d >= pk
  CHECK_THROWS_AS(modp_periodicity_check(F3, 2, 5, 1), parameter_domain_error);  // i too small
}

TEST_CASE("expand_split") {
  PrimeField F3(3);
  // t < k: the split is A + i r_{n+t} with an empty sum
  ExpandSplit s = expand_split(F3, 2, 0, 1, 4);
  CHECK(s.formula_ok);
  CHECK(s.linear.size() == 1);
  CHECK(s.linear[0] == MultiPoly<Fp>::constant(F3.from(2)));

  // the linear coefficients follow i * m_{i-1, i-1+t-w} on a grid
  for (long long i = 2; i <= 4; ++i)
    for (long long t = 0; t <= 3; ++t)
      CHECK(expand_split(F3, i, t, 1, 5).formula_ok);

  CHECK_THROWS_AS(expand_split(F3, 1, 0, 1, 4), parameter_domain_error);
  CHECK_THROWS_AS(expand_split(F3, 2, 4, 1, 4), parameter_domain_error);
}

TEST_CASE("ens decomposition") {
  PrimeField F2(2), F3(3);

  // (p=2, k=1, n=3, s=0): C = r2^2 + r1^2 r2, E^(0) = 0
  EnsDecomposition d = ens_decompose(F2, 1, 3, 0);
  MultiPoly<Fp> expect;
  expect.add_term(Monomial::var(VarId::R(2), 2), F2.one());
  expect.add_term(Monomial::var(VarId::R(1), 2) * Monomial::var(VarId::R(2)), F2.one());
  CHECK(d.C == expect);
  CHECK(d.E[0].is_zero());
  CHECK(d.form_ok);
  CHECK(d.degree_ok);

  // reconstruction: C + sum E^(w) r_{n+w} equals the row entry
  EnsDecomposition d2 = ens_decompose(F3, 2, 5, 2);
  const long long jstar = 1 + 2 + 5 + 2 * 2;
  auto row = m_power_row(F3, 2, jstar);
  MultiPoly<Fp> rec = d2.C;
  for (long long w = 0; w <= 2; ++w)
    rec = rec + d2.E[static_cast<std::size_t>(w)] *
                    MultiPoly<Fp>::variable(VarId::R(static_cast<std::uint32_t>(5 + w)), F3.one());
  CHECK(rec == row[static_cast<std::size_t>(jstar)]);
  CHECK(d2.form_ok);
  CHECK(d2.degree_ok);

  CHECK_THROWS_AS(ens_decompose(F2, 1, 1, 0), parameter_domain_error);  // n <= k + s
  CHECK_THROWS_AS(ens_decompose(F2, 1, 5, 2), parameter_domain_error);  // pk <= k + s

  CHECK(ens_periodicity_check(F2, 1, 3, 0));
  CHECK(ens_periodicity_check(F3, 1, 4, 1));
}
