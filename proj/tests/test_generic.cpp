#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nottingham/generic.hpp"

#include "test_util.hpp"

using namespace nott;

TEST_CASE("generic_f and generic_u1 shapes") {
  PrimeField F2(2), F3(3);

  PolySeries f = generic_f(F2, 1, 4);  // x + r1 x^2 + r2 x^3 + r3 x^4
  CHECK(f.coeff(2) == MultiPoly<Fp>::variable(VarId::R(1), F2.one()));
  CHECK(f.coeff(3) == MultiPoly<Fp>::variable(VarId::R(2), F2.one()));
  CHECK(f.coeff(4) == MultiPoly<Fp>::variable(VarId::R(3), F2.one()));

  PolySeries f32 = generic_f(F3, 2, 3);  // x + r2 x^3
  CHECK(f32.coeff(2).is_zero());
  CHECK(f32.coeff(3) == MultiPoly<Fp>::variable(VarId::R(2), F3.one()));
  CHECK(depth(f32) == DepthResult::exact(2));

  PolySeries u = generic_u1(F2, 1, 3);  // x + s1 x^2 + s2 x^3
  CHECK(u.coeff(2) == MultiPoly<Fp>::variable(VarId::S(1), F2.one()));
  CHECK(u.coeff(3) == MultiPoly<Fp>::variable(VarId::S(2), F2.one()));
  PolySeries u35 = generic_u1(F3, 5, 6);
  CHECK(depth(u35) == DepthResult::exact(5));

  CHECK_THROWS_AS(generic_f(F2, 3, 3), parameter_domain_error);
}

TEST_CASE("verify_independence examples") {
  PrimeField F2(2), F3(3);

  auto r1 = verify_independence(F2, 1, 3);
  CHECK(r1.pass);
  CHECK(r1.bound == 5);
  // the coefficient of x^4 in f^2 is r1 r2 + r1^3, free of r3
  PolySeries fp = group_pow(generic_f(F2, 1, 5), 2);
  MultiPoly<Fp> expect;
  expect.add_term(Monomial::var(VarId::R(1)) * Monomial::var(VarId::R(2)), F2.one());
  expect.add_term(Monomial::var(VarId::R(1), 3), F2.one());
  CHECK(fp.coeff(4) == expect);
  CHECK_FALSE(fp.coeff(4).depends_on(VarId::R(3)));

  CHECK(verify_independence(F2, 1, 2).pass);
  for (long long n = 1; n <= 8; ++n) CHECK(verify_independence(F3, 1, n).pass);
}

TEST_CASE("u_chain examples") {
  PrimeField F3(3);

  auto us = u_chain(F3, 1, 5, 8);
  CHECK(us.size() == 3);
  CHECK(us[0] == generic_u1(F3, 5, 8));
  CHECK(depth(us[1]) == DepthResult::exact(6));

  // congruent depths force a strict jump: (3,3,6)
  auto us2 = u_chain(F3, 3, 6, 14);
  DepthResult d = depth(us2[1]);
  CHECK(d.known_at_least(10));

  // depth ladder D(u_i) >= n + (i-1)k
  for (std::size_t i = 0; i < us.size(); ++i)
    CHECK(depth(us[i]).known_at_least(5 + static_cast<long long>(i)));
}

TEST_CASE("verify_up_congruence") {
  PrimeField F2(2), F3(3);
  CHECK(verify_up_congruence(F3, 1, 5));
  CHECK(verify_up_congruence(F2, 1, 3));
  CHECK(verify_up_congruence(F2, 1, 4));
  CHECK_THROWS_AS(verify_up_congruence(F3, 1, 4), parameter_domain_error);
}

TEST_CASE("specialize_series") {
  PrimeField F2(2);
  PolySeries f = generic_f(F2, 1, 4);

  Specialization sigma;
  sigma.assign = {{VarId::R(1), F2.one()}, {VarId::R(2), F2.zero()}, {VarId::R(3), F2.zero()}};
  FpSeries s = specialize_series(f, sigma);
  CHECK(to_string(s) == "x + 1*x^2 + O(x^5)");

  Specialization tau;
  tau.assign = {{VarId::R(1), F2.one()}, {VarId::R(2), F2.one()}, {VarId::R(3), F2.zero()}};
  CHECK(to_string(specialize_series(f, tau)) == "x + 1*x^2 + 1*x^3 + O(x^5)");

  Specialization incomplete;
  incomplete.assign = {{VarId::R(1), F2.one()}};
  CHECK_THROWS_AS(specialize_series(f, incomplete), incomplete_specialization_error);

  // group homomorphism: specialize(a o b) = specialize(a) o specialize(b)
  PrimeField F3(3);
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 10; ++rep) {
    PolySeries a = generic_f(F3, 1, 6);
    PolySeries b = generic_u1(F3, 2, 6);
    Specialization s2;
    for (std::uint32_t j = 1; j <= 5; ++j) {
      s2.assign[VarId::R(j)] = F3.from(static_cast<long long>(rng() % 3));
      s2.assign[VarId::S(j)] = F3.from(static_cast<long long>(rng() % 3));
    }
    CHECK(specialize_series(compose(a, b), s2) ==
          compose(specialize_series(a, s2), specialize_series(b, s2)));
    CHECK(specialize_series(group_pow(a, 2), s2) == group_pow(specialize_series(a, s2), 2));
  }
}

TEST_CASE("specialized depth bound on random specializations") {
  // Whenever the specialized hypothesis depths are exact, the specialized
  // power quotient meets the bound.
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField F(p);
    const long long pl = p;
    std::mt19937_64 rng(500 + p);
    int checked = 0;
    for (int rep = 0; rep < 60 && checked < 25; ++rep) {
      long long k = 1 + static_cast<long long>(rng() % 2);
      long long n = k + static_cast<long long>(rng() % 4);
      ParamSet ps(p, k, n);
      const long long B = theorem_bound(ps);
      FpSeries f = nott::detail::random_series_with_depth(F, k, B + 1, rng);
      FpSeries u = nott::detail::random_series_with_depth(F, n, B + 1, rng);
      FpSeries g = compose(u, f);
      if (depth(f) != DepthResult::exact(k)) continue;
      if (depth(compose(g, inverse(f))) != DepthResult::exact(n)) continue;
      ++checked;
      CHECK(depth(compose(group_pow(g, pl), group_pow(f, -pl))).known_at_least(B));
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("witness_search examples") {
  PrimeField F2(2), F3(3);

  Witness w = witness_search(F2, 1, 1, 100, 0);
  REQUIRE(w.found);
  CHECK(w.achieved == 3);
  CHECK(to_string(*w.f) == "x + 1*x^2 + O(x^7)");
  CHECK(to_string(*w.g) == "x + 1*x^4 + O(x^7)");

  // n = k + k0: the monomial construction works with no random sampling
  Witness w2 = witness_search(F3, 1, 2, 0, 0);
  REQUIRE(w2.found);
  CHECK(w2.phase == "case1-monomial");
  CHECK(w2.achieved == theorem_bound(ParamSet(3, 1, 2)));

  Witness w3 = witness_search(F2, 1, 2, 100, 0);
  REQUIRE(w3.found);
  CHECK(w3.achieved == 3);

  // exhausted budget with the structured phase disabled
  Witness w4 = witness_search(F2, 1, 1, 0, 0, /*structured=*/false);
  CHECK_FALSE(w4.found);

  // determinism: same seed, same result
  Witness a = witness_search(F3, 1, 4, 50, 42, false);
  Witness b = witness_search(F3, 1, 4, 50, 42, false);
  REQUIRE(a.found == b.found);
  if (a.found) {
    CHECK(a.random_tries == b.random_tries);
    CHECK(*a.f == *b.f);
    CHECK(*a.g == *b.g);
  }
}

TEST_CASE("power cache slices consistently") {
  PrimeField F3(3);
  FpPowerCache cache;
  auto r1 = verify_independence(F3, 1, 8, &cache);
  auto r2 = verify_independence(F3, 1, 4, &cache);  // served from the larger power
  auto r3 = verify_independence(F3, 1, 4, nullptr);
  CHECK(r1.pass);
  CHECK(r2.pass == r3.pass);
  CHECK(r2.bound == r3.bound);
}
