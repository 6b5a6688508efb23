#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "nottingham/bounds.hpp"
#include "nottingham/matrixcalc.hpp"
#include "nottingham/multipoly.hpp"
#include "nottingham/ratfunc.hpp"

namespace nott {

// P_a(i) = prod_{h=1}^{i} ((h-2)K + n + a); n concrete or symbolic.
inline MultiPoly<mpz_class> P_poly(long long a, long long i, std::optional<long long> n = {}) {
  if (i < 0) throw parameter_domain_error("P_poly: i must be >= 0");
  using ZP = MultiPoly<mpz_class>;
  ZP acc = ZP::constant(mpz_class(1));
  for (long long h = 1; h <= i; ++h) {
    ZP f = n ? ZP::constant(mpz_of(*n + a))
             : ZP::variable(VarId::N(), mpz_class(1)) + ZP::constant(mpz_of(a));
    if (h != 2) f = f + ZP::variable(VarId::K(), mpz_of(h - 2));
    acc = acc * f;
  }
  return acc;
}

// Reciprocal coefficients: r_k / (r_k + r_{k+1} x + ...) = 1 + q_1 x + ...;
// returns q_0..q_maxdeg.
inline std::vector<RatFunc> q_series(long long k, long long maxdeg) {
  if (k < 1 || maxdeg < 1) throw parameter_domain_error("q_series: requires k >= 1, maxdeg >= 1");
  std::vector<RatFunc> q(static_cast<std::size_t>(maxdeg + 1));
  q[0] = RatFunc::one();
  for (long long t = 1; t <= maxdeg; ++t) {
    RatFunc s = RatFunc::zero();
    for (long long u = 1; u <= t; ++u)
      s = s + RatFunc::var(VarId::R(static_cast<std::uint32_t>(k + u))) * q[static_cast<std::size_t>(t - u)];
    s.divide_by_rk(static_cast<std::uint32_t>(k));
    q[static_cast<std::size_t>(t)] = -s;
  }
  return q;
}

// Table of the coefficients phi_{jab} in S = Q(K)[r_k^{-1}, r_k, ...], filled
// via the defining recurrences with n kept symbolic.  phi_{jab} = 0 outside
// 0 <= a, b <= j and phi_{jjb} = 0 for b >= 1.
class PhiTable {
 public:
  explicit PhiTable(long long k) : k_(k) {
    if (k < 1) throw parameter_domain_error("PhiTable: base index must be >= 1");
  }

  long long base_index() const { return k_; }

  const RatFunc& phi(long long j, long long a, long long b) {
    if (j < 0 || a < 0 || b < 0 || a > j || b > j) return zero_;
    auto key = std::make_tuple(j, a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    RatFunc value = compute(j, a, b);
    return memo_.emplace(key, std::move(value)).first->second;
  }

 private:
  RatFunc r(long long idx) const { return RatFunc::var(VarId::R(static_cast<std::uint32_t>(idx))); }

  RatFunc compute(long long j, long long a, long long b) {
    if (j == 0) return RatFunc::one();  // phi_000
    if (a == j && b >= 1) return RatFunc::zero();
    if (a == j && b == 0) {
      // fixed by the initial conditions of the recurrence
      RatFunc s = RatFunc::zero();
      for (long long aa = 0; aa < j; ++aa)
        for (long long bb = 0; bb <= j; ++bb) {
          const RatFunc& ph = phi(j, aa, bb);
          if (ph.is_zero()) continue;
          s = s + ph * RatFunc::from_zpoly(P_poly(aa, bb));
        }
      return -s;
    }
    if (b == 0) {
      // 0 <= a < j
      RatFunc s = RatFunc::zero();
      for (long long t = 0; t <= j - 1; ++t) {
        const RatFunc& ph = phi(t, a, 0);
        if (ph.is_zero()) continue;
        s = s + ph.scaled(mpq_of(2 * t - j - a)) * r(k_ + j - t);
      }
      s.divide_by_rk(static_cast<std::uint32_t>(k_));
      s.divide_by_linear(0, a - j);
      return s;
    }
    // b >= 1, a < j: both branches divide by (bK + a - j)
    RatFunc s = RatFunc::zero();
    const long long tlo = (a < b) ? b : a;
    if (a < b) {
      const RatFunc& lead = phi(b - 1, a, b - 1);
      if (!lead.is_zero()) s = s + lead * r(k_ + j - b + 1);
    }
    RatFunc negbK = RatFunc::from_poly(MultiPoly<mpq_class>::variable(VarId::K(), mpq_of(-b)));
    for (long long t = tlo; t <= j - 1; ++t) {
      const RatFunc& ph = phi(t, a, b);
      const RatFunc& ph1 = phi(t, a, b - 1);
      RatFunc term = RatFunc::zero();
      if (!ph.is_zero()) term = term + ph * (negbK + RatFunc::from_mpq(mpq_of(2 * t - j - a)));
      if (!ph1.is_zero()) term = term + ph1;
      if (term.is_zero()) continue;
      s = s + term * r(k_ + j - t);
    }
    s.divide_by_rk(static_cast<std::uint32_t>(k_));
    s.divide_by_linear(b, a - j);
    return s;
  }

  long long k_;
  std::map<std::tuple<long long, long long, long long>, RatFunc> memo_;
  RatFunc zero_;
};

// Consolidated difference equation satisfied by the phi table:
//   sum_{t=0}^{j} (bK + j - 2t) r_{k+j-t} phi_{t+a,a,b}
//     = sum_{t=0}^{j-1} r_{k+j-t} phi_{t+a,a,b-1}.
inline bool phidiff_check(PhiTable& T, long long j, long long a, long long b) {
  if (j < 0 || a < 0 || b < 0) throw parameter_domain_error("phidiff_check: bad indices");
  const long long k = T.base_index();
  RatFunc lhs = RatFunc::zero();
  for (long long t = 0; t <= j; ++t) {
    const RatFunc& ph = T.phi(t + a, a, b);
    if (ph.is_zero()) continue;
    RatFunc lin = RatFunc::from_poly(MultiPoly<mpq_class>::variable(VarId::K(), mpq_of(b)) +
                                     MultiPoly<mpq_class>::constant(mpq_of(j - 2 * t)));
    lhs = lhs + ph * lin * RatFunc::var(VarId::R(static_cast<std::uint32_t>(k + j - t)));
  }
  RatFunc rhs = RatFunc::zero();
  for (long long t = 0; t <= j - 1; ++t) {
    const RatFunc& ph = T.phi(t + a, a, b - 1);
    if (ph.is_zero()) continue;
    rhs = rhs + ph * RatFunc::var(VarId::R(static_cast<std::uint32_t>(k + j - t)));
  }
  return lhs == rhs;
}

// c_{ij} = r_k^i sum_{a,b <= j} phi_{jab} P_a(i+b), as an exact identity; n
// symbolic unless given.
inline bool csum_check(PhiTable& T, long long i, long long j, std::optional<long long> n = {}) {
  if (i < 0 || j < 0) throw parameter_domain_error("csum_check: bad indices");
  const long long k = T.base_index();
  RatFunc lhs = RatFunc::from_zpoly(c_value(i, j, k, n));
  RatFunc rhs = RatFunc::zero();
  for (long long a = 0; a <= j; ++a)
    for (long long b = 0; b <= j; ++b) {
      RatFunc ph = T.phi(j, a, b);
      if (ph.is_zero()) continue;
      if (n) ph = ph.substituted(VarId::N(), mpq_of(*n));
      rhs = rhs + ph * RatFunc::from_zpoly(P_poly(a, i + b, n));
    }
  rhs = rhs * RatFunc::from_poly(MultiPoly<mpq_class>::variable(
            VarId::R(static_cast<std::uint32_t>(k)), mpq_class(1), static_cast<std::uint32_t>(i)));
  return lhs == rhs;
}

// Coefficientwise comparison of the phi table against the closed form
//   sum phi_{jab} x^j y^b = phi_{aa0} r_k^{-1} x^a alpha(x) exp(omega(x) y),
// expanded to order (jmax, bmax); exp is the finite sum of omega^b y^b / b!.
inline bool generating_check(PhiTable& T, long long a, long long jmax, long long bmax) {
  if (a < 0 || jmax < a || bmax < 0) throw parameter_domain_error("generating_check: bad orders");
  const long long k = T.base_index();
  auto q = q_series(k, jmax > 0 ? jmax : 1);

  // omega(x) = sum_{t>=1} q_t x^t / (t - K)
  std::vector<RatFunc> omega(static_cast<std::size_t>(jmax + 1));
  for (long long t = 1; t <= jmax; ++t) {
    RatFunc w = -q[static_cast<std::size_t>(t)];  // q_t/(t-K) = -q_t/(K-t)
    w.divide_by_linear(1, -t);
    omega[static_cast<std::size_t>(t)] = w;
  }
  std::vector<RatFunc> alpha(static_cast<std::size_t>(jmax + 1));
  for (long long s = 0; s <= jmax; ++s)
    alpha[static_cast<std::size_t>(s)] = RatFunc::var(VarId::R(static_cast<std::uint32_t>(k + s)));

  auto trunc_mul = [&](const std::vector<RatFunc>& x, const std::vector<RatFunc>& y) {
    std::vector<RatFunc> z(static_cast<std::size_t>(jmax + 1));
    for (long long i = 0; i <= jmax; ++i) {
      if (x[static_cast<std::size_t>(i)].is_zero()) continue;
      for (long long j2 = 0; i + j2 <= jmax; ++j2) {
        if (y[static_cast<std::size_t>(j2)].is_zero()) continue;
        z[static_cast<std::size_t>(i + j2)] =
            z[static_cast<std::size_t>(i + j2)] + x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j2)];
      }
    }
    return z;
  };

  RatFunc lead = T.phi(a, a, 0);
  std::vector<RatFunc> wpow(static_cast<std::size_t>(jmax + 1));
  wpow[0] = RatFunc::one();
  mpz_class bfact = 1;
  for (long long b = 0; b <= bmax; ++b) {
    if (b > 0) {
      wpow = trunc_mul(wpow, omega);
      bfact *= mpz_of(b);
    }
    std::vector<RatFunc> prod = trunc_mul(alpha, wpow);
    for (long long j = 0; j <= jmax; ++j) {
      RatFunc expected = RatFunc::zero();
      if (j >= a) {
        expected = lead * prod[static_cast<std::size_t>(j - a)];
        expected = expected.scaled(mpq_class(mpz_class(1), bfact));
        expected.divide_by_rk(static_cast<std::uint32_t>(k));
      }
      if (!(expected == T.phi(j, a, b))) return false;
    }
  }
  return true;
}

// Allowed denominator shape: integer factors dividing l! (equivalently,
// prime factors <= l), linear factors K-1..K-m, and powers of r_k.
struct DenominatorProfile {
  long long l = 0;
  long long m = 0;

  bool conforms(const RatFunc& q) const {
    for (const auto& [f, mult] : q.k_factors()) {
      if (f.first != 1) return false;
      long long c = -f.second;
      if (c < 1 || c > m) return false;
    }
    mpz_class L = q.coeff_denominator_lcm();
    for (mpz_class d = 2; L > 1; ++d) {
      if (d * d > L) {
        if (L > mpz_of(l)) return false;
        break;
      }
      if (L % d == 0) {
        if (d > mpz_of(l)) return false;
        while (L % d == 0) L /= d;
      }
    }
    return true;
  }
};

struct SlmResult {
  bool conforms = false;
  long long l = 0;
  long long m = 0;
};

// phi_{jab} lies in S_{lm} with l = max(a,b) and m = a (b = 0) or
// m = max(a, j+1-a-b) (b >= 1).
inline SlmResult slm_check(PhiTable& T, long long j, long long a, long long b) {
  if (a + b > j) throw parameter_domain_error("slm_check: requires a + b <= j");
  SlmResult r;
  r.l = std::max(a, b);
  r.m = (b == 0) ? a : std::max(a, j + 1 - a - b);
  DenominatorProfile prof{r.l, r.m};
  r.conforms = prof.conforms(T.phi(j, a, b));
  return r;
}

// Residue of phi_{j01} at its simple pole K = j equals -q_j.
inline bool residue_check(PhiTable& T, long long j) {
  if (j < 1) throw parameter_domain_error("residue_check: requires j >= 1");
  const long long k = T.base_index();
  RatFunc res = T.phi(j, 0, 1).residue_at(mpq_of(j));
  RatFunc expected = -q_series(k, j)[static_cast<std::size_t>(j)];
  return res == expected;
}

// Product law phi_{jab} = phi_{aa0} phi_{j-a,0,b}.
inline bool phi_product_law_check(PhiTable& T, long long j, long long a, long long b) {
  return T.phi(j, a, b) == T.phi(a, a, 0) * T.phi(j - a, 0, b);
}

namespace detail {

inline mpz_class kpoly_eval(const MultiPoly<mpz_class>& q, long long x) {
  mpz_class acc = 0;
  for (const auto& [m, c] : q.terms()) {
    mpz_class t = c;
    std::uint32_t d = m.exponent(VarId::K());
    for (std::uint32_t u = 0; u < d; ++u) t *= mpz_of(x);
    acc += t;
  }
  return acc;
}

inline mpz_class kpoly_derivative_eval(const MultiPoly<mpz_class>& q, long long x) {
  mpz_class acc = 0;
  for (const auto& [m, c] : q.terms()) {
    std::uint32_t d = m.exponent(VarId::K());
    if (d == 0) continue;
    mpz_class t = c * d;
    for (std::uint32_t u = 0; u + 1 < d; ++u) t *= mpz_of(x);
    acc += t;
  }
  return acc;
}

}  // namespace detail

// Expansions of P_0(p) and P_0(1) P_{k0}(p-1) modulo (K-k0)^2, with
// Q = prod_{i=1}^{p} ((i-2)k0 + n): both have constant term Q, their
// difference has first-order coefficient sum_h Q/(h k0 + n), and the unique
// summand prime to p is Q' = Q/(h0 k0 + n).
inline bool kk0_expansion_check(std::uint32_t p, long long k0, long long n) {
  if (!is_small_prime(p)) throw parameter_domain_error("kk0_expansion_check: p not prime");
  if (k0 % p == 0 || mod_ll(n - k0, p) == 0)
    throw parameter_domain_error(
        "kk0_expansion_check: requires p not dividing k0 and n != k0 mod p");
  if (k0 < 1 || n < 1) throw parameter_domain_error("kk0_expansion_check: bad parameters");

  mpz_class Q = 1;
  for (long long i = 1; i <= static_cast<long long>(p); ++i) Q *= mpz_of((i - 2) * k0 + n);

  MultiPoly<mpz_class> P0p = P_poly(0, p, n);
  MultiPoly<mpz_class> P01 = P_poly(0, 1, n);
  MultiPoly<mpz_class> Pk0 = P_poly(k0, p - 1, n);
  MultiPoly<mpz_class> prod = P01 * Pk0;

  // constant terms of both products at K = k0
  if (detail::kpoly_eval(P0p, k0) != Q) return false;
  if (detail::kpoly_eval(prod, k0) != Q) return false;

  // first-order coefficients of the two displayed expansions
  mpz_class lhs1 = detail::kpoly_derivative_eval(P0p, k0);
  mpz_class lhs2 = detail::kpoly_derivative_eval(prod, k0);
  mpz_class sum1 = -Q / mpz_of(n - k0);
  mpz_class sum2 = sum1;
  for (long long h = 0; h <= static_cast<long long>(p) - 2; ++h) {
    mpz_class term = Q / mpz_of(h * k0 + n);
    sum1 += mpz_of(h) * term;
    sum2 += mpz_of(h - 1) * term;
  }
  if (lhs1 != sum1 || lhs2 != sum2) return false;

  // difference: first order coefficient is sum_h Q/(h k0 + n)
  mpz_class dsum = 0;
  for (long long h = 0; h <= static_cast<long long>(p) - 2; ++h) dsum += Q / mpz_of(h * k0 + n);
  if (lhs1 - lhs2 != dsum) return false;

  // unique h0 with p | h0 k0 + n; Q' = Q/(h0 k0 + n) is prime to p, all other
  // summands are divisible by p
  long long h0 = -1;
  for (long long h = 0; h <= static_cast<long long>(p) - 2; ++h)
    if (mod_ll(h * k0 + n, p) == 0) {
      if (h0 >= 0) return false;
      h0 = h;
    }
  if (h0 < 0) return false;
  for (long long h = 0; h <= static_cast<long long>(p) - 2; ++h) {
    mpz_class term = Q / mpz_of(h * k0 + n);
    bool div = mpz_divisible_ui_p(term.get_mpz_t(), p) != 0;
    if (h == h0 && div) return false;
    if (h != h0 && !div) return false;
  }
  return true;
}

// The residue class of Q' = Q/(h0 k0 + n) mod p (used by the Pi bridge).
inline Fp kk0_Qprime(const PrimeField& F, long long k0, long long n) {
  const long long p = F.modulus();
  mpz_class Q = 1;
  for (long long i = 1; i <= p; ++i) Q *= mpz_of((i - 2) * k0 + n);
  long long h0 = -1;
  for (long long h = 0; h <= p - 2; ++h)
    if (mod_ll(h * k0 + n, p) == 0) h0 = h;
  if (h0 < 0) throw parameter_domain_error("kk0_Qprime: no h0 with p | h0 k0 + n");
  return F.from(mpz_class(Q / mpz_of(h0 * k0 + n)));
}

// Bridge into the matrix side, in the regime p not dividing k, e = k0 < k:
// reducing r_k^{p-1} sum_{a,b <= k0} phi_{k0 a b} P_a(p-1+b) at K -> k must
// reproduce pi_{p-1,0,k0}, and both equal -Q' r_k^{p-1} q_{k0} mod p.
inline bool case3_pi_bridge_check(const PrimeField& F, long long k, long long n) {
  ParamSet ps(F.modulus(), k, n);
  const long long p = F.modulus();
  if (k % p == 0) throw parameter_domain_error("case3_pi_bridge_check: requires p not dividing k");
  const long long e = e_of(ps);
  if (!(e == ps.k0 && e < k))
    throw parameter_domain_error("case3_pi_bridge_check: requires e(k,n) = k0 < k");
  for (long long i = 0; i <= ps.k0; ++i)
    if (mod_ll(n - (2 * k - i), p) == 0)
      throw parameter_domain_error("case3_pi_bridge_check: requires the fall-through case");

  PhiTable T(k);
  RatFunc rhs = RatFunc::zero();
  for (long long a = 0; a <= ps.k0; ++a)
    for (long long b = 0; b <= ps.k0; ++b) {
      RatFunc ph = T.phi(ps.k0, a, b);
      if (ph.is_zero()) continue;
      rhs = rhs + ph.substituted(VarId::N(), mpq_of(n)) * RatFunc::from_zpoly(P_poly(a, p - 1 + b, n));
    }
  rhs = rhs * RatFunc::from_poly(MultiPoly<mpq_class>::variable(
            VarId::R(static_cast<std::uint32_t>(k)), mpq_class(1), static_cast<std::uint32_t>(p - 1)));
  MultiPoly<Fp> red = rhs.reduce_mod(F, k, n);

  FpPolyMatrix P = pi_product(F, k, n, e, p - 1, false);
  if (!(red == P[0][static_cast<std::size_t>(ps.k0)])) return false;

  Fp Qp = kk0_Qprime(F, ps.k0, n);
  RatFunc closed = q_series(k, ps.k0)[static_cast<std::size_t>(ps.k0)] *
                   RatFunc::from_poly(MultiPoly<mpq_class>::variable(
                       VarId::R(static_cast<std::uint32_t>(k)), mpq_class(1),
                       static_cast<std::uint32_t>(p - 1)));
  MultiPoly<Fp> closed_red = closed.reduce_mod(F, k, n).scaled(-Qp);
  return red == closed_red;
}

}  // namespace nott
