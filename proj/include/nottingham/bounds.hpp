#pragma once

#include <cstdint>
#include <string>

#include "nottingham/errors.hpp"
#include "nottingham/prime_field.hpp"

namespace nott {

inline long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

// Parameters (p, k, n) with n >= k >= 1; k0 is the least nonnegative residue
// of k mod p.
struct ParamSet {
  std::uint32_t p;
  long long k;
  long long n;
  long long k0;

  ParamSet(std::uint32_t p_, long long k_, long long n_)
      : p(p_), k(k_), n(n_), k0(mod_ll(k_, p_)) {
    if (!is_small_prime(p_))
      throw parameter_domain_error("ParamSet: " + std::to_string(p_) + " is not prime");
    if (k_ < 1 || n_ < k_)
      throw parameter_domain_error("ParamSet: requires n >= k >= 1, got k=" +
                                   std::to_string(k_) + " n=" + std::to_string(n_));
  }

  std::string str() const {
    return "p=" + std::to_string(p) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
  }
};

// The five-case correction term e(k, n).  When p does not divide k the
// matching i, if any, is unique mod p, so the increasing scan is well defined.
inline long long e_of(const ParamSet& ps) {
  const long long p = ps.p;
  if (ps.k % p == 0) {
    if (ps.n == ps.k) return 0;
    if (ps.n % p == 0) return 1;
    return 0;
  }
  for (long long i = 0; i <= ps.k0; ++i)
    if (mod_ll(ps.n - (2 * ps.k - i), p) == 0) return i;
  return ps.k0;
}

// Lower bound n + (p-1)k + e(k, n) for the depth of g^p f^{-p}.
inline long long theorem_bound(const ParamSet& ps) {
  return ps.n + (static_cast<long long>(ps.p) - 1) * ps.k + e_of(ps);
}

// Depth of the p-th power of a generic depth-k element: pk + k0.
inline long long pth_power_depth(std::uint32_t p, long long k) {
  if (!is_small_prime(p)) throw parameter_domain_error("pth_power_depth: p not prime");
  if (k < 1) throw parameter_domain_error("pth_power_depth: k must be positive");
  return static_cast<long long>(p) * k + mod_ll(k, p);
}

// Bound for g^{p^m} f^{-p^m}: closed form n + (p^m-1)k + (p^m-p)/(p-1)*k0 + e,
// cross-checked against the m-step recursion it sums.
inline long long corollary_bound(const ParamSet& ps, long long m) {
  if (m < 1) throw parameter_domain_error("corollary_bound: m must be >= 1");
  const long long p = ps.p;
  long long pm = 1;
  for (long long i = 0; i < m; ++i) pm *= p;
  const long long closed = ps.n + (pm - 1) * ps.k + ((pm - p) / (p - 1)) * ps.k0 + e_of(ps);

  long long d = theorem_bound(ps);
  long long pi = p;
  for (long long i = 1; i < m; ++i) {
    d += (p - 1) * (pi * ps.k + ((pi - 1) / (p - 1)) * ps.k0) + ps.k0;
    pi *= p;
  }
  if (d != closed)
    throw internal_inconsistency_error("corollary_bound: closed form " + std::to_string(closed) +
                                       " != recursion " + std::to_string(d) + " at " + ps.str() +
                                       " m=" + std::to_string(m));
  return closed;
}

// Residue class of theorem_bound mod p, by case analysis; checked against the
// bound itself.
inline long long bound_congruence_class(const ParamSet& ps) {
  const long long p = ps.p;
  const long long e = e_of(ps);
  long long cls;
  if (ps.k % p == 0 && ps.n % p == 0 && ps.n > ps.k)
    cls = mod_ll(1, p);
  else if (e == ps.k0)
    cls = mod_ll(ps.n, p);
  else
    cls = mod_ll(ps.k, p);
  if (mod_ll(theorem_bound(ps), p) != cls)
    throw internal_inconsistency_error("bound_congruence_class: mismatch at " + ps.str());
  return cls;
}

}  // namespace nott
