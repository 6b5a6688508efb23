#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "nottingham/errors.hpp"

namespace nott {

// gmpxx lacks long long constructors; long is 64-bit on every platform this
// library targets.
inline mpz_class mpz_of(long long v) { return mpz_class(static_cast<long>(v)); }
inline mpq_class mpq_of(long long v) { return mpq_class(static_cast<long>(v)); }
inline mpq_class mpq_ratio(long long num, long long den) {
  mpq_class q(mpz_of(num), mpz_of(den));
  q.canonicalize();
  return q;
}

inline bool is_small_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d <= p / d; ++d)
    if (p % d == 0) return false;
  return true;
}

// Element of F_p.  Each value carries its modulus, so arithmetic between
// elements of different fields fails loudly instead of silently mixing rings.
class Fp {
 public:
  Fp() = default;  // placeholder zero, not attached to a field until assigned
  Fp(std::uint64_t v, std::uint32_t p) : v_(static_cast<std::uint32_t>(v % p)), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    require_same(a, b);
    std::uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return raw(s, a.p_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    require_same(a, b);
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    require_same(a, b);
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_), a.p_);
  }

  Fp pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Fp acc = raw(1 % p_, p_);
    Fp base = *this;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  Fp inverse() const {
    if (v_ == 0) throw parameter_domain_error("Fp: inverse of zero");
    return pow(static_cast<long long>(p_) - 2);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    require_same(a, b);
    return a.v_ == b.v_;
  }

 private:
  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp x;
    x.v_ = v;
    x.p_ = p;
    return x;
  }
  static void require_same(const Fp& a, const Fp& b) {
    if (a.p_ != b.p_)
      throw ring_mismatch_error("F_p elements from different fields: p=" +
                                std::to_string(a.p_) + " vs p=" + std::to_string(b.p_));
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline bool coeff_is_zero(const Fp& c) { return c.is_zero(); }

// Field descriptor: validates primality once and mints elements.
class PrimeField {
 public:
  using Elem = Fp;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_small_prime(p))
      throw parameter_domain_error("PrimeField: modulus " + std::to_string(p) + " is not prime");
  }

  std::uint32_t modulus() const { return p_; }
  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }

  Fp from(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Fp(static_cast<std::uint64_t>(r), p_);
  }
  Fp from(const mpz_class& z) const { return Fp(mpz_fdiv_ui(z.get_mpz_t(), p_), p_); }
  Fp from(const mpq_class& q) const {
    Fp den = from(q.get_den());
    if (den.is_zero())
      throw not_reducible_error("denominator divisible by " + std::to_string(p_));
    return from(q.get_num()) * den.inverse();
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace nott
