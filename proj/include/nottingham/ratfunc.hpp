#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "nottingham/errors.hpp"
#include "nottingham/multipoly.hpp"
#include "nottingham/prime_field.hpp"

namespace nott {

// Exact rational function in K with polynomial coefficients.  The numerator
// is a polynomial over Q; the denominator is kept as a factored multiset of
// primitive linear polynomials a*K + b (a > 0) together with a power of the
// distinguished variable r_k.  Integer content lives in the rational
// coefficients of the numerator.  After every operation the denominator is
// gcd-reduced against the numerator, so the factor multiset of the reduced
// form is inspectable.
class RatFunc {
 public:
  using Factor = std::pair<long long, long long>;  // (a, b) for a*K + b

  RatFunc() = default;

  static RatFunc zero() { return {}; }
  static RatFunc one() { return from_mpq(mpq_class(1)); }
  static RatFunc from_mpq(const mpq_class& c) {
    RatFunc r;
    r.num_ = MultiPoly<mpq_class>::constant(c);
    return r;
  }
  static RatFunc from_poly(MultiPoly<mpq_class> q) {
    RatFunc r;
    r.num_ = std::move(q);
    return r;
  }
  static RatFunc from_zpoly(const MultiPoly<mpz_class>& q) { return from_poly(to_mpq(q)); }
  static RatFunc var(VarId v) {
    return from_poly(MultiPoly<mpq_class>::variable(v, mpq_class(1)));
  }

  bool is_zero() const { return num_.is_zero(); }

  const MultiPoly<mpq_class>& numerator() const { return num_; }
  const std::map<Factor, std::uint32_t>& k_factors() const { return kf_; }
  std::uint32_t rk_power() const { return rk_pow_; }
  std::uint32_t rk_index() const { return rk_idx_; }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  RatFunc operator*(const RatFunc& o) const {
    RatFunc r;
    r.rk_idx_ = unified_rk(o);
    r.rk_pow_ = rk_pow_ + o.rk_pow_;
    r.kf_ = kf_;
    for (const auto& [f, m] : o.kf_) r.kf_[f] += m;
    r.num_ = num_ * o.num_;
    r.normalize();
    return r;
  }

  RatFunc operator+(const RatFunc& o) const {
    RatFunc r;
    r.rk_idx_ = unified_rk(o);
    MultiPoly<mpq_class> lhs = num_;
    MultiPoly<mpq_class> rhs = o.num_;
    // common denominator: factor-wise max multiplicities, max r_k power
    r.rk_pow_ = std::max(rk_pow_, o.rk_pow_);
    if (r.rk_pow_ > rk_pow_)
      lhs = lhs * rk_monomial(r.rk_idx_, r.rk_pow_ - rk_pow_);
    if (r.rk_pow_ > o.rk_pow_)
      rhs = rhs * rk_monomial(r.rk_idx_, r.rk_pow_ - o.rk_pow_);
    r.kf_ = kf_;
    for (const auto& [f, m] : o.kf_)
      r.kf_[f] = std::max(r.kf_[f], m);
    for (const auto& [f, m] : r.kf_) {
      std::uint32_t ml = m - multiplicity(kf_, f);
      std::uint32_t mr = m - multiplicity(o.kf_, f);
      for (std::uint32_t t = 0; t < ml; ++t) lhs = lhs * factor_poly(f);
      for (std::uint32_t t = 0; t < mr; ++t) rhs = rhs * factor_poly(f);
    }
    r.num_ = lhs + rhs;
    r.normalize();
    return r;
  }

  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }

  RatFunc scaled(const mpq_class& c) const {
    RatFunc r = *this;
    r.num_ = r.num_.scaled(c);
    if (r.num_.is_zero()) {
      r.kf_.clear();
      r.rk_pow_ = 0;
    }
    return r;
  }

  // Divide by the linear polynomial a*K + b (a may be zero for an integer).
  RatFunc& divide_by_linear(long long a, long long b) {
    if (a == 0) {
      if (b == 0) throw parameter_domain_error("RatFunc: division by zero");
      num_ = num_.scaled(mpq_ratio(1, b));
      return *this;
    }
    if (a < 0) {
      a = -a;
      b = -b;
      num_ = -num_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), mpz_of(a).get_mpz_t(), mpz_of(std::llabs(b)).get_mpz_t());
    long long gg = b == 0 ? a : g.get_si();
    if (gg > 1) {
      num_ = num_.scaled(mpq_ratio(1, gg));
      a /= gg;
      b /= gg;
    }
    ++kf_[{a, b}];
    normalize();
    return *this;
  }

  RatFunc& divide_by_rk(std::uint32_t k, std::uint32_t power = 1) {
    if (power == 0) return *this;
    if (rk_pow_ > 0 && rk_idx_ != k)
      throw ring_mismatch_error("RatFunc: conflicting distinguished r_k variables");
    rk_idx_ = k;
    rk_pow_ += power;
    normalize();
    return *this;
  }

  // Exact equality, decided by cross-multiplication.
  bool operator==(const RatFunc& o) const {
    if (is_zero() && o.is_zero()) return true;
    unified_rk(o);  // raises on a genuine conflict
    return num_ * o.denominator_poly() == o.num_ * denominator_poly();
  }

  // Substitute a rational value for K or n (never a denominator variable
  // unless all K-factors remain nonzero at that value).
  RatFunc substituted(VarId v, const mpq_class& value) const {
    RatFunc r = *this;
    if (v == VarId::K()) {
      for (const auto& [f, m] : kf_) {
        mpq_class val = mpq_of(f.first) * value + mpq_of(f.second);
        if (sgn(val) == 0)
          throw parameter_domain_error("RatFunc: substitution hits a pole");
        mpq_class inv = 1 / val;
        for (std::uint32_t t = 0; t < m; ++t) r.num_ = r.num_.scaled(inv);
      }
      r.kf_.clear();
    }
    r.num_ = substitute_value(r.num_, v, value);
    r.normalize();
    return r;
  }

  // Residue at K = c for an at most simple pole: ((K - c) * q)(K = c).
  RatFunc residue_at(const mpq_class& c) const {
    Factor key = primitive_root_factor(c);
    std::uint32_t mult = multiplicity(kf_, key);
    if (mult >= 2)
      throw higher_order_pole_error("RatFunc: pole of order " + std::to_string(mult) +
                                    " at K = " + c.get_str());
    if (mult == 0) return zero();
    RatFunc r = *this;
    r.kf_.erase(key);
    // stored factor is v*K - u = v*(K - c) with c = u/v
    r.num_ = r.num_.scaled(mpq_ratio(1, key.first));
    return r.substituted(VarId::K(), c);
  }

  // Reduction mod p with K -> k_value: every denominator factor must map to a
  // unit, and the r_k power must cancel against the numerator.
  MultiPoly<Fp> reduce_mod(const PrimeField& F, long long k_value,
                           std::optional<long long> n_value = {}) const {
    Fp scale = F.one();
    for (const auto& [f, m] : kf_) {
      Fp val = F.from(f.first * k_value + f.second);
      if (val.is_zero())
        throw not_reducible_error("RatFunc: denominator factor " + factor_str(f) +
                                  " vanishes mod " + std::to_string(F.modulus()));
      scale = scale * val.inverse().pow(m);
    }
    MultiPoly<Fp> red = reduce_mod_p(num_, F, k_value, n_value).scaled(scale);
    if (rk_pow_ > 0) {
      VarId rk = VarId::R(rk_idx_);
      if (!divisible_by_var(red, rk, rk_pow_))
        throw not_reducible_error("RatFunc: residual r_k denominator after reduction");
      red = divide_by_var(red, rk, rk_pow_);
    }
    return red;
  }

  // lcm of the denominators of the numerator's rational coefficients: the
  // integer content of the denominator in lowest terms.
  mpz_class coeff_denominator_lcm() const {
    mpz_class l = 1;
    for (const auto& [m, c] : num_.terms())
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    return l;
  }

  std::string str() const {
    std::string s = "(" + num_.str() + ")";
    if (!kf_.empty() || rk_pow_ > 0) {
      s += " / (";
      bool first = true;
      for (const auto& [f, m] : kf_) {
        if (!first) s += "*";
        first = false;
        s += "(" + factor_str(f) + ")";
        if (m > 1) s += "^" + std::to_string(m);
      }
      if (rk_pow_ > 0) {
        if (!first) s += "*";
        s += "r" + std::to_string(rk_idx_);
        if (rk_pow_ > 1) s += "^" + std::to_string(rk_pow_);
      }
      s += ")";
    }
    return s;
  }

  MultiPoly<mpq_class> denominator_poly() const {
    MultiPoly<mpq_class> d = MultiPoly<mpq_class>::constant(mpq_class(1));
    for (const auto& [f, m] : kf_)
      for (std::uint32_t t = 0; t < m; ++t) d = d * factor_poly(f);
    if (rk_pow_ > 0) d = d * rk_monomial(rk_idx_, rk_pow_);
    return d;
  }

 private:
  static MultiPoly<mpq_class> factor_poly(const Factor& f) {
    MultiPoly<mpq_class> q = MultiPoly<mpq_class>::constant(mpq_of(f.second));
    if (f.first != 0)
      q = q + MultiPoly<mpq_class>::variable(VarId::K(), mpq_of(f.first));
    return q;
  }
  static MultiPoly<mpq_class> rk_monomial(std::uint32_t idx, std::uint32_t pow) {
    return MultiPoly<mpq_class>::variable(VarId::R(idx), mpq_class(1), pow);
  }
  static std::uint32_t multiplicity(const std::map<Factor, std::uint32_t>& m, const Factor& f) {
    auto it = m.find(f);
    return it == m.end() ? 0 : it->second;
  }
  static std::string factor_str(const Factor& f) {
    std::string s;
    if (f.first != 0) {
      if (f.first != 1) s += std::to_string(f.first) + "*";
      s += "K";
      if (f.second > 0) s += "+" + std::to_string(f.second);
      if (f.second < 0) s += std::to_string(f.second);
    } else {
      s = std::to_string(f.second);
    }
    return s;
  }
  // primitive (v, -u) representing K - u/v
  static Factor primitive_root_factor(const mpq_class& c) {
    mpq_class cc = c;
    cc.canonicalize();
    return {static_cast<long long>(cc.get_den().get_si()),
            -static_cast<long long>(cc.get_num().get_si())};
  }

  std::uint32_t unified_rk(const RatFunc& o) const {
    if (rk_pow_ > 0 && o.rk_pow_ > 0 && rk_idx_ != o.rk_idx_)
      throw ring_mismatch_error("RatFunc: operands distinguish different r_k variables");
    return rk_pow_ > 0 ? rk_idx_ : (o.rk_pow_ > 0 ? o.rk_idx_ : std::max(rk_idx_, o.rk_idx_));
  }

  // Divisibility of the numerator by a*K + b is decided by evaluation at
  // K = -b/a; the quotient comes from synthetic division in K.
  bool try_divide_linear(const Factor& f) {
    const mpq_class root = mpq_ratio(-f.second, f.first);
    if (!substitute_value(num_, VarId::K(), root).is_zero()) return false;
    auto by_deg = collect_by_var(num_, VarId::K());
    std::uint32_t maxd = by_deg.rbegin()->first;
    if (maxd == 0) return false;  // nonzero constant in K cannot be divisible
    std::map<std::uint32_t, MultiPoly<mpq_class>> quot;
    MultiPoly<mpq_class> carry;  // running coefficient during synthetic division
    const mpq_class inv_a = mpq_ratio(1, f.first);
    for (std::uint32_t d = maxd; d >= 1; --d) {
      MultiPoly<mpq_class> cd = carry;
      auto it = by_deg.find(d);
      if (it != by_deg.end()) cd = cd + it->second;
      MultiPoly<mpq_class> qd = cd.scaled(inv_a);  // quotient coefficient of K^{d-1}
      quot[d - 1] = qd;
      carry = -qd.scaled(mpq_of(f.second));
    }
    // remainder = constant coefficient + carry must vanish (guaranteed by the
    // evaluation test); rebuild numerator from the quotient
    MultiPoly<mpq_class> out;
    for (const auto& [d, q] : quot)
      for (const auto& [m, c] : q.terms()) out.add_term(m * Monomial::var(VarId::K(), d), c);
    num_ = out;
    return true;
  }

  void normalize() {
    if (num_.is_zero()) {
      kf_.clear();
      rk_pow_ = 0;
      return;
    }
    while (rk_pow_ > 0 && divisible_by_var(num_, VarId::R(rk_idx_))) {
      num_ = divide_by_var(num_, VarId::R(rk_idx_));
      --rk_pow_;
    }
    for (auto it = kf_.begin(); it != kf_.end();) {
      while (it->second > 0 && try_divide_linear(it->first)) --it->second;
      if (it->second == 0)
        it = kf_.erase(it);
      else
        ++it;
    }
  }

  MultiPoly<mpq_class> num_;
  std::map<Factor, std::uint32_t> kf_;
  std::uint32_t rk_idx_ = 0;
  std::uint32_t rk_pow_ = 0;
};

// Residue of a rational function with at most a simple pole at K = c.
inline RatFunc ratfunc_residue(const RatFunc& q, const mpq_class& c) { return q.residue_at(c); }

}  // namespace nott
