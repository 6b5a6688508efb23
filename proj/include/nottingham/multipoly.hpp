#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "nottingham/errors.hpp"
#include "nottingham/prime_field.hpp"

namespace nott {

inline bool coeff_is_zero(const mpz_class& c) { return sgn(c) == 0; }
inline bool coeff_is_zero(const mpq_class& c) { return sgn(c) == 0; }

inline std::string coeff_repr(const Fp& c) { return std::to_string(c.value()); }
inline std::string coeff_repr(const mpz_class& c) { return c.get_str(); }
inline std::string coeff_repr(const mpq_class& c) { return c.get_str(); }

// Polynomial variables: the symbols K and n, and the two indexed families
// r_j and s_j.  Ordered by (kind, index); this order underlies the canonical
// monomial order.
enum class VarKind : std::uint8_t { K = 0, N = 1, R = 2, S = 3 };

struct VarId {
  VarKind kind = VarKind::K;
  std::uint32_t index = 0;

  static VarId K() { return VarId{VarKind::K, 0}; }
  static VarId N() { return VarId{VarKind::N, 0}; }
  static VarId R(std::uint32_t j) { return VarId{VarKind::R, j}; }
  static VarId S(std::uint32_t j) { return VarId{VarKind::S, j}; }

  friend auto operator<=>(const VarId&, const VarId&) = default;

  std::string name() const {
    switch (kind) {
      case VarKind::K: return "K";
      case VarKind::N: return "n";
      case VarKind::R: return "r" + std::to_string(index);
      case VarKind::S: return "s" + std::to_string(index);
    }
    return "?";
  }
};

// Power product of variables; exponents are strictly positive and the factor
// list is kept sorted by VarId.
class Monomial {
 public:
  Monomial() = default;

  static Monomial var(VarId v, std::uint32_t e = 1) {
    Monomial m;
    if (e > 0) {
      m.exps_.emplace_back(v, e);
      m.degree_ = e;
    }
    return m;
  }

  bool is_unit() const { return exps_.empty(); }
  std::uint64_t degree() const { return degree_; }
  const std::vector<std::pair<VarId, std::uint32_t>>& factors() const { return exps_; }

  std::uint32_t exponent(VarId v) const {
    for (const auto& [w, e] : exps_)
      if (w == v) return e;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.exps_.reserve(exps_.size() + o.exps_.size());
    auto a = exps_.begin();
    auto b = o.exps_.begin();
    while (a != exps_.end() && b != o.exps_.end()) {
      if (a->first < b->first)
        r.exps_.push_back(*a++);
      else if (b->first < a->first)
        r.exps_.push_back(*b++);
      else {
        r.exps_.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    r.exps_.insert(r.exps_.end(), a, exps_.end());
    r.exps_.insert(r.exps_.end(), b, o.exps_.end());
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  bool divisible_by(VarId v, std::uint32_t e = 1) const { return exponent(v) >= e; }

  Monomial divided_by(VarId v, std::uint32_t e = 1) const {
    Monomial r;
    r.exps_.reserve(exps_.size());
    bool seen = false;
    for (const auto& [w, x] : exps_) {
      if (w == v) {
        seen = true;
        if (x < e) throw parameter_domain_error("Monomial: not divisible by " + v.name());
        if (x > e) r.exps_.emplace_back(w, x - e);
      } else {
        r.exps_.emplace_back(w, x);
      }
    }
    if (!seen && e > 0) throw parameter_domain_error("Monomial: not divisible by " + v.name());
    r.degree_ = degree_ - e;
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  // Graded lexicographic: total degree first, then earlier variables (smaller
  // VarId) with larger exponents rank higher.
  std::strong_ordering order(const Monomial& o) const {
    if (degree_ != o.degree_) return degree_ <=> o.degree_;
    auto a = exps_.begin();
    auto b = o.exps_.begin();
    while (a != exps_.end() && b != o.exps_.end()) {
      if (a->first != b->first)
        return (a->first < b->first) ? std::strong_ordering::greater : std::strong_ordering::less;
      if (a->second != b->second) return a->second <=> b->second;
      ++a;
      ++b;
    }
    if (a != exps_.end()) return std::strong_ordering::greater;
    if (b != o.exps_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  friend bool operator<(const Monomial& x, const Monomial& y) {
    return x.order(y) == std::strong_ordering::less;
  }

  std::string str() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (const auto& [v, e] : exps_) {
      if (!out.empty()) out += "*";
      out += v.name();
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::vector<std::pair<VarId, std::uint32_t>> exps_;
  std::uint64_t degree_ = 0;
};

// Sparse multivariate polynomial with exact coefficients.  No zero
// coefficients are stored and the term map is keyed by the canonical
// graded-lex monomial order, so representations are canonical.
template <class C>
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, C>;

  MultiPoly() = default;

  static MultiPoly constant(C c) {
    MultiPoly q;
    if (!coeff_is_zero(c)) q.terms_.emplace(Monomial(), std::move(c));
    return q;
  }
  static MultiPoly variable(VarId v, C one, std::uint32_t e = 1) {
    return monomial(Monomial::var(v, e), std::move(one));
  }
  static MultiPoly monomial(Monomial m, C c) {
    MultiPoly q;
    if (!coeff_is_zero(c)) q.terms_.emplace(std::move(m), std::move(c));
    return q;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
  }
  // Constant term; the caller supplies the ring zero for the empty case.
  C constant_value(C zero_value) const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? zero_value : it->second;
  }

  void add_term(const Monomial& m, const C& c) {
    if (coeff_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiPoly operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    MultiPoly r;
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  MultiPoly scaled(const C& s) const {
    MultiPoly r;
    if (coeff_is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  bool depends_on(VarId v) const {
    for (const auto& [m, c] : terms_)
      if (m.exponent(v) > 0) return true;
    return false;
  }

  std::vector<VarId> variables() const {
    std::vector<VarId> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.factors()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string cs = coeff_repr(c);
      std::string t;
      if (m.is_unit())
        t = cs;
      else if (cs == "1")
        t = m.str();
      else if (cs == "-1")
        t = "-" + m.str();
      else
        t = cs + "*" + m.str();
      if (out.empty())
        out = t;
      else if (!t.empty() && t[0] == '-')
        out += " - " + t.substr(1);
      else
        out += " + " + t;
    }
    return out;
  }

 private:
  TermMap terms_;
};

template <class C>
bool coeff_is_zero(const MultiPoly<C>& q) {
  return q.is_zero();
}

template <class C>
std::string coeff_repr(const MultiPoly<C>& q) {
  return "(" + q.str() + ")";
}

template <class C>
bool depends_on(const MultiPoly<C>& q, VarId v) {
  return q.depends_on(v);
}

template <class C>
bool divisible_by_var(const MultiPoly<C>& q, VarId v, std::uint32_t e = 1) {
  if (q.is_zero()) return true;
  for (const auto& [m, c] : q.terms())
    if (!m.divisible_by(v, e)) return false;
  return true;
}

template <class C>
MultiPoly<C> divide_by_var(const MultiPoly<C>& q, VarId v, std::uint32_t e = 1) {
  MultiPoly<C> r;
  for (const auto& [m, c] : q.terms()) r.add_term(m.divided_by(v, e), c);
  return r;
}

// Splits q by the exponent of v: result[d] collects the terms with v^d,
// with v removed from their monomials.
template <class C>
std::map<std::uint32_t, MultiPoly<C>> collect_by_var(const MultiPoly<C>& q, VarId v) {
  std::map<std::uint32_t, MultiPoly<C>> out;
  for (const auto& [m, c] : q.terms()) {
    std::uint32_t d = m.exponent(v);
    out[d].add_term(d ? m.divided_by(v, d) : m, c);
  }
  return out;
}

// Partial or full substitution of F_p values; a ring homomorphism.
inline MultiPoly<Fp> substitute(const MultiPoly<Fp>& q, const std::map<VarId, Fp>& asg) {
  MultiPoly<Fp> r;
  for (const auto& [m, c] : q.terms()) {
    Fp scalar = c;
    Monomial rest;
    bool dead = false;
    for (const auto& [v, e] : m.factors()) {
      auto it = asg.find(v);
      if (it == asg.end()) {
        rest = rest * Monomial::var(v, e);
      } else if (it->second.is_zero()) {
        dead = true;
        break;
      } else {
        scalar = scalar * it->second.pow(e);
      }
    }
    if (!dead) r.add_term(rest, scalar);
  }
  return r;
}

// Full evaluation; unassigned variables evaluate to zero when
// missing_as_zero is set, otherwise they raise.
inline Fp evaluate(const MultiPoly<Fp>& q, const std::map<VarId, Fp>& asg,
                   const PrimeField& F, bool missing_as_zero = false) {
  Fp acc = F.zero();
  for (const auto& [m, c] : q.terms()) {
    Fp term = c;
    bool dead = false;
    for (const auto& [v, e] : m.factors()) {
      auto it = asg.find(v);
      if (it == asg.end()) {
        if (missing_as_zero) {
          dead = true;
          break;
        }
        throw incomplete_specialization_error("no value for variable " + v.name());
      }
      term = term * it->second.pow(e);
    }
    if (!dead) acc = acc + term;
  }
  return acc;
}

template <class C>
MultiPoly<mpq_class> to_mpq(const MultiPoly<C>& q) {
  MultiPoly<mpq_class> r;
  for (const auto& [m, c] : q.terms()) r.add_term(m, mpq_class(c));
  return r;
}

inline MultiPoly<mpq_class> substitute_value(const MultiPoly<mpq_class>& q, VarId v,
                                             const mpq_class& value) {
  MultiPoly<mpq_class> r;
  for (const auto& [m, c] : q.terms()) {
    std::uint32_t d = m.exponent(v);
    if (d == 0) {
      r.add_term(m, c);
    } else {
      mpq_class s = c;
      for (std::uint32_t i = 0; i < d; ++i) s *= value;
      r.add_term(m.divided_by(v, d), s);
    }
  }
  return r;
}

namespace detail {

template <class C>
MultiPoly<Fp> reduce_mod_p_impl(const MultiPoly<C>& q, const PrimeField& F, long long k_value,
                                std::optional<long long> n_value) {
  MultiPoly<Fp> r;
  const Fp kv = F.from(k_value);
  for (const auto& [m, c] : q.terms()) {
    Fp scalar = F.from(c);  // mpq overload raises not_reducible on p | denominator
    Monomial rest;
    for (const auto& [v, e] : m.factors()) {
      if (v == VarId::K()) {
        scalar = scalar * kv.pow(e);
      } else if (v == VarId::N()) {
        if (!n_value)
          throw parameter_domain_error("reduce_mod_p: polynomial depends on symbolic n");
        scalar = scalar * F.from(*n_value).pow(e);
      } else {
        rest = rest * Monomial::var(v, e);
      }
    }
    r.add_term(rest, scalar);
  }
  return r;
}

}  // namespace detail

// The reduction map sending K to the image of k and coefficients to F_p.
inline MultiPoly<Fp> reduce_mod_p(const MultiPoly<mpz_class>& q, const PrimeField& F,
                                  long long k_value, std::optional<long long> n_value = {}) {
  return detail::reduce_mod_p_impl(q, F, k_value, n_value);
}
inline MultiPoly<Fp> reduce_mod_p(const MultiPoly<mpq_class>& q, const PrimeField& F,
                                  long long k_value, std::optional<long long> n_value = {}) {
  return detail::reduce_mod_p_impl(q, F, k_value, n_value);
}

}  // namespace nott
