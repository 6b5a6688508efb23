#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nottingham/errors.hpp"
#include "nottingham/multipoly.hpp"
#include "nottingham/prime_field.hpp"

namespace nott {

// Depth knowledge is bounded by the working precision: Exact(d) certifies the
// first nonzero coefficient, AtLeast(N) only that none was seen up to x^N.
struct DepthResult {
  enum class Kind { Exact, AtLeast };
  Kind kind = Kind::AtLeast;
  long long value = 0;

  static DepthResult exact(long long d) { return {Kind::Exact, d}; }
  static DepthResult at_least(long long n) { return {Kind::AtLeast, n}; }

  bool is_exact() const { return kind == Kind::Exact; }
  bool known_at_least(long long b) const { return value >= b; }

  friend bool operator==(const DepthResult&, const DepthResult&) = default;

  std::string str() const {
    return (is_exact() ? "Exact(" : "AtLeast(") + std::to_string(value) + ")";
  }
};

// Coefficient ring descriptor for series over polynomial coefficients.
struct FpPolyRing {
  PrimeField field;
  using Elem = MultiPoly<Fp>;
  Elem zero() const { return {}; }
  Elem one() const { return Elem::constant(field.one()); }
  friend bool operator==(const FpPolyRing&, const FpPolyRing&) = default;
};

// Truncated substitution-group element x + a_2 x^2 + ... + a_N x^N + O(x^{N+1}).
// The leading coefficient is the ring's 1 and is implicit.  Values are
// immutable after construction; all operations below are pure.
template <class Ring>
class Series {
 public:
  using Elem = typename Ring::Elem;

  Series(const Ring& ring, long long precision)
      : ring_(ring), prec_(precision), c_(check_prec(precision) - 1, ring.zero()) {}

  Series(const Ring& ring, long long precision, std::vector<Elem> coeffs)
      : ring_(ring), prec_(check_prec(precision)), c_(std::move(coeffs)) {
    if (static_cast<long long>(c_.size()) != prec_ - 1)
      throw parameter_domain_error("Series: coefficient count does not match precision");
  }

  static Series identity(const Ring& ring, long long precision) {
    return Series(ring, precision);
  }

  long long precision() const { return prec_; }
  const Ring& ring() const { return ring_; }

  // a_i for 2 <= i <= N
  const Elem& coeff(long long i) const {
    if (i < 2 || i > prec_)
      throw parameter_domain_error("Series: coefficient index out of range");
    return c_[static_cast<std::size_t>(i - 2)];
  }

  Series truncated(long long m) const {
    if (m > prec_) throw parameter_domain_error("Series: cannot raise precision");
    std::vector<Elem> v(c_.begin(), c_.begin() + (m - 1));
    return Series(ring_, m, std::move(v));
  }

  bool operator==(const Series& o) const {
    return ring_ == o.ring_ && prec_ == o.prec_ && c_ == o.c_;
  }

 private:
  static long long check_prec(long long n) {
    if (n < 1) throw parameter_domain_error("Series: precision must be positive");
    return n;
  }

  Ring ring_;
  long long prec_;
  std::vector<Elem> c_;
};

using FpSeries = Series<PrimeField>;
using PolySeries = Series<FpPolyRing>;

namespace detail {

// Truncated product of coefficient tables indexed 1..N; va, vb are known
// valuations (entries below them are zero).
template <class Ring>
std::vector<typename Ring::Elem> mul_trunc(const std::vector<typename Ring::Elem>& a,
                                           long long va,
                                           const std::vector<typename Ring::Elem>& b,
                                           long long vb, long long N, const Ring& R) {
  std::vector<typename Ring::Elem> c(static_cast<std::size_t>(N + 1), R.zero());
  for (long long i = va; i + vb <= N; ++i) {
    if (coeff_is_zero(a[static_cast<std::size_t>(i)])) continue;
    for (long long j = vb; i + j <= N; ++j) {
      if (coeff_is_zero(b[static_cast<std::size_t>(j)])) continue;
      c[static_cast<std::size_t>(i + j)] =
          c[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  return c;
}

template <class Ring>
std::vector<typename Ring::Elem> coeff_table(const Series<Ring>& f, long long N) {
  std::vector<typename Ring::Elem> t(static_cast<std::size_t>(N + 1), f.ring().zero());
  t[1] = f.ring().one();
  for (long long i = 2; i <= N; ++i) t[static_cast<std::size_t>(i)] = f.coeff(i);
  return t;
}

}  // namespace detail

// Group law (f g)(x) = f(g(x)), truncated at min precision.  The coefficient
// of x^i in the result depends only on coefficients of index <= i in both
// inputs.
template <class Ring>
Series<Ring> compose(const Series<Ring>& f, const Series<Ring>& g) {
  if (!(f.ring() == g.ring()))
    throw ring_mismatch_error("compose: operands over different coefficient rings");
  const long long N = std::min(f.precision(), g.precision());
  const Ring& R = f.ring();
  auto G = detail::coeff_table(g.truncated(N), N);

  std::vector<typename Ring::Elem> res = G;  // the i = 1 term of sum a_i g^i
  std::vector<typename Ring::Elem> pw = G;
  for (long long i = 2; i <= N; ++i) {
    pw = detail::mul_trunc(pw, i - 1, G, 1, N, R);
    const auto& ai = f.coeff(i);
    if (coeff_is_zero(ai)) continue;
    for (long long m = i; m <= N; ++m) {
      if (coeff_is_zero(pw[static_cast<std::size_t>(m)])) continue;
      res[static_cast<std::size_t>(m)] = res[static_cast<std::size_t>(m)] + ai * pw[static_cast<std::size_t>(m)];
    }
  }
  std::vector<typename Ring::Elem> out(res.begin() + 2, res.end());
  return Series<Ring>(R, N, std::move(out));
}

// Group inverse by coefficient back-substitution against the stored powers of
// f.  Works over any coefficient ring (no division needed: the leading
// coefficient is 1).
template <class Ring>
Series<Ring> inverse(const Series<Ring>& f) {
  const long long N = f.precision();
  const Ring& R = f.ring();
  auto F = detail::coeff_table(f, N);

  // P[i] = coefficients of f^i (as a plain truncated series product)
  std::vector<std::vector<typename Ring::Elem>> P(static_cast<std::size_t>(N + 1));
  P[1] = F;
  for (long long i = 2; i <= N; ++i)
    P[static_cast<std::size_t>(i)] = detail::mul_trunc(P[static_cast<std::size_t>(i - 1)], i - 1, F, 1, N, R);

  std::vector<typename Ring::Elem> b(static_cast<std::size_t>(N + 1), R.zero());
  b[1] = R.one();
  for (long long m = 2; m <= N; ++m) {
    typename Ring::Elem s = R.zero();
    for (long long i = 1; i < m; ++i) {
      if (coeff_is_zero(b[static_cast<std::size_t>(i)])) continue;
      const auto& pim = P[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
      if (coeff_is_zero(pim)) continue;
      s = s + b[static_cast<std::size_t>(i)] * pim;
    }
    b[static_cast<std::size_t>(m)] = -s;
  }
  std::vector<typename Ring::Elem> out(b.begin() + 2, b.end());
  return Series<Ring>(R, N, std::move(out));
}

// m-fold composition power by binary powering; negative m goes through the
// inverse, m = 0 is the identity.
template <class Ring>
Series<Ring> group_pow(const Series<Ring>& f, long long m) {
  const Ring& R = f.ring();
  const long long N = f.precision();
  if (m == 0) return Series<Ring>::identity(R, N);
  Series<Ring> base = m < 0 ? inverse(f) : f;
  unsigned long long e = m < 0 ? static_cast<unsigned long long>(-m) : static_cast<unsigned long long>(m);
  Series<Ring> acc = Series<Ring>::identity(R, N);
  while (e) {
    if (e & 1) acc = compose(acc, base);
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return acc;
}

// Same power by m-fold iterated composition; kept separate as a cross-check
// route against group_pow.
template <class Ring>
Series<Ring> group_pow_iterated(const Series<Ring>& f, long long m) {
  const Ring& R = f.ring();
  const long long N = f.precision();
  if (m == 0) return Series<Ring>::identity(R, N);
  Series<Ring> base = m < 0 ? inverse(f) : f;
  long long e = m < 0 ? -m : m;
  Series<Ring> acc = base;
  for (long long i = 1; i < e; ++i) acc = compose(acc, base);
  return acc;
}

// Commutator f^{-1} g^{-1} f g; with the substitution product this is
// x -> f^{-1}(g^{-1}(f(g(x)))).
template <class Ring>
Series<Ring> commutator(const Series<Ring>& f, const Series<Ring>& g) {
  if (!(f.ring() == g.ring()))
    throw ring_mismatch_error("commutator: operands over different coefficient rings");
  const long long N = std::min(f.precision(), g.precision());
  auto fN = f.truncated(N);
  auto gN = g.truncated(N);
  return compose(inverse(fN), compose(inverse(gN), compose(fN, gN)));
}

template <class Ring>
DepthResult depth(const Series<Ring>& f) {
  for (long long i = 2; i <= f.precision(); ++i)
    if (!coeff_is_zero(f.coeff(i))) return DepthResult::exact(i - 1);
  return DepthResult::at_least(f.precision());
}

namespace detail {
inline std::string coeff_text(const Fp& c) { return std::to_string(c.value()); }
template <class C>
std::string coeff_text(const MultiPoly<C>& q) {
  return "(" + q.str() + ")";
}
}  // namespace detail

// Text form "x + c*x^e + ... + O(x^{N+1})", terms in increasing exponent
// order, zero terms omitted.
template <class Ring>
std::string to_string(const Series<Ring>& s) {
  std::string out = "x";
  for (long long i = 2; i <= s.precision(); ++i) {
    const auto& c = s.coeff(i);
    if (coeff_is_zero(c)) continue;
    out += " + " + detail::coeff_text(c) + "*x^" + std::to_string(i);
  }
  out += " + O(x^" + std::to_string(s.precision() + 1) + ")";
  return out;
}

// Exact inverse of to_string for F_p coefficients.
inline FpSeries parse_series(const std::string& text, const PrimeField& F) {
  std::vector<std::pair<long long, Fp>> terms;
  long long order_prec = -1;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> parse_error {
    return parse_error("parse_series: " + why + " at offset " + std::to_string(pos));
  };
  auto skip_ws = [&]() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> long long {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw fail("expected integer");
    return std::stoll(text.substr(start, pos - start));
  };
  auto expect = [&](const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) != 0) throw fail("expected '" + tok + "'");
    pos += tok.size();
  };

  expect("x");
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    expect("+");
    skip_ws();
    if (pos < text.size() && text[pos] == 'O') {
      expect("O");
      expect("(");
      expect("x");
      expect("^");
      long long m = read_int();
      expect(")");
      order_prec = m - 1;
      skip_ws();
      break;
    }
    long long c = read_int();
    expect("*");
    expect("x");
    expect("^");
    long long e = read_int();
    if (e < 2) throw fail("exponent below 2");
    if (!terms.empty() && terms.back().first >= e) throw fail("exponents not increasing");
    terms.emplace_back(e, F.from(c));
  }
  if (pos != text.size()) throw fail("trailing input");
  if (order_prec < 1) throw fail("missing order term");
  std::vector<Fp> coeffs(static_cast<std::size_t>(order_prec - 1), F.zero());
  for (const auto& [e, c] : terms) {
    if (e > order_prec) throw fail("term exceeds stated precision");
    coeffs[static_cast<std::size_t>(e - 2)] = c;
  }
  return FpSeries(F, order_prec, std::move(coeffs));
}

}  // namespace nott
