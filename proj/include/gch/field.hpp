#pragma once

// Coefficient specifications and the exact fields used by the linear algebra.
//
// A Field is a small value type with an associated Element type and the
// operations zero/one/from_int/add/sub/mul/neg/div/is_zero.  Elimination code
// is written once against that surface and instantiated for
//   * PrimeField         (F_p, p < 2^32)
//   * RationalField      (Q with checked 64-bit numerators/denominators)
//   * BigRationalField   (Q with arbitrary precision)
// RationalField throws ArithmeticOverflow instead of wrapping; with_field()
// catches that and reruns the computation over BigRationalField.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gch/error.hpp"

namespace gch {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Which coefficients a computation uses: Q, F_p, or Z.
struct Coeff {
  enum class Kind { Rational, Prime, Integer };
  Kind kind = Kind::Rational;
  std::uint64_t prime = 0;

  static Coeff rational() { return {Kind::Rational, 0}; }
  static Coeff integer() { return {Kind::Integer, 0}; }
  static Coeff mod(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 32)) {
      throw InvalidArgument("prime modulus must lie in [2, 2^32): " + std::to_string(p));
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw InvalidArgument("modulus is not prime: " + std::to_string(p));
    }
    return {Kind::Prime, p};
  }

  bool is_field() const { return kind != Kind::Integer; }

  /// Parses "q", "z", or "fp:<p>".
  static Coeff parse(const std::string& text) {
    if (text == "q" || text == "Q") return rational();
    if (text == "z" || text == "Z") return integer();
    if (text.rfind("fp:", 0) == 0) {
      const std::string digits = text.substr(3);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidArgument("malformed coefficient spec: " + text);
      }
      return mod(std::stoull(digits));
    }
    throw InvalidArgument("unknown coefficient spec: " + text);
  }

  std::string str() const {
    switch (kind) {
      case Kind::Rational: return "q";
      case Kind::Integer: return "z";
      case Kind::Prime: return "fp:" + std::to_string(prime);
    }
    return "?";
  }

  friend bool operator==(const Coeff&, const Coeff&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Coeff& c) { return os << c.str(); }

class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {}

  std::uint64_t modulus() const { return p_; }
  Element zero() const { return 0; }
  Element one() const { return 1 % p_; }
  Element from_int(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    return static_cast<Element>(r < 0 ? r + m : r);
  }
  Element from_rational(const BigRational& q) const {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    const BigInt m = p_;
    BigInt n = num % m;
    if (n < 0) n += m;
    BigInt d = den % m;
    if (d == 0) throw InvalidArgument("denominator divisible by the characteristic");
    return mul(static_cast<Element>(n), inv(static_cast<Element>(d)));
  }
  BigRational to_rational(Element a) const { return BigRational(a); }

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element inv(Element a) const {
    if (a == 0) throw InvalidArgument("division by zero in F_p");
    // Fermat: a^(p-2)
    Element result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }

 private:
  std::uint64_t p_;
};

/// Reduced fraction with 64-bit parts; every operation checks for overflow.
struct SmallRational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const SmallRational&, const SmallRational&) = default;
};

class RationalField {
 public:
  using Element = SmallRational;

  Element zero() const { return {0, 1}; }
  Element one() const { return {1, 1}; }
  Element from_int(std::int64_t v) const { return {v, 1}; }
  Element from_rational(const BigRational& q) const {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (boost::multiprecision::abs(num) > kLimit || den > kLimit) throw ArithmeticOverflow();
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
  }
  BigRational to_rational(const Element& a) const { return BigRational(a.num, a.den); }

  Element add(const Element& a, const Element& b) const {
    if (a.den == 1 && b.den == 1) return {checked_add(a.num, b.num), 1};
    const std::int64_t g = std::gcd(a.den, b.den);
    const std::int64_t n =
        checked_add(checked_mul(a.num, b.den / g), checked_mul(b.num, a.den / g));
    return normalize(n, checked_mul(a.den / g, b.den));
  }
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  Element neg(const Element& a) const {
    if (a.num == kMin) throw ArithmeticOverflow();
    return {-a.num, a.den};
  }
  Element mul(const Element& a, const Element& b) const {
    if (a.num == 0 || b.num == 0) return zero();
    if (a.den == 1 && b.den == 1) return {checked_mul(a.num, b.num), 1};
    const std::int64_t g1 = std::gcd(a.num, b.den);
    const std::int64_t g2 = std::gcd(b.num, a.den);
    return normalize(checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1));
  }
  Element inv(const Element& a) const {
    if (a.num == 0) throw InvalidArgument("division by zero in Q");
    if (a.num < 0) {
      if (a.num == kMin) throw ArithmeticOverflow();
      return {-a.den, -a.num};
    }
    return {a.den, a.num};
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return a.num == 0; }

 private:
  static constexpr std::int64_t kMin = INT64_MIN;
  static inline const BigInt kLimit = BigInt(INT64_MAX);

  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow();
    return r;
  }
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow();
    return r;
  }
  static Element normalize(std::int64_t n, std::int64_t d) {
    if (n == 0) return {0, 1};
    if (d < 0) {
      if (n == kMin || d == kMin) throw ArithmeticOverflow();
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    return {n / g, d / g};
  }
};

class BigRationalField {
 public:
  using Element = BigRational;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const { return v; }
  Element from_rational(const BigRational& q) const { return q; }
  BigRational to_rational(const Element& a) const { return a; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (a == 0) throw InvalidArgument("division by zero in Q");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return a * inv(b); }
  bool is_zero(const Element& a) const { return a == 0; }
};

/// Runs fn(field) for the field named by coeff.  Rational computations first
/// try checked 64-bit fractions and transparently rerun with big rationals.
template <class Fn>
decltype(auto) with_field(const Coeff& coeff, Fn&& fn) {
  switch (coeff.kind) {
    case Coeff::Kind::Prime: return fn(PrimeField(coeff.prime));
    case Coeff::Kind::Rational:
      try {
        return fn(RationalField{});
      } catch (const ArithmeticOverflow&) {
        return fn(BigRationalField{});
      }
    case Coeff::Kind::Integer: break;
  }
  throw InvalidArgument("field coefficients required (q or fp:<p>), got " + coeff.str());
}

/// Parses "a", "-a", "a/b" into a rational.
inline BigRational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("-+0123456789") != std::string::npos) {
      throw InvalidArgument("malformed rational: " + text);
    }
    try {
      return BigInt(s);
    } catch (const std::runtime_error&) {
      throw InvalidArgument("malformed rational: " + text);
    }
  };
  if (slash == std::string::npos) return BigRational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidArgument("zero denominator: " + text);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return BigRational(num, den);
}

inline std::string rational_string(const BigRational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

}  // namespace gch
