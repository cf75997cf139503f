#pragma once

// Exact coefficient domains: arbitrary-precision rationals and odd prime
// fields. Both are exposed through a small "field" policy object so that
// polynomial and series code is written once.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "charclass/errors.hpp"

namespace charclass {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw NonInvertible("zero denominator");
  return Rational(num, den);
}

inline std::string to_string(const BigInt& n) { return n.str(); }

// "n" or "n/d", denominator always positive.
inline std::string to_string(const Rational& q) {
  const BigInt d = denominator_of(q);
  if (d == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + d.str();
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void require_odd_prime(std::uint64_t p) {
  if (p == 2) throw InvalidArgument("characteristic 2 is not supported");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not a prime");
}

// Largest e with p^e | n; n must be nonzero.
inline int valuation(BigInt n, std::uint64_t p) {
  if (n == 0) throw InvalidArgument("valuation of zero");
  if (n < 0) n = -n;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline int valuation(const Rational& q, std::uint64_t p) {
  return valuation(numerator_of(q), p) - valuation(denominator_of(q), p);
}

// Element of F_p for an odd prime p. The prime travels with the value so that
// mixing fields is caught at the operation that mixes them.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t prime, std::int64_t value) : prime_(prime) {
    const auto p = static_cast<std::int64_t>(prime);
    value_ = static_cast<std::uint32_t>(((value % p) + p) % p);
  }

  std::uint32_t prime() const { return prime_; }
  std::uint32_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Fp inverse() const {
    if (value_ == 0) throw NonInvertible("zero has no inverse in F_" + std::to_string(prime_));
    return pow(prime_ - 2);
  }

  Fp pow(std::uint64_t e) const {
    Fp base = *this;
    Fp acc(prime_, 1);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  Fp& operator+=(const Fp& o) {
    check(o);
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} + o.value_) % prime_);
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check(o);
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} + prime_ - o.value_) % prime_);
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check(o);
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} * o.value_) % prime_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return Fp(a.prime_, -static_cast<std::int64_t>(a.value_)); }
  friend bool operator==(const Fp& a, const Fp& b) { return a.prime_ == b.prime_ && a.value_ == b.value_; }

 private:
  void check(const Fp& o) const {
    if (o.prime_ != prime_) throw InvalidArgument("mixed prime fields");
  }

  std::uint32_t prime_ = 3;
  std::uint32_t value_ = 0;
};

// Field policies. A policy knows how to build its constants and how to
// print values; polynomials and series carry one by value.

struct RationalField {
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t n) const { return n; }
  value_type from_rational(const Rational& q) const { return q; }
  bool is_zero(const value_type& v) const { return v == 0; }
  bool is_negative(const value_type& v) const { return v < 0; }
  std::string format(const value_type& v) const { return to_string(v); }
  std::string name() const { return "Q"; }
  std::uint32_t characteristic() const { return 0; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

struct PrimeField {
  using value_type = Fp;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t p) : prime(p) { require_odd_prime(p); }

  value_type zero() const { return Fp(prime, 0); }
  value_type one() const { return Fp(prime, 1); }
  value_type from_int(std::int64_t n) const { return Fp(prime, n); }
  // Reduction of a p-integral rational; a denominator divisible by p means the
  // class is not defined over Z_(p).
  value_type from_rational(const Rational& q) const {
    const BigInt num = numerator_of(q) % prime;
    const BigInt den = denominator_of(q) % prime;
    if (den == 0)
      throw NonIntegralClass("denominator of " + to_string(q) + " is divisible by " +
                             std::to_string(prime));
    return Fp(prime, num.convert_to<std::int64_t>()) / Fp(prime, den.convert_to<std::int64_t>());
  }
  bool is_zero(const value_type& v) const { return v.is_zero(); }
  bool is_negative(const value_type&) const { return false; }
  std::string format(const value_type& v) const { return std::to_string(v.value()); }
  std::string name() const { return "F" + std::to_string(prime); }
  std::uint32_t characteristic() const { return prime; }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.prime == b.prime; }

  std::uint32_t prime = 3;
};

}  // namespace charclass
