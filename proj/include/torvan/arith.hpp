#ifndef TORVAN_ARITH_HPP
#define TORVAN_ARITH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "torvan/error.hpp"

namespace torvan {

// Default prime for big experiments; large enough that random bad-locus hits
// are negligible, small enough that p^2 fits in 64 bits.
inline constexpr std::uint32_t kDefaultPrime = 32003;

// Field descriptor: the rationals, or a prime field F_p with p < 2^31.
// Cheap value type; elements carry one so mixed-context operations can be
// rejected.
class Field {
public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t p);  // checks primality by trial division

  bool is_rationals() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }  // 0 for Q

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

  std::string str() const;

private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

// Immutable exact field element. Rationals are arbitrary-precision (GMP,
// kept canonical: denominator > 0, gcd = 1, zero is 0/1); prime-field values
// are least nonnegative residues.
class FieldElem {
public:
  FieldElem() : field_(Field::rationals()), v_(std::int64_t{0}) {}

  static FieldElem zero(const Field& f);
  static FieldElem one(const Field& f);
  static FieldElem from_int(const Field& f, long long n);
  static FieldElem rational(const mpq_class& q);           // canonicalizes
  static FieldElem residue(const Field& f, long long n);   // reduces mod p
  // Parses "a", "-a" or "a/b"; for F_p the value is reduced mod p.
  static FieldElem parse(const Field& f, const std::string& text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  // Rational accessors (rationals only).
  mpz_class numerator() const;
  mpz_class denominator() const;
  // Prime-field accessor (prime fields only): value in [0, p).
  std::uint32_t residue_value() const;

  FieldElem operator-() const;
  FieldElem inverse() const;  // throws Error on zero

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  FieldElem pow(long long e) const;  // e < 0 inverts first

  // "a/b" for rationals (omitting "/1"), least nonnegative residue for F_p.
  std::string str() const;

private:
  FieldElem(const Field& f, std::int64_t v) : field_(f), v_(v) {}
  FieldElem(const Field& f, mpq_class q) : field_(f), v_(std::move(q)) {}

  std::int64_t fp() const { return std::get<std::int64_t>(v_); }
  const mpq_class& q() const { return std::get<mpq_class>(v_); }

  Field field_;
  std::variant<std::int64_t, mpq_class> v_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& e);

// Throws on mismatched contexts; every binary operation goes through this.
void require_same_field(const FieldElem& a, const FieldElem& b);

}  // namespace torvan

#endif
