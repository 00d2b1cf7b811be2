#include "torvan/arith.hpp"

#include <ostream>

namespace torvan {

namespace {

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_reduce(long long n, std::uint32_t p) {
  std::int64_t r = n % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return r;
}

// Extended Euclid; requires 0 < a < p.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = a, r = p;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  std::int64_t inv = old_s % p;
  if (inv < 0) inv += p;
  return inv;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31))
    throw ValidationError("prime field modulus must be < 2^31: " + std::to_string(p));
  if (!is_prime_u32(p))
    throw ValidationError("modulus is not prime: " + std::to_string(p));
  return Field(p);
}

std::string Field::str() const {
  return is_rationals() ? "Q" : "F" + std::to_string(p_);
}

void require_same_field(const FieldElem& a, const FieldElem& b) {
  if (a.field() != b.field())
    throw Error("field context mismatch: " + a.field().str() + " vs " + b.field().str());
}

FieldElem FieldElem::zero(const Field& f) { return from_int(f, 0); }
FieldElem FieldElem::one(const Field& f) { return from_int(f, 1); }

FieldElem FieldElem::from_int(const Field& f, long long n) {
  if (f.is_prime_field()) return FieldElem(f, mod_reduce(n, f.characteristic()));
  mpq_class q(static_cast<long>(n));
  return FieldElem(f, std::move(q));
}

FieldElem FieldElem::rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return FieldElem(Field::rationals(), std::move(c));
}

FieldElem FieldElem::residue(const Field& f, long long n) {
  if (!f.is_prime_field()) throw Error("residue() requires a prime field");
  return FieldElem(f, mod_reduce(n, f.characteristic()));
}

FieldElem FieldElem::parse(const Field& f, const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    mpz_class n(text);
    if (f.is_prime_field()) {
      mpz_class r = n % f.characteristic();
      if (r < 0) r += f.characteristic();
      return FieldElem(f, static_cast<std::int64_t>(r.get_si()));
    }
    return rational(mpq_class(n));
  }
  mpz_class num(text.substr(0, slash)), den(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in '" + text + "'");
  if (f.is_prime_field()) {
    FieldElem n = residue(f, 0), d = residue(f, 0);
    mpz_class rn = num % f.characteristic(), rd = den % f.characteristic();
    if (rn < 0) rn += f.characteristic();
    if (rd < 0) rd += f.characteristic();
    n = FieldElem(f, static_cast<std::int64_t>(rn.get_si()));
    d = FieldElem(f, static_cast<std::int64_t>(rd.get_si()));
    return n / d;
  }
  return rational(mpq_class(num) / mpq_class(den));
}

bool FieldElem::is_zero() const {
  return field_.is_prime_field() ? fp() == 0 : q() == 0;
}

bool FieldElem::is_one() const {
  return field_.is_prime_field() ? fp() == 1 : q() == 1;
}

mpz_class FieldElem::numerator() const {
  if (!field_.is_rationals()) throw Error("numerator() requires rationals");
  return q().get_num();
}

mpz_class FieldElem::denominator() const {
  if (!field_.is_rationals()) throw Error("denominator() requires rationals");
  return q().get_den();
}

std::uint32_t FieldElem::residue_value() const {
  if (!field_.is_prime_field()) throw Error("residue_value() requires a prime field");
  return static_cast<std::uint32_t>(fp());
}

FieldElem FieldElem::operator-() const {
  if (field_.is_prime_field()) {
    std::int64_t v = fp();
    return FieldElem(field_, v == 0 ? 0 : field_.characteristic() - v);
  }
  return FieldElem(field_, mpq_class(-q()));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error("division by zero in " + field_.str());
  if (field_.is_prime_field())
    return FieldElem(field_, mod_inverse(fp(), field_.characteristic()));
  return FieldElem(field_, mpq_class(1) / q());
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  if (a.field_.is_prime_field()) {
    std::int64_t s = a.fp() + b.fp();
    std::int64_t p = a.field_.characteristic();
    if (s >= p) s -= p;
    return FieldElem(a.field_, s);
  }
  return FieldElem(a.field_, mpq_class(a.q() + b.q()));
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  if (a.field_.is_prime_field()) {
    std::int64_t s = a.fp() - b.fp();
    if (s < 0) s += a.field_.characteristic();
    return FieldElem(a.field_, s);
  }
  return FieldElem(a.field_, mpq_class(a.q() - b.q()));
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same_field(a, b);
  if (a.field_.is_prime_field()) {
    // p < 2^31, so the product fits in int64.
    std::int64_t s = (a.fp() * b.fp()) % a.field_.characteristic();
    return FieldElem(a.field_, s);
  }
  return FieldElem(a.field_, mpq_class(a.q() * b.q()));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.field() != b.field()) return false;
  return a.field_.is_prime_field() ? a.fp() == b.fp() : a.q() == b.q();
}

FieldElem FieldElem::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem acc = one(field_);
  FieldElem base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string FieldElem::str() const {
  if (field_.is_prime_field()) return std::to_string(fp());
  if (q().get_den() == 1) return q().get_num().get_str();
  return q().get_num().get_str() + "/" + q().get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const FieldElem& e) { return os << e.str(); }

}  // namespace torvan
