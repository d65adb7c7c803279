#include "nlie/field.hpp"

#include <ostream>
#include <stdexcept>

namespace nlie {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ULL << 32)) throw std::invalid_argument("prime modulus must be below 2^32");
  if (!is_prime(p)) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
  return FieldSpec{FieldKind::prime, p};
}

std::string FieldSpec::to_string() const {
  return kind == FieldKind::rationals ? std::string("q") : "fp:" + std::to_string(p);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("fp:", 0) == 0) {
    const std::string digits(text.substr(3));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad field spec '" + std::string(text) + "'");
    return prime(std::stoull(digits));
  }
  throw std::invalid_argument("bad field spec '" + std::string(text) + "' (expected q or fp:P)");
}

namespace {

std::uint64_t reduce_signed(long value, std::uint64_t p) {
  const long m = static_cast<long>(p);
  long r = value % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace

Scalar::Scalar(FieldSpec field, long value) : field_(field) {
  if (field_.kind == FieldKind::rationals)
    q_ = value;
  else
    r_ = reduce_signed(value, field_.p);
}

Scalar::Scalar(FieldSpec field, const mpq_class& value) : field_(field) {
  if (field_.kind == FieldKind::rationals) {
    q_ = value;
    q_.canonicalize();
    return;
  }
  const std::uint64_t den = reduce_mpz(value.get_den(), field_.p);
  if (den == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(field_.p));
  r_ = reduce_mpz(value.get_num(), field_.p) * pow_mod(den, field_.p - 2, field_.p) % field_.p;
}

Scalar Scalar::parse(FieldSpec field, std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return Scalar(field, q);
}

bool Scalar::is_zero() const { return field_.kind == FieldKind::rationals ? q_ == 0 : r_ == 0; }

bool Scalar::is_one() const { return field_.kind == FieldKind::rationals ? q_ == 1 : r_ == 1; }

void Scalar::check_same_field(const Scalar& rhs) const {
  if (!(field_ == rhs.field_))
    throw std::invalid_argument("mixed-field arithmetic: " + field_.to_string() + " vs " + rhs.field_.to_string());
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar out = *this;
  if (field_.kind == FieldKind::rationals)
    out.q_ = 1 / q_;
  else
    out.r_ = pow_mod(r_, field_.p - 2, field_.p);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (field_.kind == FieldKind::rationals)
    out.q_ = -q_;
  else
    out.r_ = r_ == 0 ? 0 : field_.p - r_;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.kind == FieldKind::rationals)
    q_ += rhs.q_;
  else
    r_ = (r_ + rhs.r_) % field_.p;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.kind == FieldKind::rationals)
    q_ -= rhs.q_;
  else
    r_ = (r_ + field_.p - rhs.r_) % field_.p;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.kind == FieldKind::rationals)
    q_ *= rhs.q_;
  else
    r_ = r_ * rhs.r_ % field_.p;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

Scalar Scalar::times(long k) const {
  Scalar out = *this;
  if (field_.kind == FieldKind::rationals)
    out.q_ *= k;
  else
    out.r_ = r_ * reduce_signed(k, field_.p) % field_.p;
  return out;
}

bool Scalar::operator==(const Scalar& rhs) const {
  if (!(field_ == rhs.field_)) return false;
  return field_.kind == FieldKind::rationals ? q_ == rhs.q_ : r_ == rhs.r_;
}

const mpq_class& Scalar::rational() const {
  if (field_.kind != FieldKind::rationals) throw std::logic_error("rational() on a prime-field scalar");
  return q_;
}

std::uint64_t Scalar::residue() const {
  if (field_.kind != FieldKind::prime) throw std::logic_error("residue() on a rational scalar");
  return r_;
}

std::string Scalar::to_string() const {
  return field_.kind == FieldKind::rationals ? q_.get_str() : std::to_string(r_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace nlie
