#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nlie {

enum class FieldKind { rationals, prime };

/// The base field: either Q or F_p for a prime p < 2^32.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p);

  std::uint64_t characteristic() const { return kind == FieldKind::rationals ? 0 : p; }

  /// "q" or "fp:P".
  std::string to_string() const;
  static FieldSpec parse(std::string_view text);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

/// An exact element of Q (lowest terms, positive denominator) or of F_p
/// (residue in [0,p)). Arithmetic between different fields throws.
class Scalar {
 public:
  /// Rational zero; exists so Scalars can live in standard containers.
  Scalar() = default;
  Scalar(FieldSpec field, long value);
  Scalar(FieldSpec field, const mpq_class& value);

  static Scalar zero(FieldSpec field) { return Scalar(field, 0L); }
  static Scalar one(FieldSpec field) { return Scalar(field, 1L); }
  /// Parses "a", "-a", "a/b" (b must be invertible in the field).
  static Scalar parse(FieldSpec field, std::string_view text);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar inverse() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Multiplication by a machine integer, reduced into the field.
  Scalar times(long k) const;

  bool operator==(const Scalar& rhs) const;

  /// Exact rational value; throws for prime fields.
  const mpq_class& rational() const;
  /// Residue in [0,p); throws for Q.
  std::uint64_t residue() const;

  std::string to_string() const;

 private:
  void check_same_field(const Scalar& rhs) const;

  FieldSpec field_{};
  mpq_class q_{};
  std::uint64_t r_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace nlie
