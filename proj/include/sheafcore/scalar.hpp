#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace sheafcore {

using Rational = mpq_class;
using Integer = mpz_class;

enum class ScalarKind { rational, prime_field, integer };

/// Coefficient domain of a computation: Q, GF(p) or Z.
class Coefficients {
 public:
  Coefficients() = default;

  static Coefficients rationals() { return {}; }
  static Coefficients integers();
  /// Throws PreconditionError unless `p` is a prime below 2^31.
  static Coefficients prime_field(std::uint32_t p);
  /// Parses the document tags "Q", "Z" and "GF:<p>".
  static Coefficients parse(std::string_view tag);

  ScalarKind kind() const noexcept { return kind_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_field() const noexcept { return kind_ != ScalarKind::integer; }
  std::string tag() const;

  bool operator==(const Coefficients&) const = default;

 private:
  Coefficients(ScalarKind kind, std::uint32_t modulus)
      : kind_(kind), modulus_(modulus) {}

  ScalarKind kind_ = ScalarKind::rational;
  std::uint32_t modulus_ = 0;
};

bool is_prime(std::uint64_t n);

/// A single coefficient value tagged with its domain.
class Scalar {
 public:
  Scalar(Coefficients coeffs, long value);
  Scalar(Rational value);
  Scalar(Integer value);
  static Scalar residue(Coefficients coeffs, std::uint32_t value);

  /// Accepts "a" or "a/b". Prime-field fractions are reduced modulo p;
  /// integer coefficients reject fractions.
  static Scalar parse(Coefficients coeffs, std::string_view text);

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const;
  /// Canonical text form: reduced "a/b" (or "a"), residues in [0, p).
  std::string str() const;

  const Rational& as_rational() const { return std::get<Rational>(value_); }
  std::uint32_t as_residue() const { return std::get<std::uint32_t>(value_); }
  const Integer& as_integer() const { return std::get<Integer>(value_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  /// Multiplicative inverse; fields only, nonzero values only.
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  friend class Matrix;
  Coefficients coeffs_;
  std::variant<Rational, std::uint32_t, Integer> value_;
};

}  // namespace sheafcore
