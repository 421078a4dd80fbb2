#include "sheafcore/scalar.hpp"

#include <cctype>

#include "sheafcore/detail/arith.hpp"
#include "sheafcore/error.hpp"

namespace sheafcore {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw ParseError("malformed scalar '" + std::string(text) + "'");
  std::string digits(text.front() == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

std::uint32_t reduce_mod(const Integer& v, std::uint32_t p) {
  Integer r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  if (!(a.coefficients() == b.coefficients()))
    throw KindMismatch("scalar kinds differ: " + a.coefficients().tag() + " vs " +
                       b.coefficients().tag());
  switch (a.coefficients().kind()) {
    case ScalarKind::rational:
      return Scalar(Rational(op(a.as_rational(), b.as_rational())));
    case ScalarKind::integer:
      return Scalar(Integer(op(a.as_integer(), b.as_integer())));
    case ScalarKind::prime_field: {
      Integer r = op(Integer(a.as_residue()), Integer(b.as_residue()));
      return Scalar::residue(a.coefficients(), reduce_mod(r, a.coefficients().modulus()));
    }
  }
  throw KindMismatch("unreachable");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Coefficients Coefficients::integers() { return {ScalarKind::integer, 0}; }

Coefficients Coefficients::prime_field(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw PreconditionError("GF(p) requires a prime p < 2^31, got " + std::to_string(p));
  return {ScalarKind::prime_field, p};
}

Coefficients Coefficients::parse(std::string_view tag) {
  if (tag == "Q") return rationals();
  if (tag == "Z") return integers();
  if (tag.starts_with("GF:")) {
    auto digits = tag.substr(3);
    if (!all_digits(digits) || digits.size() > 10)
      throw ParseError("malformed field tag '" + std::string(tag) + "'");
    std::uint64_t p = std::stoull(std::string(digits));
    if (p >= (1ull << 31) || !is_prime(p))
      throw ParseError("field tag '" + std::string(tag) + "' needs a prime below 2^31");
    return prime_field(static_cast<std::uint32_t>(p));
  }
  throw ParseError("unknown field tag '" + std::string(tag) + "' (expected Q, Z or GF:<p>)");
}

std::string Coefficients::tag() const {
  switch (kind_) {
    case ScalarKind::rational:
      return "Q";
    case ScalarKind::integer:
      return "Z";
    case ScalarKind::prime_field:
      return "GF:" + std::to_string(modulus_);
  }
  return "?";
}

Scalar::Scalar(Coefficients coeffs, long value) : coeffs_(coeffs) {
  switch (coeffs.kind()) {
    case ScalarKind::rational:
      value_ = Rational(value);
      break;
    case ScalarKind::integer:
      value_ = Integer(value);
      break;
    case ScalarKind::prime_field:
      value_ = detail::ModArith{coeffs.modulus()}.from_long(value);
      break;
  }
}

Scalar::Scalar(Rational value) : coeffs_(Coefficients::rationals()) {
  value.canonicalize();
  value_ = std::move(value);
}

Scalar::Scalar(Integer value)
    : coeffs_(Coefficients::integers()), value_(std::move(value)) {}

Scalar Scalar::residue(Coefficients coeffs, std::uint32_t value) {
  Scalar s(coeffs, 0);
  s.value_ = value % coeffs.modulus();
  return s;
}

Scalar Scalar::parse(Coefficients coeffs, std::string_view text) {
  auto slash = text.find('/');
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = 1;
  if (slash != std::string_view::npos) {
    auto den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("malformed scalar '" + std::string(text) + "'");
    den = Integer(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  switch (coeffs.kind()) {
    case ScalarKind::rational: {
      Rational q(num, den);
      return Scalar(std::move(q));
    }
    case ScalarKind::integer:
      if (den != 1) throw ParseError("fraction '" + std::string(text) + "' over Z");
      return Scalar(std::move(num));
    case ScalarKind::prime_field: {
      detail::ModArith f{coeffs.modulus()};
      auto d = reduce_mod(den, coeffs.modulus());
      if (d == 0)
        throw ParseError("denominator of '" + std::string(text) + "' vanishes mod " +
                         std::to_string(coeffs.modulus()));
      return residue(coeffs, f.mul(reduce_mod(num, coeffs.modulus()), f.inv(d)));
    }
  }
  throw ParseError("unreachable");
}

bool Scalar::is_zero() const {
  switch (coeffs_.kind()) {
    case ScalarKind::rational:
      return sgn(as_rational()) == 0;
    case ScalarKind::integer:
      return sgn(as_integer()) == 0;
    case ScalarKind::prime_field:
      return as_residue() == 0;
  }
  return false;
}

std::string Scalar::str() const {
  switch (coeffs_.kind()) {
    case ScalarKind::rational:
      return as_rational().get_str();
    case ScalarKind::integer:
      return as_integer().get_str();
    case ScalarKind::prime_field:
      return std::to_string(as_residue());
  }
  return {};
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}

Scalar Scalar::operator-() const { return Scalar(coeffs_, 0) - *this; }

Scalar Scalar::inverse() const {
  if (!coeffs_.is_field()) throw KindMismatch("no inverses over Z");
  if (is_zero()) throw PreconditionError("inverse of zero");
  if (coeffs_.kind() == ScalarKind::rational) return Scalar(Rational(1 / as_rational()));
  return residue(coeffs_, detail::ModArith{coeffs_.modulus()}.inv(as_residue()));
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.coeffs_ == b.coeffs_ && a.value_ == b.value_;
}

}  // namespace sheafcore
