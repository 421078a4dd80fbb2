#pragma once

// Arithmetic policies shared by the dense and sparse kernels. Each policy
// exposes the same static-looking interface so that elimination code can be
// written once as a template.

#include <cstdint>
#include <utility>

#include "sheafcore/error.hpp"
#include "sheafcore/scalar.hpp"

namespace sheafcore::detail {

struct RationalArith {
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  value_type from_long(long v) const { return v; }
};

struct ModArith {
  using value_type = std::uint32_t;
  std::uint32_t p;

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} + b) % p);
  }
  value_type sub(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} + p - b) % p);
  }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    // p is prime: a^(p-2)
    std::uint64_t result = 1, base = a % p;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
    }
    return static_cast<value_type>(result);
  }
  value_type from_long(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
};

struct IntegerArith {
  using value_type = Integer;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type from_long(long v) const { return v; }
};

/// Calls `fn` with the arithmetic policy of a field; integers are rejected.
template <class Fn>
decltype(auto) with_field(const Coefficients& coeffs, Fn&& fn) {
  switch (coeffs.kind()) {
    case ScalarKind::rational:
      return fn(RationalArith{});
    case ScalarKind::prime_field:
      return fn(ModArith{coeffs.modulus()});
    case ScalarKind::integer:
      break;
  }
  throw KindMismatch("operation requires field coefficients, got Z");
}

/// Calls `fn` with the arithmetic policy for any coefficient kind.
template <class Fn>
decltype(auto) with_arith(const Coefficients& coeffs, Fn&& fn) {
  if (coeffs.kind() == ScalarKind::integer) return fn(IntegerArith{});
  return with_field(coeffs, std::forward<Fn>(fn));
}

}  // namespace sheafcore::detail
