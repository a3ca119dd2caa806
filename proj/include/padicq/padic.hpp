#pragma once

/**
 * Fixed absolute precision arithmetic in Z_p.
 *
 * An element is a canonical residue r in [0, p^N). Valuations saturate at N:
 * a zero residue means "divisible by at least p^N", so every comparison stays
 * total and precision loss only ever shows up as a smaller agreement exponent.
 */

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "padicq/errors.hpp"

namespace padicq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr int kDefaultPrecision = 12;

bool is_prime(u64 n);

// Exact integer power; throws InvalidParameter on overflow of u64.
u64 ipow(u64 base, unsigned exp);

// p^e as an exact rational, e may be negative.
Rational rational_ppow(u64 p, int e);

class PadicContext {
 public:
  PadicContext(u64 p, int precision = kDefaultPrecision);

  u64 prime() const { return p_; }
  int precision() const { return n_; }
  // p^N
  u64 modulus() const { return mod_; }
  // p^k for 0 <= k <= N.
  u64 power(int k) const;

  bool operator==(const PadicContext& o) const { return p_ == o.p_ && n_ == o.n_; }

  // a * b mod p^N for reduced a, b.
  u64 mulmod(u64 a, u64 b) const;

 private:
  u64 p_;
  int n_;
  u64 mod_;
  long double inv_mod_;
};

class PadicInt {
 public:
  PadicInt(const PadicContext& ctx, u64 residue);

  static PadicInt zero(const PadicContext& ctx) { return {ctx, 0}; }
  static PadicInt one(const PadicContext& ctx) { return {ctx, 1 % ctx.modulus()}; }

  const PadicContext& context() const { return ctx_; }
  u64 residue() const { return r_; }

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  PadicInt& operator+=(const PadicInt& o) { return *this = *this + o; }
  PadicInt& operator-=(const PadicInt& o) { return *this = *this - o; }
  PadicInt& operator*=(const PadicInt& o) { return *this = *this * o; }

  // Equality at working precision; contexts must match.
  bool operator==(const PadicInt& o) const;

  bool is_zero() const { return r_ == 0; }
  bool is_unit() const { return r_ % ctx_.prime() != 0; }

  // Largest v <= N with p^v | r.
  int valuation() const;
  // p^-valuation; a zero residue reports p^-N.
  Rational norm() const;

  // Two-sided inverse of a unit. Throws NonUnit otherwise.
  PadicInt inv() const;
  // Square-and-multiply; negative exponents require a unit.
  PadicInt pow(i64 e) const;

  // Exact division by p^k: r / p^k, valid only if valuation() >= k. The
  // result is known modulo p^(N-k); the top k digits are filled with zeros.
  PadicInt shift_down(int k) const;

 private:
  struct Reduced {};
  PadicInt(const PadicContext& ctx, u64 residue, Reduced) : ctx_(ctx), r_(residue) {}

  void check_same(const PadicInt& o) const;

  PadicContext ctx_;
  u64 r_;
};

PadicInt from_int(i64 i, const PadicContext& ctx);
PadicInt from_big(const BigInt& i, const PadicContext& ctx);
// s * t^-1. Throws NonUnitDenominator if p | t.
PadicInt from_ratio(i64 s, i64 t, const PadicContext& ctx);
PadicInt from_rational(const Rational& x, const PadicContext& ctx);

PadicInt inv(const PadicInt& x);
PadicInt pow(const PadicInt& x, i64 e);
int valuation(const PadicInt& x);
Rational norm(const PadicInt& x);
// valuation(x - y); N means equal at working precision.
int agreement_exponent(const PadicInt& x, const PadicInt& y);
// agreement_exponent(x, y) >= k; requires 0 <= k <= N.
bool congruent(const PadicInt& x, const PadicInt& y, int k);

// Literal formats: "s/t", "k", or little-endian digits "d0.d1.d2_p".
PadicInt parse_literal(std::string_view text, const PadicContext& ctx);
// All N little-endian digits, e.g. "1.2.0_3".
std::string to_digits(const PadicInt& x);
// "<digits> (<residue>)"
std::string to_literal(const PadicInt& x);

std::string rational_to_string(const Rational& x);

}  // namespace padicq
