#include "padicq/padic.hpp"

#include <charconv>
#include <limits>
#include <sstream>
#include <vector>

namespace padicq {

namespace {

// Largest modulus accepted: keeps a + b below 2^63 and a * b inside u128.
constexpr u64 kMaxModulus = u64{1} << 62;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

BigInt parse_bigint(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw InvalidLiteral("empty integer");
  BigInt v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw InvalidLiteral("bad digit '" + std::string(1, c) + "'");
    v = v * 10 + (c - '0');
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base)
      throw InvalidParameter("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

Rational rational_ppow(u64 p, int e) {
  BigInt pe = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e < 0 ? -e : e));
  return e >= 0 ? Rational(pe) : Rational(BigInt(1), pe);
}

PadicContext::PadicContext(u64 p, int precision) : p_(p), n_(precision), mod_(1) {
  if (p == 2 || !is_prime(p)) throw InvalidContext("p must be an odd prime, got " + std::to_string(p));
  if (precision < 1) throw InvalidContext("precision must be >= 1");
  for (int i = 0; i < precision; ++i) {
    if (mod_ > kMaxModulus / p)
      throw InvalidContext("p^N does not fit the 62-bit residue representation");
    mod_ *= p;
  }
  inv_mod_ = 1.0L / static_cast<long double>(mod_);
}

// Quotient estimate in 80-bit floating point, then exact correction in
// wrapping 64-bit arithmetic. The estimate is off by at most one for moduli
// below 2^62.
u64 PadicContext::mulmod(u64 a, u64 b) const {
  const auto q = static_cast<u64>(inv_mod_ * a * b);
  const auto r = static_cast<std::int64_t>(a * b - q * mod_);
  const auto m = static_cast<std::int64_t>(mod_);
  return static_cast<u64>(r < 0 ? r + m : r >= m ? r - m : r);
}

u64 PadicContext::power(int k) const {
  if (k < 0 || k > n_) throw InvalidParameter("power index outside [0, N]");
  return ipow(p_, static_cast<unsigned>(k));
}

PadicInt::PadicInt(const PadicContext& ctx, u64 residue) : ctx_(ctx), r_(residue % ctx.modulus()) {}

void PadicInt::check_same(const PadicInt& o) const {
  if (!(ctx_ == o.ctx_)) throw ContextMismatch("operands live in different p-adic contexts");
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
  check_same(o);
  u64 s = r_ + o.r_;
  if (s >= ctx_.modulus()) s -= ctx_.modulus();
  return {ctx_, s, Reduced{}};
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  check_same(o);
  return {ctx_, r_ >= o.r_ ? r_ - o.r_ : r_ + ctx_.modulus() - o.r_, Reduced{}};
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  check_same(o);
  return {ctx_, ctx_.mulmod(r_, o.r_), Reduced{}};
}

PadicInt PadicInt::operator-() const { return {ctx_, r_ == 0 ? 0 : ctx_.modulus() - r_, Reduced{}}; }

bool PadicInt::operator==(const PadicInt& o) const {
  check_same(o);
  return r_ == o.r_;
}

int PadicInt::valuation() const {
  if (r_ == 0) return ctx_.precision();
  int v = 0;
  u64 r = r_;
  while (r % ctx_.prime() == 0) {
    r /= ctx_.prime();
    ++v;
  }
  return v;
}

Rational PadicInt::norm() const { return rational_ppow(ctx_.prime(), -valuation()); }

PadicInt PadicInt::inv() const {
  if (!is_unit()) throw NonUnit("element " + std::to_string(r_) + " is not a unit");
  // Extended Euclid on (r, p^N).
  using i128 = __int128;
  i128 old_r = r_, r = ctx_.modulus();
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  i128 m = ctx_.modulus();
  i128 res = old_s % m;
  if (res < 0) res += m;
  return {ctx_, static_cast<u64>(res)};
}

PadicInt PadicInt::pow(i64 e) const {
  PadicInt base = e < 0 ? inv() : *this;
  u64 k = e < 0 ? static_cast<u64>(-(e + 1)) + 1 : static_cast<u64>(e);
  u64 acc = 1 % ctx_.modulus();
  u64 b = base.r_;
  while (k > 0) {
    if (k & 1) acc = ctx_.mulmod(acc, b);
    b = ctx_.mulmod(b, b);
    k >>= 1;
  }
  return {ctx_, acc, Reduced{}};
}

PadicInt PadicInt::shift_down(int k) const {
  if (k < 0 || k > ctx_.precision()) throw InvalidParameter("shift outside [0, N]");
  if (valuation() < k) throw PrecisionLoss("cannot divide by p^" + std::to_string(k) + " exactly");
  return {ctx_, r_ / ctx_.power(k)};
}

PadicInt from_int(i64 i, const PadicContext& ctx) {
  const auto m = static_cast<i64>(ctx.modulus());
  i64 r = i % m;
  if (r < 0) r += m;
  return {ctx, static_cast<u64>(r)};
}

PadicInt from_big(const BigInt& i, const PadicContext& ctx) {
  BigInt m = ctx.modulus();
  BigInt r = i % m;
  if (r < 0) r += m;
  return {ctx, r.convert_to<u64>()};
}

PadicInt from_ratio(i64 s, i64 t, const PadicContext& ctx) {
  if (t == 0) throw NonUnitDenominator("zero denominator");
  if (t % static_cast<i64>(ctx.prime()) == 0)
    throw NonUnitDenominator("denominator " + std::to_string(t) + " is divisible by p");
  return from_int(s, ctx) * from_int(t, ctx).inv();
}

PadicInt from_rational(const Rational& x, const PadicContext& ctx) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den % ctx.prime() == 0) throw NonUnitDenominator("rational " + rational_to_string(x) + " has p in its denominator");
  return from_big(num, ctx) * from_big(den, ctx).inv();
}

PadicInt inv(const PadicInt& x) { return x.inv(); }
PadicInt pow(const PadicInt& x, i64 e) { return x.pow(e); }
int valuation(const PadicInt& x) { return x.valuation(); }
Rational norm(const PadicInt& x) { return x.norm(); }

int agreement_exponent(const PadicInt& x, const PadicInt& y) { return (x - y).valuation(); }

bool congruent(const PadicInt& x, const PadicInt& y, int k) {
  if (k < 0 || k > x.context().precision()) throw InvalidParameter("congruence level outside [0, N]");
  return agreement_exponent(x, y) >= k;
}

PadicInt parse_literal(std::string_view text, const PadicContext& ctx) {
  text = trim(text);
  if (text.empty()) throw InvalidLiteral("empty literal");
  if (auto us = text.find('_'); us != std::string_view::npos) {
    const std::string_view prime_part = text.substr(us + 1);
    u64 lit_p = 0;
    auto [ptr, ec] = std::from_chars(prime_part.data(), prime_part.data() + prime_part.size(), lit_p);
    if (ec != std::errc{} || ptr != prime_part.data() + prime_part.size())
      throw InvalidLiteral("bad prime suffix in '" + std::string(text) + "'");
    if (lit_p != ctx.prime())
      throw InvalidLiteral("literal is " + std::to_string(lit_p) + "-adic, context is " +
                           std::to_string(ctx.prime()) + "-adic");
    std::string_view digits = text.substr(0, us);
    u64 r = 0;
    u64 place = 1;
    int idx = 0;
    while (true) {
      const auto dot = digits.find('.');
      const std::string_view d = digits.substr(0, dot);
      u64 v = 0;
      auto [dp, dec] = std::from_chars(d.data(), d.data() + d.size(), v);
      if (d.empty() || dec != std::errc{} || dp != d.data() + d.size() || v >= ctx.prime())
        throw InvalidLiteral("bad p-adic digit '" + std::string(d) + "'");
      if (idx < ctx.precision()) {
        r = (r + ctx.mulmod(v, place)) % ctx.modulus();
        place = ctx.mulmod(place, ctx.prime());
      }
      ++idx;
      if (dot == std::string_view::npos) break;
      digits.remove_prefix(dot + 1);
    }
    return {ctx, r};
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt s = parse_bigint(text.substr(0, slash));
    const BigInt t = parse_bigint(text.substr(slash + 1));
    if (t == 0) throw InvalidLiteral("zero denominator");
    return from_rational(Rational(s, t), ctx);
  }
  return from_big(parse_bigint(text), ctx);
}

std::string to_digits(const PadicInt& x) {
  const auto& ctx = x.context();
  std::string out;
  u64 r = x.residue();
  for (int i = 0; i < ctx.precision(); ++i) {
    if (i) out += '.';
    out += std::to_string(r % ctx.prime());
    r /= ctx.prime();
  }
  out += '_';
  out += std::to_string(ctx.prime());
  return out;
}

std::string to_literal(const PadicInt& x) { return to_digits(x) + " (" + std::to_string(x.residue()) + ")"; }

std::string rational_to_string(const Rational& x) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(x);
  if (boost::multiprecision::denominator(x) != 1) os << '/' << boost::multiprecision::denominator(x);
  return os.str();
}

}  // namespace padicq
