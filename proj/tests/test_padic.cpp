#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracle.hpp"
#include "padicq/padic.hpp"

using namespace padicq;

namespace {

const PadicContext ctx27(3, 3);

PadicInt rnd(const PadicContext& ctx) { return {ctx, oracle::uniform(0, ctx.modulus() - 1)}; }

PadicInt rnd_unit(const PadicContext& ctx) {
  for (;;) {
    PadicInt x = rnd(ctx);
    if (x.is_unit()) return x;
  }
}

}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PadicContext(2, 5), InvalidContext);
  CHECK_THROWS_AS(PadicContext(9, 5), InvalidContext);
  CHECK_THROWS_AS(PadicContext(3, 0), InvalidContext);
  CHECK_THROWS_AS(PadicContext(3, 40), InvalidContext);
  CHECK(PadicContext(3, 39).modulus() == ipow(3, 39));
  CHECK(PadicContext(7, 12).modulus() == ipow(7, 12));
}

TEST_CASE("from_int") {
  CHECK(from_int(0, ctx27).residue() == 0);
  CHECK(from_int(0, ctx27).valuation() == 3);
  CHECK(from_int(-1, ctx27).residue() == 26);
  CHECK(from_int(18, ctx27).residue() == 18);
  CHECK(from_int(18, ctx27).valuation() == 2);
  CHECK(from_int(-28, ctx27).residue() == 26);
}

TEST_CASE("from_ratio") {
  CHECK(from_ratio(-1, 2, ctx27).residue() == 13);
  CHECK(from_ratio(5, 1, ctx27) == from_int(5, ctx27));
  CHECK(from_ratio(1, -2, ctx27).residue() == 13);
  CHECK_THROWS_AS(from_ratio(1, 3, ctx27), NonUnitDenominator);
  CHECK_THROWS_AS(from_ratio(1, 0, ctx27), NonUnitDenominator);
}

TEST_CASE("ring operations") {
  const PadicInt x = from_int(13, ctx27);
  CHECK((x + -x).is_zero());
  CHECK((from_int(13, ctx27) * from_int(25, ctx27)).residue() == 1);
  const PadicInt z = from_int(3, ctx27) * from_int(9, ctx27);
  CHECK(z.residue() == 0);
  CHECK(z.valuation() == 3);
  CHECK_THROWS_AS(x + from_int(1, PadicContext(3, 4)), ContextMismatch);
  CHECK_THROWS_AS(x * from_int(1, PadicContext(5, 3)), ContextMismatch);
}

TEST_CASE("inverse and powers") {
  CHECK(PadicInt::one(ctx27).inv().residue() == 1);
  CHECK(from_int(13, ctx27).inv().residue() == 25);
  CHECK_THROWS_AS(from_int(6, ctx27).inv(), NonUnit);
  CHECK(from_int(5, ctx27).pow(0).residue() == 1);
  CHECK(from_int(-4, ctx27).pow(3).residue() == 17);
  CHECK(from_int(7, ctx27).pow(3).residue() == 19);
  CHECK(from_int(2, ctx27).pow(-1).residue() == 14);
  CHECK_THROWS_AS(from_int(3, ctx27).pow(-1), NonUnit);
}

TEST_CASE("valuation, norm, agreement") {
  const PadicContext c(3, 6);
  const PadicInt x = from_int(670, c);
  CHECK(agreement_exponent(x, x) == 6);
  CHECK(valuation(x - PadicInt::one(c)) == 1);
  CHECK(norm(from_int(18, ctx27)) == Rational(1, 9));
  CHECK(norm(PadicInt::zero(ctx27)) == Rational(1, 27));
  CHECK(congruent(from_int(1, c), from_int(10, c), 2));
  CHECK_FALSE(congruent(from_int(1, c), from_int(10, c), 3));
  CHECK_THROWS_AS(congruent(x, x, 7), InvalidParameter);
}

TEST_CASE("shift_down") {
  CHECK(from_int(18, ctx27).shift_down(2).residue() == 2);
  CHECK_THROWS_AS(from_int(18, ctx27).shift_down(3), PrecisionLoss);
}

TEST_CASE("literals") {
  const PadicContext c(5, 4);
  CHECK(parse_literal("-1/2", ctx27).residue() == 13);
  CHECK(parse_literal("42", c).residue() == 42);
  CHECK(parse_literal("1.2.3_5", c).residue() == 1 + 2 * 5 + 3 * 25);
  CHECK_THROWS_AS(parse_literal("1.5_5", c), InvalidLiteral);
  CHECK_THROWS_AS(parse_literal("1.2_3", c), InvalidLiteral);
  CHECK_THROWS_AS(parse_literal("x", c), InvalidLiteral);
  CHECK_THROWS_AS(parse_literal("1/5", c), NonUnitDenominator);
  CHECK(to_digits(from_int(13, ctx27)) == "1.1.1_3");
  CHECK(to_literal(from_int(13, ctx27)) == "1.1.1_3 (13)");
  const PadicInt y = from_int(123, c);
  CHECK(parse_literal(to_digits(y), c) == y);
}

TEST_CASE("arithmetic matches big-integer reference") {
  for (u64 p : {3, 5, 7, 11}) {
    for (int n : {1, 4, 12}) {
      const PadicContext c(p, n);
      const BigInt m = oracle::modulus(p, n);
      for (int trial = 0; trial < 200; ++trial) {
        const PadicInt x = rnd(c), y = rnd(c);
        const BigInt bx = x.residue(), by = y.residue();
        CHECK(BigInt((x * y).residue()) == oracle::reduce(bx * by, m));
        CHECK(BigInt((x + y).residue()) == oracle::reduce(bx + by, m));
        CHECK(BigInt((x - y).residue()) == oracle::reduce(bx - by, m));
        const u64 e = oracle::uniform(0, 1000);
        CHECK(BigInt(x.pow(static_cast<i64>(e)).residue()) == boost::multiprecision::powm(bx, BigInt(e), m));
      }
    }
  }
}

TEST_CASE("multiplication near the largest modulus") {
  // 3^39 and 7^22 sit just under 2^62.
  for (auto [p, n] : {std::pair{3, 39}, std::pair{7, 22}}) {
    const PadicContext c(p, n);
    const BigInt m = oracle::modulus(p, n);
    for (int trial = 0; trial < 2000; ++trial) {
      const u64 a = trial < 4 ? c.modulus() - 1 - trial : oracle::uniform(0, c.modulus() - 1);
      const u64 b = trial < 4 ? c.modulus() - 1 : oracle::uniform(0, c.modulus() - 1);
      CHECK(BigInt(c.mulmod(a, b)) == BigInt(a) * b % m);
    }
  }
}

TEST_CASE("valuation properties") {
  for (u64 p : {3, 5, 7}) {
    const PadicContext c(p, 8);
    for (int trial = 0; trial < 300; ++trial) {
      const PadicInt x = rnd(c) * PadicInt(c, c.power(static_cast<int>(oracle::uniform(0, 4))));
      const PadicInt y = rnd(c) * PadicInt(c, c.power(static_cast<int>(oracle::uniform(0, 4))));
      CHECK(x.valuation() == oracle::valuation(BigInt(x.residue()), p, 8));
      CHECK(valuation(x + y) >= std::min(valuation(x), valuation(y)));
      if (valuation(x) != valuation(y)) CHECK(valuation(x + y) == std::min(valuation(x), valuation(y)));
      CHECK(valuation(x * y) == std::min(8, valuation(x) + valuation(y)));
    }
  }
}

TEST_CASE("inverse properties") {
  for (u64 p : {3, 5, 7, 13}) {
    const PadicContext c(p, 10);
    for (int trial = 0; trial < 200; ++trial) {
      const PadicInt u = rnd_unit(c);
      CHECK((u * u.inv()).residue() == 1);
      CHECK((u.inv() * u).residue() == 1);
      const i64 e = static_cast<i64>(oracle::uniform(0, 500));
      CHECK(u.pow(-e) == u.pow(e).inv());
      const i64 s = static_cast<i64>(oracle::uniform(0, 1'000'000)) - 500'000;
      i64 t = static_cast<i64>(oracle::uniform(1, 1'000'000));
      if (t % static_cast<i64>(p) == 0) ++t;
      CHECK(from_ratio(s, t, c) * from_int(t, c) == from_int(s, c));
      CHECK(from_ratio(s, t, c).residue() == oracle::residue(Rational(s, t), p, 10));
    }
  }
}

TEST_CASE("from_rational uses exact rationals") {
  const PadicContext c(5, 12);
  CHECK(from_rational(Rational(-1, 2), c) == from_ratio(-1, 2, c));
  const Rational big(BigInt("123456789012345678901234567890"), BigInt("98765432109876543211"));
  CHECK(from_rational(big, c).residue() == oracle::residue(big, 5, 12));
  CHECK_THROWS_AS(from_rational(Rational(1, 10), c), NonUnitDenominator);
}
