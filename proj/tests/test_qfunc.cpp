#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracle.hpp"
#include "padicq/function.hpp"
#include "padicq/qfunc.hpp"

using namespace padicq;

TEST_CASE("weighted context validation") {
  const PadicContext c(3, 6);
  CHECK_NOTHROW(WeightedContext(from_int(4, c), from_int(7, c)));
  CHECK_NOTHROW(WeightedContext(from_int(1, c), from_int(1, c)));
  CHECK_THROWS_AS(WeightedContext(from_int(2, c), from_int(7, c)), InvalidParameter);
  CHECK_THROWS_AS(WeightedContext(from_int(4, c), from_int(5, c)), InvalidParameter);
  CHECK_THROWS_AS(WeightedContext(from_int(4, c), from_int(7, PadicContext(3, 5))), ContextMismatch);
}

TEST_CASE("q_int examples") {
  const PadicContext c3(3, 3), c6(3, 6);
  CHECK(q_int(0, from_int(4, c3)).is_zero());
  CHECK(q_int(5, PadicInt::one(c3)).residue() == 5);
  CHECK(q_int(3, from_int(-4, c3)).residue() == 13);
  CHECK(q_int(9, from_int(-4, c6)).residue() == 670);
  CHECK(q_int(1, from_int(-4, c6)).residue() == 1);
}

TEST_CASE("q_int matches a direct geometric sum") {
  for (u64 p : {3, 5, 7}) {
    const PadicContext c(p, 12);
    for (int trial = 0; trial < 60; ++trial) {
      const i64 b = static_cast<i64>(oracle::uniform(0, 10'000)) - 5'000;
      const u64 x = oracle::uniform(0, 400);
      CHECK(BigInt(q_int(x, from_int(b, c)).residue()) ==
            oracle::reduce(oracle::geometric(BigInt(b), x), oracle::modulus(p, 12)));
    }
  }
}

TEST_CASE("q-addition law and level factorization") {
  for (u64 p : {3, 5, 7}) {
    const PadicContext c(p, 12);
    for (int trial = 0; trial < 100; ++trial) {
      const PadicInt b(c, oracle::uniform(0, c.modulus() - 1));
      const u64 x = oracle::uniform(0, 1'000'000), y = oracle::uniform(0, 1'000'000);
      CHECK(q_int(x + y, b) == q_int(x, b) + b.pow(static_cast<i64>(x)) * q_int(y, b));
    }
    for (int trial = 0; trial < 20; ++trial) {
      const PadicInt q = from_int(1 + static_cast<i64>(p * oracle::uniform(0, 1000)), c);
      const unsigned n = static_cast<unsigned>(oracle::uniform(0, 4));
      const unsigned m = static_cast<unsigned>(oracle::uniform(0, 4));
      const PadicInt lhs = q_int(ipow(p, m + n), -q);
      const PadicInt rhs = q_int(ipow(p, n), -q) * q_int(ipow(p, m), -pow_ppow(q, n));
      CHECK(lhs == rhs);
      CHECK(lhs.residue() % p == 1);
    }
  }
}

TEST_CASE("pow_ppow and binomial") {
  const PadicContext c(5, 10);
  const PadicInt x = from_int(6, c);
  CHECK(pow_ppow(x, 0) == x);
  CHECK(pow_ppow(x, 3) == x.pow(125));
  for (unsigned n = 0; n < 30; ++n) {
    BigInt row = 0;
    for (unsigned k = 0; k <= n; ++k) {
      row += binomial(n, k);
      if (k > 0 && n > 0) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
    CHECK(row == boost::multiprecision::pow(BigInt(2), n));
  }
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("bracket expansion") {
  const PadicContext c(3, 12);
  const WeightedContext w(from_int(4, c), PadicInt::one(c));
  const auto e = q_bracket_power_expansion(1, 1, 1, 2, w);
  CHECK(e.direct.residue() == 7225);
  CHECK(e.expanded.residue() == 7225);
  const auto k0 = q_bracket_power_expansion(5, 3, 2, 0, w);
  CHECK(k0.direct.residue() == 1);
  CHECK(k0.expanded.residue() == 1);
  const auto i0 = q_bracket_power_expansion(5, 0, 2, 3, w);
  CHECK(i0.direct == q_int(5, w.q()).pow(3));
  CHECK(i0.expanded == i0.direct);
}

TEST_CASE("bracket expansion is exact on random points") {
  for (u64 p : {3, 5, 7}) {
    const PadicContext c(p, 12);
    for (int trial = 0; trial < 100; ++trial) {
      const PadicInt q = from_int(1 + static_cast<i64>(p * oracle::uniform(0, 100)), c);
      const WeightedContext w(q, PadicInt::one(c));
      const auto e = q_bracket_power_expansion(oracle::uniform(0, 100), oracle::uniform(0, 100),
                                               static_cast<unsigned>(oracle::uniform(0, 4)),
                                               static_cast<unsigned>(oracle::uniform(0, 6)), w);
      CHECK(e.direct == e.expanded);
    }
  }
}

TEST_CASE("weight congruence") {
  const PadicContext c(3, 12);
  const PadicInt w = from_int(7, c);
  CHECK(weight_congruence_exponent(w, 4, 0, 2) == 12);
  CHECK(weight_congruence_exponent(w, 0, 1, 1) == 2);
  CHECK(weight_congruence_exponent(PadicInt::one(c), 3, 5, 2) == 12);
  for (u64 p : {3, 5, 7}) {
    const PadicContext cp(p, 12);
    for (int trial = 0; trial < 200; ++trial) {
      const PadicInt wp = from_int(1 + static_cast<i64>(p * oracle::uniform(0, 1000)), cp);
      const unsigned n = static_cast<unsigned>(oracle::uniform(0, 5));
      const u64 a = oracle::uniform(0, 200), i = oracle::uniform(0, 200);
      CHECK(weight_congruence_exponent(wp, a, i, n) >= static_cast<int>(n) + 1);
    }
  }
}

TEST_CASE("negative-q congruence") {
  const PadicContext c(3, 12);
  const PadicInt q = from_int(4, c);
  CHECK(neg_q_congruence_exponent(q, 5, 0, 2) == 12);
  CHECK(neg_q_congruence_exponent(q, 0, 1, 1) == 0);
  CHECK(neg_q_congruence_exponent(q, 0, 2, 1) >= 2);
  for (int trial = 0; trial < 200; ++trial) {
    const PadicInt qq = from_int(1 + 3 * static_cast<i64>(oracle::uniform(0, 1000)), c);
    const unsigned n = static_cast<unsigned>(oracle::uniform(0, 4));
    const u64 a = oracle::uniform(0, 100), i = oracle::uniform(1, 100);
    const int e = neg_q_congruence_exponent(qq, a, i, n);
    if (i % 2 == 1) CHECK(e == 0);
    else CHECK(e >= static_cast<int>(n) + 1);
  }
}

TEST_CASE("coset_point") {
  CHECK(coset_point(2, 3, 5, 2) == 77);
  CHECK_THROWS_AS(coset_point(0, ~u64{0}, 3, 5), InvalidParameter);
}

TEST_CASE("walks agree with pointwise evaluation") {
  for (u64 p : {3, 5, 7}) {
    const PadicContext c(p, 12);
    const PadicInt q = from_int(1 + static_cast<i64>(p), c);
    const PadicInt w = from_ratio(1, 1 + 2 * static_cast<i64>(p), c);
    const std::vector<PadicFunction> fs{
        constant(from_int(9, c)),
        monomial(c, 3),
        q_monomial(q, 2),
        exp_weight(w),
        neg_q_inverse_power(q),
        product(q_monomial(q, 1), exp_weight(w)),
        linear_combination(from_int(2, c), monomial(c, 1), from_int(-5, c), q_monomial(q, 3)),
        affine_precompose(product(monomial(c, 2), neg_q_inverse_power(q)), 4, p * p),
        PadicFunction([c](u64 x) { return from_int(static_cast<i64>(x % 11), c); }, "custom"),
    };
    for (const auto& f : fs) {
      const u64 start = oracle::uniform(0, 500), stride = oracle::uniform(1, 50);
      auto walk = f.walk(start, stride);
      for (u64 j = 0; j < 200; ++j) CHECK(walk() == f(start + j * stride));
    }
  }
}
