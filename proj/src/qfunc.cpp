#include "padicq/qfunc.hpp"

#include <bit>
#include <limits>

namespace padicq {

namespace {

void require_one_mod_p(const PadicInt& x, const char* what) {
  if (agreement_exponent(x, PadicInt::one(x.context())) < 1)
    throw InvalidParameter(std::string(what) + " must be congruent to 1 mod p");
}

}  // namespace

WeightedContext::WeightedContext(const PadicInt& q, const PadicInt& omega) : q_(q), omega_(omega) {
  if (!(q.context() == omega.context())) throw ContextMismatch("q and omega use different contexts");
  require_one_mod_p(q_, "q");
  require_one_mod_p(omega_, "omega");
}

PadicInt q_int(u64 x, const PadicInt& base) {
  const auto& ctx = base.context();
  PadicInt sum = PadicInt::zero(ctx);
  PadicInt power = PadicInt::one(ctx);  // base^k for the prefix k read so far
  for (int bit = std::bit_width(x) - 1; bit >= 0; --bit) {
    sum = sum * (PadicInt::one(ctx) + power);
    power = power * power;
    if ((x >> bit) & 1) {
      sum += power;
      power *= base;
    }
  }
  return sum;
}

PadicInt pow_ppow(const PadicInt& x, unsigned n) {
  PadicInt r = x;
  for (unsigned i = 0; i < n; ++i) r = r.pow(static_cast<i64>(x.context().prime()));
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

u64 coset_point(u64 a, u64 i, u64 p, unsigned n) {
  const u64 pn = ipow(p, n);
  if (i != 0 && pn > (std::numeric_limits<u64>::max() - a) / i)
    throw InvalidParameter("coset point a + i p^n overflows");
  return a + i * pn;
}

BracketExpansion q_bracket_power_expansion(u64 a, u64 i, unsigned n, unsigned k, const WeightedContext& wctx) {
  const auto& ctx = wctx.context();
  const PadicInt& q = wctx.q();
  const u64 pn = ipow(ctx.prime(), n);

  const PadicInt direct = q_int(coset_point(a, i, ctx.prime(), n), q).pow(k);

  const PadicInt bracket_a = q_int(a, q);
  const PadicInt qa = q.pow(static_cast<i64>(a));
  const PadicInt bracket_pn = q_int(pn, q);
  const PadicInt bracket_i = q_int(i, q.pow(static_cast<i64>(pn)));
  PadicInt expanded = PadicInt::zero(ctx);
  for (unsigned j = 0; j <= k; ++j) {
    expanded += from_big(binomial(k, j), ctx) * bracket_a.pow(k - j) * qa.pow(j) * bracket_pn.pow(j) *
                bracket_i.pow(j);
  }
  return {direct, expanded};
}

int weight_congruence_exponent(const PadicInt& w, u64 a, u64 i, unsigned n) {
  require_one_mod_p(w, "weight");
  const u64 e = coset_point(a, i, w.context().prime(), n);
  return agreement_exponent(w.pow(static_cast<i64>(e)), w.pow(static_cast<i64>(a)));
}

int neg_q_congruence_exponent(const PadicInt& q, u64 a, u64 i, unsigned n) {
  require_one_mod_p(q, "q");
  const u64 e = coset_point(a, i, q.context().prime(), n);
  const PadicInt nq = -q;
  return agreement_exponent(nq.pow(static_cast<i64>(e)), nq.pow(static_cast<i64>(a)));
}

}  // namespace padicq
