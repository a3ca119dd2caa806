#pragma once

#include <utility>

#include "padicq/padic.hpp"

namespace padicq {

// Parameters q and omega of the weighted fermionic integral. Both must be
// congruent to 1 mod p (|1 - q|_p < 1); q = 1 gives the plain alternating
// measure.
class WeightedContext {
 public:
  WeightedContext(const PadicInt& q, const PadicInt& omega);

  const PadicContext& context() const { return q_.context(); }
  const PadicInt& q() const { return q_; }
  const PadicInt& omega() const { return omega_; }
  PadicInt neg_q() const { return -q_; }

 private:
  PadicInt q_;
  PadicInt omega_;
};

// [x]_b = 1 + b + ... + b^(x-1), summed exactly in O(log x) steps.
PadicInt q_int(u64 x, const PadicInt& base);

// Both sides of the expansion of [a + i p^n]_q^k in powers of [i]_{q^{p^n}}.
// They are equal for every input; the pair is returned so callers can audit it.
struct BracketExpansion {
  PadicInt direct;
  PadicInt expanded;
};
BracketExpansion q_bracket_power_expansion(u64 a, u64 i, unsigned n, unsigned k, const WeightedContext& wctx);

// agreement_exponent(w^(a + i p^n), w^a); requires w = 1 mod p.
int weight_congruence_exponent(const PadicInt& w, u64 a, u64 i, unsigned n);
// agreement_exponent((-q)^(a + i p^n), (-q)^a); requires q = 1 mod p.
int neg_q_congruence_exponent(const PadicInt& q, u64 a, u64 i, unsigned n);

// x^(p^n)
PadicInt pow_ppow(const PadicInt& x, unsigned n);

BigInt binomial(unsigned n, unsigned k);

// a + i * p^n with overflow checking.
u64 coset_point(u64 a, u64 i, u64 p, unsigned n);

}  // namespace padicq
