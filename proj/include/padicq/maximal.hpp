#pragma once

/**
 * Function norms and the weighted q-maximal operator on Z_p.
 *
 * The numerator of every scale average integrates omega^xi (-q)^-xi f(xi)
 * against mu_{-q}; the twist cancels the alternating sign, so in the limit
 * the numerator is 0. Averages are therefore taken at a finite level m, with
 * numerator and denominator summed over the same window, and the maximal
 * function is the largest p-adic norm over scales 0..n_max.
 *
 * Norms in this module are absolute values of sampled functions: an exactly
 * zero residue has norm 0.
 */

#include <vector>

#include "padicq/fermint.hpp"

namespace padicq {

// |x|_p with |0| = 0.
Rational abs_value(const PadicInt& x);

struct NormEstimate {
  Rational sup_norm;
  Rational lip_norm;
  // sup_norm v lip_norm
  Rational norm_one;
  int depth = 0;
  // difference-quotient shifts sampled: 1..shift_bound
  u64 shift_bound = 0;
};

struct ScaleAverage {
  unsigned n = 0;
  int m = 0;
  PadicInt value;
  PadicInt numerator;
  PadicInt denominator;
};

struct MaximalResult {
  std::vector<ScaleAverage> scales;
  Rational sup_abs;
  unsigned argmax_n = 0;
};

struct ClosedFormComparison {
  ScaleAverage average;
  PadicInt closed_form;
  int measured_exponent = 0;
};

struct TwistNorm {
  PadicInt value;
  Rational norm;
};

struct BoundRow {
  u64 a = 0;
  Rational lhs;
  Rational rhs;
  Rational K;
  Rational f_norm;
  Rational l1_norm;
  unsigned argmax_n = 0;
  bool holds = false;
};

// max over xi < p^m of |f(xi)|
Rational sup_norm(const PadicFunction& f, int m, const EngineConfig& config = {});

// (f(x + shift) - f(x)) / shift, dividing the p-part of shift out exactly.
// Throws PrecisionLoss when the numerator is not divisible enough.
PadicInt difference_quotient(const PadicFunction& f, u64 shift, u64 x);

// Samples pairs x, x + shift < p^m with 1 <= shift <= p^ceil(m/2).
NormEstimate lipschitz_norm(const PadicFunction& f, int m, const EngineConfig& config = {});

class MaximalOperator {
 public:
  explicit MaximalOperator(FermionicIntegrator integrator) : integ_(std::move(integrator)) {}

  const FermionicIntegrator& integrator() const { return integ_; }

  // Level-m ratio of the twisted coset integral over mu^(omega)_{1,-q}(a + p^n Z_p).
  ScaleAverage scale_average(const PadicFunction& f, u64 a, unsigned n, int m) const;

  // Scale averages over a + p^n Z_p (a reduced mod p^n) for n = 0..n_max.
  MaximalResult maximal_function(const PadicFunction& f, u64 a, unsigned n_max, int m) const;

  // Printed:   (-1)^a / (2 q^a) (1 + omega^(p^n) q^(p^n)) J_printed
  // Candidate: (1 + omega^(p^n) q^(p^n)) / ((-q)^a (1 + q) [p^n]_{-q}) J_candidate
  // with J the reindexed integral at level m - n.
  ClosedFormComparison thm2_closed_form_check(const PadicFunction& f, u64 a, unsigned n, int m, Variant v) const;

  // Level-m integral of xi -> (-q^(p^n) / omega)^(-xi) against mu_{-q^(p^n)}.
  TwistNorm l1_twist_norm(unsigned n, int m) const;

  // |(-1)^a / (2 q^a)| * max_{n <= n_max} |1 + omega^(p^n) q^(p^n)|
  Rational bound_constant(u64 a, unsigned n_max) const;

  // One row per sampled a: sup_n |average| against K ||f||_1 max_n |L1(n, m - n)|.
  std::vector<BoundRow> boundedness_check(const PadicFunction& f, const std::vector<u64>& sample_as, unsigned n_max,
                                          int m, int lip_depth) const;

 private:
  FermionicIntegrator integ_;
};

}  // namespace padicq
