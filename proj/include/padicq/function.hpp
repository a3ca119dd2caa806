#pragma once

#include <functional>
#include <string>

#include "padicq/padic.hpp"

namespace padicq {

// A function Z_p -> Z_p sampled at nonnegative integer points. Evaluators
// must be deterministic and thread-safe; the integration engine calls them
// concurrently from several summation chunks.
//
// A function may also know how to walk an arithmetic progression
// start, start + stride, ... incrementally. Walks must return exactly the
// values the evaluator would.
class PadicFunction {
 public:
  using Evaluator = std::function<PadicInt(u64)>;
  // Each call returns the next value of the progression.
  using Walk = std::function<PadicInt()>;
  using Walker = std::function<Walk(u64 start, u64 stride)>;

  PadicFunction(Evaluator eval, std::string label, Walker walker = {})
      : eval_(std::move(eval)), label_(std::move(label)), walker_(std::move(walker)) {}

  PadicInt operator()(u64 xi) const { return eval_(xi); }
  const std::string& label() const { return label_; }

  // Falls back to pointwise evaluation without a walker.
  Walk walk(u64 start, u64 stride) const;

 private:
  Evaluator eval_;
  std::string label_;
  Walker walker_;
};

PadicFunction constant(const PadicInt& c);
// xi -> xi^k
PadicFunction monomial(const PadicContext& ctx, unsigned k);
// xi -> [xi]_q^k
PadicFunction q_monomial(const PadicInt& q, unsigned k);
// xi -> w^xi
PadicFunction exp_weight(const PadicInt& w);
// xi -> (-q)^(-xi)
PadicFunction neg_q_inverse_power(const PadicInt& q);

PadicFunction product(const PadicFunction& f, const PadicFunction& g);
// alpha f + beta g
PadicFunction linear_combination(const PadicInt& alpha, const PadicFunction& f, const PadicInt& beta,
                                 const PadicFunction& g);
// xi -> f(a + stride * xi)
PadicFunction affine_precompose(const PadicFunction& f, u64 a, u64 stride);

}  // namespace padicq
