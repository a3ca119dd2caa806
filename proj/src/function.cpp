#include "padicq/function.hpp"

#include "padicq/qfunc.hpp"

namespace padicq {

namespace {

// Walker for xi -> base^xi.
PadicFunction::Walker power_walker(const PadicInt& base) {
  return [base](u64 start, u64 stride) -> PadicFunction::Walk {
    return [w = base.pow(static_cast<i64>(start)), ratio = base.pow(static_cast<i64>(stride))]() mutable {
      const PadicInt out = w;
      w *= ratio;
      return out;
    };
  };
}

}  // namespace

PadicFunction::Walk PadicFunction::walk(u64 start, u64 stride) const {
  if (walker_) return walker_(start, stride);
  return [eval = eval_, x = start, stride]() mutable {
    const PadicInt out = eval(x);
    x += stride;
    return out;
  };
}

PadicFunction constant(const PadicInt& c) {
  return {[c](u64) { return c; }, "const(" + std::to_string(c.residue()) + ")",
          [c](u64, u64) -> PadicFunction::Walk { return [c] { return c; }; }};
}

PadicFunction monomial(const PadicContext& ctx, unsigned k) {
  return {[ctx, k](u64 xi) { return PadicInt(ctx, xi).pow(k); }, "monomial(" + std::to_string(k) + ")",
          [ctx, k](u64 start, u64 stride) -> PadicFunction::Walk {
            return [x = PadicInt(ctx, start), step = PadicInt(ctx, stride), k]() mutable {
              const PadicInt out = x.pow(k);
              x += step;
              return out;
            };
          }};
}

PadicFunction q_monomial(const PadicInt& q, unsigned k) {
  // [x + s]_q = [x]_q + q^x [s]_q
  return {[q, k](u64 xi) { return q_int(xi, q).pow(k); }, "q_monomial(" + std::to_string(k) + ")",
          [q, k](u64 start, u64 stride) -> PadicFunction::Walk {
            return [bracket = q_int(start, q), qx = q.pow(static_cast<i64>(start)), step = q_int(stride, q),
                    ratio = q.pow(static_cast<i64>(stride)), k]() mutable {
              const PadicInt out = bracket.pow(k);
              bracket += qx * step;
              qx *= ratio;
              return out;
            };
          }};
}

PadicFunction exp_weight(const PadicInt& w) {
  return {[w](u64 xi) { return w.pow(static_cast<i64>(xi)); }, "exp_weight(" + std::to_string(w.residue()) + ")",
          power_walker(w)};
}

PadicFunction neg_q_inverse_power(const PadicInt& q) {
  const PadicInt base = (-q).inv();
  return {[base](u64 xi) { return base.pow(static_cast<i64>(xi)); }, "neg_q_inverse_power", power_walker(base)};
}

PadicFunction product(const PadicFunction& f, const PadicFunction& g) {
  return {[f, g](u64 xi) { return f(xi) * g(xi); }, "(" + f.label() + ")*(" + g.label() + ")",
          [f, g](u64 start, u64 stride) -> PadicFunction::Walk {
            return [fw = f.walk(start, stride), gw = g.walk(start, stride)]() mutable { return fw() * gw(); };
          }};
}

PadicFunction linear_combination(const PadicInt& alpha, const PadicFunction& f, const PadicInt& beta,
                                 const PadicFunction& g) {
  return {[alpha, f, beta, g](u64 xi) { return alpha * f(xi) + beta * g(xi); },
          std::to_string(alpha.residue()) + "*(" + f.label() + ")+" + std::to_string(beta.residue()) + "*(" +
              g.label() + ")",
          [alpha, f, beta, g](u64 start, u64 stride) -> PadicFunction::Walk {
            return [alpha, beta, fw = f.walk(start, stride), gw = g.walk(start, stride)]() mutable {
              return alpha * fw() + beta * gw();
            };
          }};
}

PadicFunction affine_precompose(const PadicFunction& f, u64 a, u64 stride) {
  return {[f, a, stride](u64 xi) { return f(a + stride * xi); },
          f.label() + "@(" + std::to_string(a) + "+" + std::to_string(stride) + "x)",
          [f, a, stride](u64 start, u64 step) -> PadicFunction::Walk { return f.walk(a + stride * start, stride * step); }};
}

}  // namespace padicq
