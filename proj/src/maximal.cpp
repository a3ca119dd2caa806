#include "padicq/maximal.hpp"

#include <algorithm>
#include <optional>

namespace padicq {

namespace {

u64 level_size(const PadicContext& ctx, int m, const EngineConfig& config) {
  if (m < 0) throw BadLevel("negative sampling depth");
  const u64 size = ipow(ctx.prime(), static_cast<unsigned>(m));
  if (size > config.term_budget) throw BudgetExceeded("sampling depth " + std::to_string(m) + " exceeds the budget");
  return size;
}

}  // namespace

Rational abs_value(const PadicInt& x) { return x.is_zero() ? Rational(0) : x.norm(); }

Rational sup_norm(const PadicFunction& f, int m, const EngineConfig& config) {
  const PadicContext ctx = f(0).context();
  const u64 size = level_size(ctx, m, config);
  Rational best = 0;
  for (u64 xi = 0; xi < size; ++xi) {
    best = std::max(best, abs_value(f(xi)));
    if (best == 1) break;
  }
  return best;
}

PadicInt difference_quotient(const PadicFunction& f, u64 shift, u64 x) {
  if (shift == 0) throw InvalidParameter("difference quotient needs a nonzero shift");
  const PadicInt num = f(x + shift) - f(x);
  const auto& ctx = num.context();
  const PadicInt h(ctx, shift);
  if (h.is_zero()) throw PrecisionLoss("shift is divisible by p^N");
  const int v = h.valuation();
  u64 unit = shift;
  for (int i = 0; i < v; ++i) unit /= ctx.prime();
  return num.shift_down(v) * PadicInt(ctx, unit).inv();
}

NormEstimate lipschitz_norm(const PadicFunction& f, int m, const EngineConfig& config) {
  const PadicContext ctx = f(0).context();
  const u64 size = level_size(ctx, m, config);
  NormEstimate out;
  out.depth = m;
  out.shift_bound = ipow(ctx.prime(), static_cast<unsigned>((m + 1) / 2));
  out.sup_norm = sup_norm(f, m, config);
  out.lip_norm = 0;
  std::vector<PadicInt> values;
  values.reserve(size);
  auto walk = f.walk(0, 1);
  for (u64 x = 0; x < size; ++x) values.push_back(walk());
  // |(f(x+h) - f(x)) / h| = p^(v(h) - v(diff)); differences that vanish mod p^N count as 0.
  std::optional<int> worst;
  for (u64 shift = 1; shift <= out.shift_bound && shift < size; ++shift) {
    const PadicInt h(ctx, shift);
    if (h.is_zero()) throw PrecisionLoss("shift is divisible by p^N");
    const int vh = h.valuation();
    for (u64 x = 0; x + shift < size; ++x) {
      const PadicInt diff = values[x + shift] - values[x];
      if (!diff.is_zero()) worst = std::max(worst.value_or(vh - diff.valuation()), vh - diff.valuation());
    }
  }
  out.lip_norm = worst ? rational_ppow(ctx.prime(), *worst) : Rational(0);
  out.norm_one = std::max(out.sup_norm, out.lip_norm);
  return out;
}

ScaleAverage MaximalOperator::scale_average(const PadicFunction& f, u64 a, unsigned n, int m) const {
  const CosetQuery c(a, n, integ_.context());
  const PadicInt numerator = integ_.twisted_coset_sum(f, c, m);
  const PadicInt denominator = integ_.weighted_measure_at(constant(PadicInt::one(integ_.context())), c, m);
  if (!denominator.is_unit()) throw NonUnit("coset weight at scale " + std::to_string(n) + " is not a unit");
  return {n, m, numerator * denominator.inv(), numerator, denominator};
}

MaximalResult MaximalOperator::maximal_function(const PadicFunction& f, u64 a, unsigned n_max, int m) const {
  if (m < static_cast<int>(n_max)) throw BadLevel("level below the largest scale");
  MaximalResult out{{}, Rational(0), 0};
  const u64 p = integ_.context().prime();
  for (unsigned n = 0; n <= n_max; ++n) {
    out.scales.push_back(scale_average(f, a % ipow(p, n), n, m));
    const Rational r = abs_value(out.scales.back().value);
    if (r > out.sup_abs || n == 0) {
      out.sup_abs = r;
      out.argmax_n = n;
    }
  }
  return out;
}

ClosedFormComparison MaximalOperator::thm2_closed_form_check(const PadicFunction& f, u64 a, unsigned n, int m,
                                                             Variant v) const {
  const auto& ctx = integ_.context();
  const auto& w = integ_.weights();
  const CosetQuery c(a, n, ctx);
  ScaleAverage avg = scale_average(f, a, n, m);
  const PadicInt one = PadicInt::one(ctx);
  const PadicInt growth = one + pow_ppow(w.omega() * w.q(), n);
  const PadicInt integral = integ_.reindexed_integral(f, c, v, m - static_cast<int>(n));
  PadicInt closed = PadicInt::zero(ctx);
  if (v == Variant::Printed) {
    const PadicInt sign = a % 2 == 0 ? one : -one;
    closed = sign * (from_int(2, ctx) * w.q().pow(static_cast<i64>(a))).inv() * growth * integral;
  } else {
    const PadicInt den = w.neg_q().pow(static_cast<i64>(a)) * (one + w.q()) * q_int(c.stride(), w.neg_q());
    closed = growth * den.inv() * integral;
  }
  const int measured = agreement_exponent(avg.value, closed);
  return {std::move(avg), closed, measured};
}

TwistNorm MaximalOperator::l1_twist_norm(unsigned n, int m) const {
  const auto& w = integ_.weights();
  // (-q^(p^n) / omega)^(-xi) = (omega / -q^(p^n))^xi
  const PadicInt ratio = w.omega() * (-pow_ppow(w.q(), n)).inv();
  const PadicInt value = integ_.riemann_sum(exp_weight(ratio), m, n);
  return {value, abs_value(value)};
}

Rational MaximalOperator::bound_constant(u64 a, unsigned n_max) const {
  const auto& ctx = integ_.context();
  const auto& w = integ_.weights();
  const PadicInt lead = (from_int(2, ctx) * w.q().pow(static_cast<i64>(a))).inv();
  Rational growth = 0;
  for (unsigned n = 0; n <= n_max; ++n)
    growth = std::max(growth, abs_value(PadicInt::one(ctx) + pow_ppow(w.omega() * w.q(), n)));
  return abs_value(lead) * growth;
}

std::vector<BoundRow> MaximalOperator::boundedness_check(const PadicFunction& f, const std::vector<u64>& sample_as,
                                                         unsigned n_max, int m, int lip_depth) const {
  std::vector<BoundRow> rows;
  if (sample_as.empty()) return rows;
  const Rational f_norm = lipschitz_norm(f, lip_depth, integ_.config()).norm_one;
  Rational l1 = 0;
  for (unsigned n = 0; n <= n_max; ++n) l1 = std::max(l1, l1_twist_norm(n, m - static_cast<int>(n)).norm);
  for (u64 a : sample_as) {
    const MaximalResult mf = maximal_function(f, a, n_max, m);
    BoundRow row;
    row.a = a;
    row.lhs = mf.sup_abs;
    row.K = bound_constant(a, n_max);
    row.f_norm = f_norm;
    row.l1_norm = l1;
    row.rhs = row.K * f_norm * l1;
    row.argmax_n = mf.argmax_n;
    row.holds = row.lhs <= row.rhs;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace padicq
