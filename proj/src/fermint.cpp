#include "padicq/fermint.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace padicq {

namespace {

// Below this many terms a sum is not worth splitting.
constexpr u64 kMinChunkTerms = 4096;

PadicInt sign_power(const PadicContext& ctx, u64 e) {
  return e % 2 == 0 ? PadicInt::one(ctx) : -PadicInt::one(ctx);
}

}  // namespace

int default_max_level(u64 p) {
  switch (p) {
    case 3: return 9;
    case 5: return 6;
    case 7: return 5;
    default: {
      int m = 1;
      while (p <= 20000 / ipow(p, static_cast<unsigned>(m))) ++m;
      return std::max(m, 2);
    }
  }
}

CosetQuery::CosetQuery(u64 a, unsigned n, const PadicContext& ctx) : a_(a), n_(n), stride_(0) {
  try {
    stride_ = ipow(ctx.prime(), n);
  } catch (const InvalidParameter&) {
    throw BadLevel("coset scale p^" + std::to_string(n) + " overflows");
  }
  if (a >= stride_)
    throw BadLevel("coset representative " + std::to_string(a) + " is not reduced mod p^" + std::to_string(n));
}

const char* to_string(Variant v) { return v == Variant::Printed ? "printed" : "candidate"; }

StabilizationResult stabilize(const std::function<PadicInt(int)>& level_value, int first, int target_k, int m_max) {
  if (m_max < first) throw BadLevel("m_max " + std::to_string(m_max) + " below first level " + std::to_string(first));
  StabilizationResult out{level_value(first), 0, first, false, {}};
  out.history.emplace_back(first, out.value);
  for (int m = first + 1; m <= m_max; ++m) {
    PadicInt v = level_value(m);
    out.achieved_exponent = agreement_exponent(v, out.value);
    out.value = v;
    out.levels_used = m;
    out.history.emplace_back(m, v);
    if (out.achieved_exponent >= target_k) {
      out.converged = true;
      break;
    }
  }
  return out;
}

Rational euler_reference(unsigned n) {
  if (n > 20) throw InvalidParameter("euler_reference supports n <= 20");
  std::vector<Rational> e{Rational(1)};
  for (unsigned k = 1; k <= n; ++k) {
    Rational s = 0;
    for (unsigned j = 0; j < k; ++j) s += Rational(binomial(k, j)) * e[j];
    e.push_back(-s / 2);
  }
  return e[n];
}

FermionicIntegrator::FermionicIntegrator(WeightedContext wctx, EngineConfig config)
    : wctx_(std::move(wctx)), config_(config) {}

void FermionicIntegrator::check_level(int m) const {
  if (m < 0) throw BadLevel("negative level");
  const u64 p = context().prime();
  u64 terms = 1;
  for (int i = 0; i < m; ++i) {
    if (terms > config_.term_budget / p)
      throw BudgetExceeded("level " + std::to_string(m) + " exceeds the term budget of " +
                           std::to_string(config_.term_budget));
    terms *= p;
  }
}

PadicInt FermionicIntegrator::geometric_sum(const PadicFunction& f, u64 a, u64 stride, u64 count,
                                            const PadicInt& base) const {
  const auto& ctx = context();
  unsigned threads = config_.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config_.threads;
  const u64 chunks = std::clamp<u64>(count / kMinChunkTerms, 1, threads);
  const PadicInt ratio = base.pow(static_cast<i64>(stride));

  auto run_chunk = [&](u64 lo, u64 hi) {
    PadicInt acc = PadicInt::zero(ctx);
    PadicInt w = base.pow(static_cast<i64>(a + lo * stride));
    auto values = f.walk(a + lo * stride, stride);
    for (u64 j = lo; j < hi; ++j) {
      acc += w * values();
      w *= ratio;
    }
    return acc;
  };

  if (chunks == 1) return run_chunk(0, count);

  std::vector<PadicInt> partial(chunks, PadicInt::zero(ctx));
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (u64 c = 0; c < chunks; ++c) {
    const u64 lo = count * c / chunks;
    const u64 hi = count * (c + 1) / chunks;
    pool.emplace_back([&, c, lo, hi] { partial[c] = run_chunk(lo, hi); });
  }
  for (auto& t : pool) t.join();
  PadicInt total = PadicInt::zero(ctx);
  for (const auto& s : partial) total += s;
  return total;
}

PadicInt FermionicIntegrator::riemann_sum(const PadicFunction& f, int m, unsigned t) const {
  check_level(m);
  const u64 count = ipow(context().prime(), static_cast<unsigned>(m));
  const PadicInt neg_base = -pow_ppow(wctx_.q(), t);
  return geometric_sum(f, 0, 1, count, neg_base) * q_int(count, neg_base).inv();
}

StabilizationResult FermionicIntegrator::try_integrate(const PadicFunction& f, int target_k, int m_max,
                                                       unsigned t) const {
  if (target_k < 1 || target_k > context().precision()) throw InvalidParameter("target_k outside [1, N]");
  return stabilize([&](int m) { return riemann_sum(f, m, t); }, 1, target_k, m_max);
}

StabilizationResult FermionicIntegrator::integrate(const PadicFunction& f, int target_k, int m_max,
                                                   unsigned t) const {
  auto r = try_integrate(f, target_k, m_max, t);
  if (!r.converged)
    throw NoStabilization("integral of " + f.label() + " reached exponent " + std::to_string(r.achieved_exponent) +
                          " < " + std::to_string(target_k) + " by level " + std::to_string(m_max));
  return r;
}

PadicInt FermionicIntegrator::restricted_sum(const PadicFunction& f, const CosetQuery& c, int m) const {
  if (m < static_cast<int>(c.n())) throw BadLevel("level below coset scale");
  check_level(m - static_cast<int>(c.n()));
  const u64 p = context().prime();
  const u64 count = ipow(p, static_cast<unsigned>(m) - c.n());
  return geometric_sum(f, c.a(), c.stride(), count, wctx_.neg_q()) *
         q_int(ipow(p, static_cast<unsigned>(m)), wctx_.neg_q()).inv();
}

PadicInt FermionicIntegrator::mu_minus_q(const CosetQuery& c) const {
  return wctx_.neg_q().pow(static_cast<i64>(c.a())) * q_int(c.stride(), wctx_.neg_q()).inv();
}

PadicInt FermionicIntegrator::weighted_measure_at(const PadicFunction& f, const CosetQuery& c, int m) const {
  if (m < static_cast<int>(c.n())) throw BadLevel("level below coset scale");
  check_level(m - static_cast<int>(c.n()));
  const u64 p = context().prime();
  const u64 count = ipow(p, static_cast<unsigned>(m) - c.n());
  return geometric_sum(f, c.a(), c.stride(), count, wctx_.neg_q() * wctx_.omega()) *
         q_int(ipow(p, static_cast<unsigned>(m)), wctx_.neg_q()).inv();
}

StabilizationResult FermionicIntegrator::weighted_measure(const PadicFunction& f, const CosetQuery& c, int target_k,
                                                          int m_max) const {
  auto r = stabilize([&](int m) { return weighted_measure_at(f, c, m); }, std::max<int>(c.n(), 1), target_k, m_max);
  if (!r.converged)
    throw NoStabilization("weighted measure of " + f.label() + " reached exponent " +
                          std::to_string(r.achieved_exponent) + " by level " + std::to_string(m_max));
  return r;
}

DefectEntry FermionicIntegrator::invariance_defect(const PadicFunction& f, u64 a, unsigned n, int target_k,
                                                   int m_max) const {
  const CosetQuery coarse(a, n, context());
  const CosetQuery fine(a, n + 1, context());
  const PadicInt scale_coarse = q_int(coarse.stride(), wctx_.neg_q());
  const PadicInt scale_fine = q_int(fine.stride(), wctx_.neg_q());
  auto r = stabilize(
      [&](int m) {
        return scale_coarse * weighted_measure_at(f, coarse, m) - scale_fine * weighted_measure_at(f, fine, m);
      },
      static_cast<int>(n) + 1, target_k, m_max);
  const int v = std::min(r.value.valuation(), r.achieved_exponent);
  return {n, v, r.value, r.achieved_exponent};
}

DefectProfile FermionicIntegrator::defect_profile(const PadicFunction& f, u64 a, const std::vector<unsigned>& scales,
                                                  int target_k, int m_max) const {
  DefectProfile out{{}, Rational(0)};
  const u64 p = context().prime();
  for (unsigned n : scales) {
    auto e = invariance_defect(f, a, n, target_k, m_max);
    out.fitted_C = std::max(out.fitted_C, rational_ppow(p, static_cast<int>(n) - e.defect_valuation));
    out.entries.push_back(std::move(e));
  }
  return out;
}

CongruenceMeasurement FermionicIntegrator::poly_measure_congruence(unsigned k, const CosetQuery& c, int target_k,
                                                                   int m_max) const {
  const PadicFunction poly = q_monomial(wctx_.q(), k);
  auto r = stabilize([&](int m) { return weighted_measure_at(poly, c, m); }, std::max<int>(c.n(), 1), target_k, m_max);
  const PadicInt predicted =
      (wctx_.neg_q() * wctx_.omega()).pow(static_cast<i64>(c.a())) * q_int(c.a(), wctx_.q()).pow(k);
  const int measured = std::min(agreement_exponent(r.value, predicted), r.achieved_exponent);
  return {std::move(r), predicted, measured, static_cast<int>(c.n())};
}

PadicInt FermionicIntegrator::coset_volume_printed(const CosetQuery& c) const {
  const auto& ctx = context();
  const PadicInt head = (wctx_.omega() * wctx_.neg_q()).pow(static_cast<i64>(c.a())) *
                        q_int(c.stride(), wctx_.neg_q()).inv();
  const PadicInt tail = PadicInt::one(ctx) + pow_ppow(wctx_.omega() * wctx_.q(), c.n());
  return head * from_int(2, ctx) * tail.inv();
}

PadicInt FermionicIntegrator::coset_volume_candidate(const CosetQuery& c) const {
  const auto& ctx = context();
  const PadicInt head = (wctx_.omega() * wctx_.neg_q()).pow(static_cast<i64>(c.a()));
  const PadicInt tail = PadicInt::one(ctx) + pow_ppow(wctx_.omega() * wctx_.q(), c.n());
  return head * (PadicInt::one(ctx) + wctx_.q()) * tail.inv();
}

PadicInt FermionicIntegrator::twisted_coset_sum(const PadicFunction& f, const CosetQuery& c, int m) const {
  // (-q)^xi (-q)^(-xi) cancels: what remains is a plain sum of omega^xi f(xi).
  if (m < static_cast<int>(c.n())) throw BadLevel("level below coset scale");
  check_level(m - static_cast<int>(c.n()));
  const u64 p = context().prime();
  const u64 count = ipow(p, static_cast<unsigned>(m) - c.n());
  return geometric_sum(f, c.a(), c.stride(), count, wctx_.omega()) *
         q_int(ipow(p, static_cast<unsigned>(m)), wctx_.neg_q()).inv();
}

PadicInt FermionicIntegrator::reindexed_integral(const PadicFunction& f, const CosetQuery& c, Variant v,
                                                 int level) const {
  const PadicInt twist = pow_ppow(wctx_.neg_q(), c.n()).inv();  // (-q)^(-p^n)
  const PadicInt weight = v == Variant::Printed ? wctx_.omega() : pow_ppow(wctx_.omega(), c.n());
  const PadicFunction g = product(product(exp_weight(weight), affine_precompose(f, c.a(), c.stride())),
                                  exp_weight(twist));
  return riemann_sum(g, level, c.n());
}

PadicInt FermionicIntegrator::transfer_rhs(const PadicFunction& f, const CosetQuery& c, Variant v, int level) const {
  PadicInt prefactor = wctx_.omega().pow(static_cast<i64>(c.a())) * q_int(c.stride(), wctx_.neg_q()).inv();
  if (v == Variant::Printed) prefactor *= sign_power(context(), c.a());
  return prefactor * reindexed_integral(f, c, v, level);
}

TransferMeasurement FermionicIntegrator::transfer_identity_check(const PadicFunction& f, const CosetQuery& c,
                                                                 Variant v, int target_k, int m_max) const {
  const int first = std::max<int>(c.n(), 1);
  TransferMeasurement out{stabilize([&](int m) { return twisted_coset_sum(f, c, m); }, first, target_k, m_max),
                          {PadicInt::zero(context()), 0, 0, false, {}},
                          0};
  // Same levels as the left side, shifted down by the coset scale.
  const int last = out.lhs.levels_used;
  out.rhs = stabilize([&](int m) { return transfer_rhs(f, c, v, m - static_cast<int>(c.n())); }, first,
                      context().precision() + 1, last);
  out.measured_exponent = agreement_exponent(out.lhs.value, out.rhs.value);
  return out;
}

}  // namespace padicq
