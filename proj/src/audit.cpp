#include "padicq/audit.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <set>

namespace padicq {

namespace {

struct CheckInfo {
  CheckId id;
  const char* name;
};

constexpr CheckInfo kRegistry[] = {
    {CheckId::Prop1Linearity, "prop1-linearity"},  {CheckId::Prop1Defect, "prop1-defect"},
    {CheckId::Eq7Expansion, "eq7-expansion"},      {CheckId::Eq8WeightCong, "eq8-weight-cong"},
    {CheckId::Eq9NegQCong, "eq9-negq-cong"},       {CheckId::PolyMeasureCong, "poly-measure-cong"},
    {CheckId::Thm1aPrinted, "thm1a-printed"},      {CheckId::Thm1aCandidate, "thm1a-candidate"},
    {CheckId::Thm1bPrinted, "thm1b-printed"},      {CheckId::Thm1bCandidate, "thm1b-candidate"},
    {CheckId::Thm2a, "thm2a"},                     {CheckId::Thm2bBound, "thm2b-bound"},
    {CheckId::Cor1Bound, "cor1-bound"},            {CheckId::EulerCrosscheck, "euler-crosscheck"},
    {CheckId::Partition, "partition"},             {CheckId::ConstExactness, "const-exactness"},
};

// One (p, q, omega) combination of the grid.
struct Combo {
  PadicContext ctx;
  std::string q_token;
  std::string omega_token;
  WeightedContext wctx;
};

using Rows = std::vector<IdentityReport>;

int level_cap(const AuditConfig& cfg, u64 p) { return cfg.max_level.value_or(default_max_level(p)); }

// Deepest level <= 9 the budget allows; Euler moments gain about one digit per level.
int euler_level_cap(const AuditConfig& cfg, u64 p) {
  if (cfg.max_level) return *cfg.max_level;
  int m = 1;
  while (m < 9 && ipow(p, static_cast<unsigned>(m + 1)) <= cfg.term_budget) ++m;
  return m;
}

std::vector<u64> sample_points(const std::optional<std::vector<u64>>& given, u64 p) {
  if (given) return *given;
  std::set<u64> s{0, 1, 2, p + 1, p * p - 1};
  return {s.begin(), s.end()};
}

// Exponent e of a norm p^-e; an exact zero counts as the working precision.
int norm_exponent(const Rational& r, u64 p, int precision) {
  if (r == 0) return precision;
  int e = 0;
  Rational x = r;
  while (x < 1) {
    x *= p;
    ++e;
  }
  while (x > 1) {
    x /= p;
    --e;
  }
  return e;
}

EngineConfig engine_config(const AuditConfig& cfg) { return {cfg.term_budget, cfg.threads}; }

ordered_json base_params(const Combo& c, bool with_q, bool with_omega) {
  ordered_json j = ordered_json::object();
  j["p"] = c.ctx.prime();
  if (with_q) j["q"] = c.q_token;
  if (with_omega) j["omega"] = c.omega_token;
  j["N"] = c.ctx.precision();
  return j;
}

IdentityReport make_row(CheckId id, ordered_json params, ReportValue lhs, ReportValue rhs, int measured, Claim claim,
                        int precision, std::string notes = {}) {
  IdentityReport r;
  r.id = id;
  r.params = std::move(params);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.measured_exponent = measured;
  r.claimed = claim;
  r.status = classify(measured, claim, precision);
  r.notes = std::move(notes);
  return r;
}

IdentityReport error_row(CheckId id, ordered_json params, const std::string& what, bool config_error) {
  IdentityReport r;
  r.id = id;
  r.params = std::move(params);
  r.status = Status::Error;
  r.notes = what;
  r.config_error = config_error;
  return r;
}

// Runs body for a single grid point, turning library errors into an ERROR row.
void guarded(Rows& out, CheckId id, const ordered_json& params, const std::function<void()>& body) {
  try {
    body();
  } catch (const InvalidParameter& e) {
    out.push_back(error_row(id, params, std::string("invalid parameter: ") + e.what(), true));
  } catch (const PadicError& e) {
    out.push_back(error_row(id, params, e.what(), false));
  }
}

std::string stab_note(const StabilizationResult& r) {
  return "levels " + std::to_string(r.history.front().first) + ".." + std::to_string(r.levels_used) +
         ", stabilized to " + std::to_string(r.achieved_exponent) + (r.converged ? "" : " (target not reached)");
}

std::vector<std::string> function_labels(const AuditConfig& cfg, std::vector<std::string> fallback) {
  return cfg.grid.f.empty() ? fallback : cfg.grid.f;
}

// Calls body for every (p, q, omega) combination the check ranges over.
void for_each_combo(const AuditConfig& cfg, CheckId id, bool with_q, bool with_omega, Rows& out,
                    const std::function<void(const Combo&)>& body) {
  const std::vector<std::string> one{"1"};
  const auto& qs = with_q ? cfg.grid.q : one;
  const auto& ws = with_omega ? cfg.grid.omega : one;
  for (u64 p : cfg.grid.primes) {
    for (const auto& qt : qs) {
      for (const auto& wt : ws) {
        ordered_json params = ordered_json::object();
        params["p"] = p;
        if (with_q) params["q"] = qt;
        if (with_omega) params["omega"] = wt;
        params["N"] = cfg.precision;
        std::optional<Combo> combo;
        try {
          PadicContext ctx(p, cfg.precision);
          WeightedContext w(resolve_parameter(qt, ctx), resolve_parameter(wt, ctx));
          combo.emplace(Combo{ctx, qt, wt, w});
        } catch (const PadicError& e) {
          out.push_back(error_row(id, params, std::string("InvalidSpec: ") + e.what(), true));
          continue;
        }
        body(*combo);
      }
    }
  }
}

// ---------------------------------------------------------------------------

void check_const_exactness(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::ConstExactness;
  for_each_combo(cfg, id, true, false, out, [&](const Combo& c) {
    const FermionicIntegrator integ(c.wctx, engine_config(cfg));
    const PadicInt one = PadicInt::one(c.ctx);
    for (unsigned t : {0u, 1u, 2u}) {
      for (int m = 1; m <= level_cap(cfg, c.ctx.prime()); ++m) {
        auto params = base_params(c, true, false);
        params["t"] = t;
        params["m"] = m;
        guarded(out, id, params, [&] {
          const PadicInt v = integ.riemann_sum(constant(one), m, t);
          out.push_back(make_row(id, params, ReportValue::of(v), ReportValue::of(one), agreement_exponent(v, one),
                                 Claim::exact(), c.ctx.precision()));
        });
      }
    }
  });
}

void check_partition(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Partition;
  const auto labels = function_labels(cfg, {"const", "monomial:1", "q_monomial:2", "exp_weight"});
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const FermionicIntegrator integ(c.wctx, engine_config(cfg));
    const int m = std::min(4, level_cap(cfg, c.ctx.prime()));
    for (const auto& label : labels) {
      for (unsigned n : cfg.grid.n) {
        if (n > 3 || static_cast<int>(n) > m) continue;
        auto params = base_params(c, true, true);
        params["f"] = label;
        params["n"] = n;
        params["m"] = m;
        guarded(out, id, params, [&] {
          const PadicFunction f = make_function(label, c.wctx);
          PadicInt total = PadicInt::zero(c.ctx);
          const u64 cosets = ipow(c.ctx.prime(), n);
          for (u64 a = 0; a < cosets; ++a) total += integ.restricted_sum(f, CosetQuery(a, n, c.ctx), m);
          const PadicInt full = integ.riemann_sum(f, m);
          out.push_back(make_row(id, params, ReportValue::of(total), ReportValue::of(full),
                                 agreement_exponent(total, full), Claim::exact(), c.ctx.precision()));
        });
      }
    }
  });
}

void check_euler(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::EulerCrosscheck;
  for (u64 p : cfg.grid.primes) {
    ordered_json head = ordered_json::object();
    head["p"] = p;
    head["q"] = "1";
    head["omega"] = "1";
    head["N"] = cfg.precision;
    std::optional<FermionicIntegrator> integ;
    try {
      PadicContext ctx(p, cfg.precision);
      integ.emplace(WeightedContext(PadicInt::one(ctx), PadicInt::one(ctx)), engine_config(cfg));
    } catch (const PadicError& e) {
      out.push_back(error_row(id, head, std::string("InvalidSpec: ") + e.what(), true));
      continue;
    }
    const auto& ctx = integ->context();
    const int target = std::min(cfg.target_k, ctx.precision());
    for (unsigned order : cfg.grid.euler_orders) {
      auto params = head;
      params["order"] = order;
      guarded(out, id, params, [&] {
        const Rational e = euler_reference(order);
        const auto r = integ->try_integrate(monomial(ctx, order), target, euler_level_cap(cfg, p));
        const PadicInt ref = from_rational(e, ctx);
        out.push_back(make_row(id, params, ReportValue::of(r.value), ReportValue::of(ref),
                               agreement_exponent(r.value, ref), Claim::at_least(target), ctx.precision(),
                               "E_" + std::to_string(order) + " = " + rational_to_string(e) + "; " + stab_note(r)));
      });
    }
  }
}

void check_eq7(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Eq7Expansion;
  for_each_combo(cfg, id, true, false, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    for (u64 a : sample_points(cfg.grid.a, p))
      for (u64 i : sample_points(cfg.grid.i, p))
        for (unsigned n : cfg.grid.n)
          for (unsigned k : cfg.grid.k) {
            auto params = base_params(c, true, false);
            params["a"] = a;
            params["i"] = i;
            params["n"] = n;
            params["k"] = k;
            guarded(out, id, params, [&] {
              const auto e = q_bracket_power_expansion(a, i, n, k, c.wctx);
              out.push_back(make_row(id, params, ReportValue::of(e.direct), ReportValue::of(e.expanded),
                                     agreement_exponent(e.direct, e.expanded), Claim::exact(), c.ctx.precision()));
            });
          }
  });
}

void check_eq8(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Eq8WeightCong;
  for_each_combo(cfg, id, false, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const PadicInt& w = c.wctx.omega();
    for (u64 a : sample_points(cfg.grid.a, p))
      for (u64 i : sample_points(cfg.grid.i, p))
        for (unsigned n : cfg.grid.n) {
          auto params = base_params(c, false, true);
          params["a"] = a;
          params["i"] = i;
          params["n"] = n;
          guarded(out, id, params, [&] {
            const PadicInt lhs = w.pow(static_cast<i64>(coset_point(a, i, p, n)));
            const PadicInt rhs = w.pow(static_cast<i64>(a));
            out.push_back(make_row(id, params, ReportValue::of(lhs), ReportValue::of(rhs),
                                   weight_congruence_exponent(w, a, i, n), Claim::at_least(static_cast<int>(n)),
                                   c.ctx.precision()));
          });
        }
  });
}

void check_eq9(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Eq9NegQCong;
  for_each_combo(cfg, id, true, false, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const PadicInt& q = c.wctx.q();
    for (u64 a : sample_points(cfg.grid.a, p))
      for (u64 i : sample_points(cfg.grid.i, p))
        for (unsigned n : cfg.grid.n) {
          auto params = base_params(c, true, false);
          params["a"] = a;
          params["i"] = i;
          params["n"] = n;
          guarded(out, id, params, [&] {
            const PadicInt lhs = (-q).pow(static_cast<i64>(coset_point(a, i, p, n)));
            const PadicInt rhs = (-q).pow(static_cast<i64>(a));
            const int measured = neg_q_congruence_exponent(q, a, i, n);
            out.push_back(make_row(id, params, ReportValue::of(lhs), ReportValue::of(rhs), measured,
                                   Claim::at_least(static_cast<int>(n)), c.ctx.precision(),
                                   i % 2 == 1 && measured < static_cast<int>(n) ? "odd i flips the sign (-1)^(i p^n)"
                                                                                : ""));
          });
        }
  });
}

// Cosets (a, n) with a drawn from the sample points and reduced (a < p^n).
std::vector<std::pair<u64, unsigned>> cosets(const AuditConfig& cfg, u64 p, unsigned max_n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (unsigned n : cfg.grid.n) {
    if (n > max_n) continue;
    const u64 pn = ipow(p, n);
    for (u64 a : sample_points(cfg.grid.a, p))
      if (a < pn) out.emplace_back(a, n);
  }
  return out;
}

void check_prop1_linearity(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Prop1Linearity;
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const FermionicIntegrator integ(c.wctx, engine_config(cfg));
    const PadicFunction f = q_monomial(c.wctx.q(), 1);
    const PadicFunction g = exp_weight(c.wctx.omega());
    const PadicInt alpha = from_int(2, c.ctx);
    const PadicInt beta = from_int(4, c.ctx);
    const PadicFunction combo = linear_combination(alpha, f, beta, g);
    for (auto [a, n] : cosets(cfg, c.ctx.prime(), 3)) {
      auto params = base_params(c, true, true);
      params["f"] = "q_monomial:1";
      params["g"] = "exp_weight";
      params["alpha"] = 2;
      params["beta"] = 4;
      params["a"] = a;
      params["n"] = n;
      guarded(out, id, params, [&] {
        const CosetQuery cq(a, n, c.ctx);
        int worst = c.ctx.precision();
        PadicInt lhs = PadicInt::zero(c.ctx), rhs = lhs;
        const int first = std::max<int>(n, 1);
        for (int m = first; m <= first + 3; ++m) {
          lhs = integ.weighted_measure_at(combo, cq, m);
          rhs = alpha * integ.weighted_measure_at(f, cq, m) + beta * integ.weighted_measure_at(g, cq, m);
          worst = std::min(worst, agreement_exponent(lhs, rhs));
        }
        out.push_back(make_row(id, params, ReportValue::of(lhs), ReportValue::of(rhs), worst, Claim::exact(),
                               c.ctx.precision(), "levels " + std::to_string(first) + ".." + std::to_string(first + 3)));
      });
    }
  });
}

void check_prop1_defect(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Prop1Defect;
  const auto labels = function_labels(cfg, {"const", "q_monomial:1", "q_monomial:2", "exp_weight"});
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const FermionicIntegrator integ(c.wctx, engine_config(cfg));
    const int depth = level_cap(cfg, p);
    std::vector<unsigned> scales;
    for (unsigned n : cfg.grid.n)
      if (n >= 1) scales.push_back(n);
    for (const auto& label : labels) {
      for (u64 a : sample_points(cfg.grid.a, p)) {
        if (a >= p) continue;
        auto head = base_params(c, true, true);
        head["f"] = label;
        head["a"] = a;
        Rows group;
        Rational fitted = 0;
        for (unsigned n : scales) {
          auto params = head;
          params["n"] = n;
          guarded(group, id, params, [&] {
            const PadicFunction f = make_function(label, c.wctx);
            const auto e = integ.invariance_defect(f, a, n, std::min(cfg.target_k, c.ctx.precision()),
                                                   static_cast<int>(n) + depth);
            fitted = std::max(fitted, rational_ppow(p, static_cast<int>(n) - e.defect_valuation));
            group.push_back(make_row(id, params, ReportValue::of(e.defect), ReportValue::of(PadicInt::zero(c.ctx)),
                                     e.defect_valuation, Claim::at_least(static_cast<int>(n) - 2), c.ctx.precision(),
                                     "stabilized to " + std::to_string(e.achieved_exponent)));
          });
        }
        for (auto& r : group) {
          if (r.status != Status::Error) r.notes += "; claim read with C = p^2; fitted C = " + rational_to_string(fitted);
          out.push_back(std::move(r));
        }
      }
    }
  });
}

void check_poly_measure(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::PolyMeasureCong;
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const FermionicIntegrator integ(c.wctx, engine_config(cfg));
    const int depth = level_cap(cfg, p);
    for (unsigned k : cfg.grid.k)
      for (auto [a, n] : cosets(cfg, p, 4)) {
        auto params = base_params(c, true, true);
        params["k"] = k;
        params["a"] = a;
        params["n"] = n;
        guarded(out, id, params, [&] {
          const CosetQuery cq(a, n, c.ctx);
          const auto r = integ.poly_measure_congruence(k, cq, std::min(cfg.target_k, c.ctx.precision()),
                                                       static_cast<int>(n) + depth);
          out.push_back(make_row(id, params, ReportValue::of(r.measure.value), ReportValue::of(r.predicted),
                                 r.measured_exponent, Claim::at_least(r.claimed_exponent), c.ctx.precision(),
                                 stab_note(r.measure)));
        });
      }
  });
}

void check_thm1a(const AuditConfig& cfg, Rows& out, Variant v) {
  const auto id = v == Variant::Printed ? CheckId::Thm1aPrinted : CheckId::Thm1aCandidate;
  const auto labels = function_labels(cfg, {"const", "q_monomial:1"});
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const FermionicIntegrator integ(c.wctx, engine_config(cfg));
    const int depth = level_cap(cfg, p);
    for (const auto& label : labels)
      for (auto [a, n] : cosets(cfg, p, 4)) {
        auto params = base_params(c, true, true);
        params["f"] = label;
        params["a"] = a;
        params["n"] = n;
        params["variant"] = to_string(v);
        guarded(out, id, params, [&] {
          const PadicFunction f = make_function(label, c.wctx);
          const CosetQuery cq(a, n, c.ctx);
          const auto t = integ.transfer_identity_check(f, cq, v, std::min(cfg.target_k, c.ctx.precision()),
                                                       static_cast<int>(n) + depth);
          const Claim claim = v == Variant::Printed ? Claim::at_least(t.lhs.achieved_exponent) : Claim::none();
          out.push_back(make_row(id, params, ReportValue::of(t.lhs.value), ReportValue::of(t.rhs.value),
                                 t.measured_exponent, claim, c.ctx.precision(),
                                 "paired levels m / m-" + std::to_string(n) + "; v(lhs) = " +
                                     std::to_string(t.lhs.value.valuation()) + "; lhs " + stab_note(t.lhs)));
        });
      }
  });
}

void check_thm1b(const AuditConfig& cfg, Rows& out, Variant v) {
  const auto id = v == Variant::Printed ? CheckId::Thm1bPrinted : CheckId::Thm1bCandidate;
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const FermionicIntegrator integ(c.wctx, engine_config(cfg));
    const int depth = level_cap(cfg, p);
    const PadicFunction one = constant(PadicInt::one(c.ctx));
    for (auto [a, n] : cosets(cfg, p, 4)) {
      auto params = base_params(c, true, true);
      params["a"] = a;
      params["n"] = n;
      params["variant"] = to_string(v);
      guarded(out, id, params, [&] {
        const CosetQuery cq(a, n, c.ctx);
        const auto r = stabilize([&](int m) { return integ.weighted_measure_at(one, cq, m); }, std::max<int>(n, 1),
                                 std::min(cfg.target_k, c.ctx.precision()), static_cast<int>(n) + depth);
        const PadicInt closed = v == Variant::Printed ? integ.coset_volume_printed(cq) : integ.coset_volume_candidate(cq);
        const int measured = std::min(agreement_exponent(r.value, closed), r.achieved_exponent);
        const Claim claim = v == Variant::Printed ? Claim::at_least(r.achieved_exponent) : Claim::none();
        out.push_back(make_row(id, params, ReportValue::of(r.value), ReportValue::of(closed), measured, claim,
                               c.ctx.precision(),
                               "raw agreement " + std::to_string(agreement_exponent(r.value, closed)) + "; " +
                                   stab_note(r)));
      });
    }
  });
}

unsigned n_max_for(const AuditConfig& cfg, int m) {
  return cfg.n_max.value_or(static_cast<unsigned>(std::clamp(m - 1, 0, 3)));
}

void check_thm2a(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Thm2a;
  const auto labels = function_labels(cfg, {"const", "q_monomial:1"});
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const MaximalOperator op(FermionicIntegrator(c.wctx, engine_config(cfg)));
    const int m = level_cap(cfg, p);
    for (const auto& label : labels)
      for (auto [a, n] : cosets(cfg, p, static_cast<unsigned>(m)))
        for (Variant v : {Variant::Printed, Variant::Candidate}) {
          auto params = base_params(c, true, true);
          params["f"] = label;
          params["a"] = a;
          params["n"] = n;
          params["m"] = m;
          params["variant"] = to_string(v);
          guarded(out, id, params, [&] {
            const auto r = op.thm2_closed_form_check(make_function(label, c.wctx), a, n, m, v);
            out.push_back(make_row(id, params, ReportValue::of(r.average.value), ReportValue::of(r.closed_form),
                                   r.measured_exponent, Claim::none(), c.ctx.precision(),
                                   "finite-level scale average vs closed form"));
          });
        }
  });
}

void check_thm2b(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Thm2bBound;
  const auto labels = function_labels(cfg, {"const", "monomial:1", "q_monomial:1"});
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const MaximalOperator op(FermionicIntegrator(c.wctx, engine_config(cfg)));
    const int m = level_cap(cfg, p);
    const unsigned n_max = n_max_for(cfg, m);
    const int lip_depth = std::min(4, m);
    for (const auto& label : labels) {
      std::optional<Rational> f_norm;
      for (u64 a : sample_points(cfg.grid.a, p))
        for (unsigned n = 0; n <= n_max; ++n) {
          auto params = base_params(c, true, true);
          params["f"] = label;
          params["a"] = a;
          params["n"] = n;
          params["m"] = m;
          guarded(out, id, params, [&] {
            const PadicFunction f = make_function(label, c.wctx);
            if (!f_norm) f_norm = lipschitz_norm(f, lip_depth, op.integrator().config()).norm_one;
            const auto avg = op.scale_average(f, a % ipow(p, n), n, m);
            const Rational lhs = abs_value(avg.value);
            const Rational l1 = op.l1_twist_norm(n, m - static_cast<int>(n)).norm;
            const Rational K = op.bound_constant(a, n);
            const Rational rhs = K * *f_norm * l1;
            out.push_back(make_row(id, params, ReportValue::of_norm(lhs), ReportValue::of_norm(rhs),
                                   norm_exponent(lhs, p, c.ctx.precision()),
                                   Claim::at_least(norm_exponent(rhs, p, c.ctx.precision())), c.ctx.precision(),
                                   "K = " + rational_to_string(K) + ", ||f||_1 = " + rational_to_string(*f_norm) +
                                       ", L1 = " + rational_to_string(l1)));
          });
        }
    }
  });
}

void check_cor1(const AuditConfig& cfg, Rows& out) {
  const auto id = CheckId::Cor1Bound;
  const auto labels = function_labels(cfg, {"const", "monomial:1", "q_monomial:1"});
  for_each_combo(cfg, id, true, true, out, [&](const Combo& c) {
    const u64 p = c.ctx.prime();
    const MaximalOperator op(FermionicIntegrator(c.wctx, engine_config(cfg)));
    const int m = level_cap(cfg, p);
    const unsigned n_max = n_max_for(cfg, m);
    const auto as = sample_points(cfg.grid.a, p);
    for (const auto& label : labels) {
      auto head = base_params(c, true, true);
      head["f"] = label;
      head["n_max"] = n_max;
      head["m"] = m;
      guarded(out, id, head, [&] {
        const auto rows = op.boundedness_check(make_function(label, c.wctx), as, n_max, m, std::min(4, m));
        for (const auto& row : rows) {
          auto params = head;
          params["a"] = row.a;
          out.push_back(make_row(id, params, ReportValue::of_norm(row.lhs), ReportValue::of_norm(row.rhs),
                                 norm_exponent(row.lhs, p, c.ctx.precision()),
                                 Claim::at_least(norm_exponent(row.rhs, p, c.ctx.precision())), c.ctx.precision(),
                                 "K = " + rational_to_string(row.K) + ", ||f||_1 = " + rational_to_string(row.f_norm) +
                                     ", max L1 = " + rational_to_string(row.l1_norm) +
                                     ", argmax n = " + std::to_string(row.argmax_n)));
        }
      });
    }
  });
}

}  // namespace

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& c : kRegistry) v.push_back(c.id);
    return v;
  }();
  return ids;
}

std::string to_string(CheckId id) {
  for (const auto& c : kRegistry)
    if (c.id == id) return c.name;
  return "unknown";
}

CheckId parse_check_id(const std::string& name) {
  for (const auto& c : kRegistry)
    if (name == c.name) return c.id;
  throw InvalidSpec("unknown check id '" + name + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Discrepancy: return "DISCREPANCY";
    case Status::Info: return "INFO";
    case Status::Error: return "ERROR";
  }
  return "ERROR";
}

Status classify(int measured, const Claim& claim, int precision) {
  switch (claim.kind) {
    case Claim::Kind::NotApplicable: return Status::Info;
    case Claim::Kind::Exact: return measured >= precision ? Status::Pass : Status::Discrepancy;
    case Claim::Kind::Exponent: return measured >= claim.exponent ? Status::Pass : Status::Discrepancy;
  }
  return Status::Info;
}

PadicInt resolve_parameter(const std::string& token, const PadicContext& ctx) {
  const auto p = static_cast<i64>(ctx.prime());
  if (token == "1+p") return from_int(1 + p, ctx);
  if (token == "1+2p") return from_int(1 + 2 * p, ctx);
  if (token == "1+p^2") return from_int(1 + p * p, ctx);
  if (token == "1/(1+p)") return from_ratio(1, 1 + p, ctx);
  try {
    return parse_literal(token, ctx);
  } catch (const InvalidLiteral& e) {
    throw InvalidParameter(e.what());
  } catch (const NonUnitDenominator& e) {
    throw InvalidParameter(e.what());
  }
}

PadicFunction make_function(const std::string& label, const WeightedContext& wctx) {
  const auto colon = label.find(':');
  const std::string head = label.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : label.substr(colon + 1);
  auto order = [&]() -> unsigned {
    if (arg.empty()) throw InvalidParameter("function '" + head + "' needs an order, e.g. " + head + ":2");
    try {
      const long v = std::stol(arg);
      if (v < 0) throw InvalidParameter("negative order");
      return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
      throw InvalidParameter("bad order '" + arg + "'");
    }
  };
  const auto& ctx = wctx.context();
  if (head == "const") return constant(arg.empty() ? PadicInt::one(ctx) : resolve_parameter(arg, ctx));
  if (head == "monomial") return monomial(ctx, order());
  if (head == "q_monomial") return q_monomial(wctx.q(), order());
  if (head == "exp_weight") return exp_weight(arg.empty() ? wctx.omega() : resolve_parameter(arg, ctx));
  if (head == "neg_q_inverse_power") return neg_q_inverse_power(wctx.q());
  throw InvalidParameter("unknown function '" + label + "'");
}

std::vector<IdentityReport> run_check(CheckId id, const AuditConfig& cfg) {
  Rows out;
  switch (id) {
    case CheckId::Prop1Linearity: check_prop1_linearity(cfg, out); break;
    case CheckId::Prop1Defect: check_prop1_defect(cfg, out); break;
    case CheckId::Eq7Expansion: check_eq7(cfg, out); break;
    case CheckId::Eq8WeightCong: check_eq8(cfg, out); break;
    case CheckId::Eq9NegQCong: check_eq9(cfg, out); break;
    case CheckId::PolyMeasureCong: check_poly_measure(cfg, out); break;
    case CheckId::Thm1aPrinted: check_thm1a(cfg, out, Variant::Printed); break;
    case CheckId::Thm1aCandidate: check_thm1a(cfg, out, Variant::Candidate); break;
    case CheckId::Thm1bPrinted: check_thm1b(cfg, out, Variant::Printed); break;
    case CheckId::Thm1bCandidate: check_thm1b(cfg, out, Variant::Candidate); break;
    case CheckId::Thm2a: check_thm2a(cfg, out); break;
    case CheckId::Thm2bBound: check_thm2b(cfg, out); break;
    case CheckId::Cor1Bound: check_cor1(cfg, out); break;
    case CheckId::EulerCrosscheck: check_euler(cfg, out); break;
    case CheckId::Partition: check_partition(cfg, out); break;
    case CheckId::ConstExactness: check_const_exactness(cfg, out); break;
  }
  return out;
}

ReportBundle run_checks(const std::vector<CheckId>& ids, const AuditConfig& cfg) {
  ReportBundle bundle;
  auto& meta = bundle.meta;
  meta["p"] = cfg.grid.primes;
  meta["q"] = cfg.grid.q;
  meta["omega"] = cfg.grid.omega;
  meta["prec"] = cfg.precision;
  meta["budget"] = cfg.term_budget;

  const unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  std::vector<Rows> results(ids.size());
  if (workers <= 1 || ids.size() <= 1) {
    for (std::size_t j = 0; j < ids.size(); ++j) results[j] = run_check(ids[j], cfg);
  } else {
    // Each group sums single-threaded; groups are assembled in registry order.
    AuditConfig inner = cfg;
    inner.threads = 1;
    std::vector<std::future<Rows>> futures;
    for (CheckId id : ids) futures.push_back(std::async(std::launch::async, [id, &inner] { return run_check(id, inner); }));
    for (std::size_t j = 0; j < ids.size(); ++j) results[j] = futures[j].get();
  }
  for (auto& rows : results)
    for (auto& r : rows) bundle.reports.push_back(std::move(r));
  return bundle;
}

ReportBundle run_all(const AuditConfig& config) { return run_checks(all_checks(), config); }

int ReportBundle::count(Status s) const {
  return static_cast<int>(std::count_if(reports.begin(), reports.end(), [s](const auto& r) { return r.status == s; }));
}

bool ReportBundle::has_config_errors() const {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.config_error; });
}

bool ReportBundle::has_computation_errors() const {
  return std::any_of(reports.begin(), reports.end(),
                     [](const auto& r) { return r.status == Status::Error && !r.config_error; });
}

}  // namespace padicq
