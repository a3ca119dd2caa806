#pragma once

/**
 * Fermionic p-adic q-integration on Z_p.
 *
 * Every integral is the limit over levels m of normalized alternating sums
 *
 *     [p^m]_{-Q}^{-1} * sum_{xi < p^m} (-Q)^xi f(xi),   Q = q^(p^t),
 *
 * computed exactly mod p^N. The denominators are always = 1 mod p, so the
 * normalization never loses precision. Limits are detected empirically: a
 * value is "stabilized to k" once two consecutive levels agree mod p^k.
 *
 * Coset-restricted sums range over xi = a (mod p^n) inside the same level-m
 * window; they are not reindexed, so closed forms that do reindex can be
 * checked against them independently.
 */

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "padicq/function.hpp"
#include "padicq/qfunc.hpp"

namespace padicq {

inline constexpr u64 kDefaultTermBudget = 20'000'000;

struct EngineConfig {
  // Largest number of terms a single sum may add up: p^m for a full level,
  // p^(m-n) for a sum restricted to a coset of scale n.
  u64 term_budget = kDefaultTermBudget;
  // Summation threads; 0 picks hardware concurrency.
  unsigned threads = 0;
};

// Default level cap per prime: 9 for p=3, 6 for p=5, 5 for p=7.
int default_max_level(u64 p);

// The coset a + p^n Z_p with 0 <= a < p^n.
class CosetQuery {
 public:
  CosetQuery(u64 a, unsigned n, const PadicContext& ctx);

  u64 a() const { return a_; }
  unsigned n() const { return n_; }
  u64 stride() const { return stride_; }

 private:
  u64 a_;
  unsigned n_;
  u64 stride_;
};

struct StabilizationResult {
  PadicInt value;
  // agreement of the last two levels (0 with a single level)
  int achieved_exponent = 0;
  int levels_used = 0;
  bool converged = false;
  std::vector<std::pair<int, PadicInt>> history;
};

// Runs level_value(m) for m = first, first+1, ... until two consecutive
// levels agree to target_k or m_max is reached. Never throws on
// non-convergence; see converged.
StabilizationResult stabilize(const std::function<PadicInt(int)>& level_value, int first, int target_k, int m_max);

struct DefectEntry {
  unsigned n = 0;
  // min(valuation of the defect, precision it was stabilized to)
  int defect_valuation = 0;
  PadicInt defect;
  int achieved_exponent = 0;
};

struct DefectProfile {
  std::vector<DefectEntry> entries;
  // max over entries of p^n * p^-defect_valuation
  Rational fitted_C;
};

struct CongruenceMeasurement {
  StabilizationResult measure;
  PadicInt predicted;
  int measured_exponent = 0;
  int claimed_exponent = 0;
};

enum class Variant { Printed, Candidate };
const char* to_string(Variant v);

struct TransferMeasurement {
  // Paired levels: lhs at level m, rhs integral at level m - n.
  StabilizationResult lhs;
  StabilizationResult rhs;
  int measured_exponent = 0;
};

// Euler numbers from 2 / (e^t + 1), n <= 20.
Rational euler_reference(unsigned n);

class FermionicIntegrator {
 public:
  explicit FermionicIntegrator(WeightedContext wctx, EngineConfig config = {});

  const WeightedContext& weights() const { return wctx_; }
  const PadicContext& context() const { return wctx_.context(); }
  const EngineConfig& config() const { return config_; }

  // [p^m]_{-Q}^{-1} sum_{xi<p^m} (-Q)^xi f(xi) with Q = q^(p^t).
  PadicInt riemann_sum(const PadicFunction& f, int m, unsigned t = 0) const;

  // Throws NoStabilization when m_max is reached first.
  StabilizationResult integrate(const PadicFunction& f, int target_k, int m_max, unsigned t = 0) const;
  StabilizationResult try_integrate(const PadicFunction& f, int target_k, int m_max, unsigned t = 0) const;

  // Level-m sum restricted to xi = a (mod p^n), normalized by [p^m]_{-q}.
  PadicInt restricted_sum(const PadicFunction& f, const CosetQuery& c, int m) const;

  // (-q)^a / [p^n]_{-q}
  PadicInt mu_minus_q(const CosetQuery& c) const;

  // Level-m value of the weighted measure: restricted sum of omega^xi f(xi).
  PadicInt weighted_measure_at(const PadicFunction& f, const CosetQuery& c, int m) const;
  StabilizationResult weighted_measure(const PadicFunction& f, const CosetQuery& c, int target_k, int m_max) const;

  // [p^n]_{-q} mu(a + p^n Z_p) - [p^(n+1)]_{-q} mu(a + p^(n+1) Z_p).
  DefectEntry invariance_defect(const PadicFunction& f, u64 a, unsigned n, int target_k, int m_max) const;
  DefectProfile defect_profile(const PadicFunction& f, u64 a, const std::vector<unsigned>& scales, int target_k,
                               int m_max) const;

  // Weighted measure of [x]_q^k on the coset versus (-1)^a omega^a q^a [a]_q^k.
  CongruenceMeasurement poly_measure_congruence(unsigned k, const CosetQuery& c, int target_k, int m_max) const;

  // omega^a (-q)^a [p^n]_{-q}^{-1} * 2 / (1 + omega^(p^n) q^(p^n))
  PadicInt coset_volume_printed(const CosetQuery& c) const;
  // omega^a (-q)^a (1 + q) / (1 + omega^(p^n) q^(p^n))
  PadicInt coset_volume_candidate(const CosetQuery& c) const;

  // Level-m integral of omega^xi f(xi) (-q)^(-xi) over the coset.
  PadicInt twisted_coset_sum(const PadicFunction& f, const CosetQuery& c, int m) const;
  // Level-m' integral against mu_{-q^(p^n)} of
  //   printed:   xi -> omega^xi       f(a + p^n xi) (-q)^(-p^n xi)
  //   candidate: xi -> omega^(p^n xi) f(a + p^n xi) (-q)^(-p^n xi)
  PadicInt reindexed_integral(const PadicFunction& f, const CosetQuery& c, Variant v, int level) const;
  // printed: (-1)^a omega^a / [p^n]_{-q} times the integral; candidate drops (-1)^a.
  PadicInt transfer_rhs(const PadicFunction& f, const CosetQuery& c, Variant v, int level) const;
  TransferMeasurement transfer_identity_check(const PadicFunction& f, const CosetQuery& c, Variant v, int target_k,
                                              int m_max) const;

  // Sum over j < count of base^(a + j*stride) * f(a + j*stride), chunked
  // across threads. Exact, so the result never depends on the chunking.
  PadicInt geometric_sum(const PadicFunction& f, u64 a, u64 stride, u64 count, const PadicInt& base) const;

 private:
  void check_level(int m) const;

  WeightedContext wctx_;
  EngineConfig config_;
};

}  // namespace padicq
