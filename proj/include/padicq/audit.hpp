#pragma once

/**
 * Check registry and report bundle.
 *
 * Every check evaluates one identity, congruence or bound over a parameter
 * grid and emits one IdentityReport per grid point. A report compares a
 * measured agreement exponent with the exponent the claim would need:
 *
 *   PASS         measured >= claimed
 *   DISCREPANCY  measured <  claimed (a finding, not a failure)
 *   INFO         no claim attached (derived variants, decay profiles)
 *   ERROR        the point could not be evaluated; see notes
 *
 * For inequality checks both sides are p-powers; the "exponent" of a norm
 * |x| = p^-e is e, so measured >= claimed is exactly lhs <= rhs.
 */

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padicq/maximal.hpp"

namespace padicq {

using ordered_json = nlohmann::ordered_json;

enum class CheckId {
  Prop1Linearity,
  Prop1Defect,
  Eq7Expansion,
  Eq8WeightCong,
  Eq9NegQCong,
  PolyMeasureCong,
  Thm1aPrinted,
  Thm1aCandidate,
  Thm1bPrinted,
  Thm1bCandidate,
  Thm2a,
  Thm2bBound,
  Cor1Bound,
  EulerCrosscheck,
  Partition,
  ConstExactness,
};

const std::vector<CheckId>& all_checks();
std::string to_string(CheckId id);
// Throws InvalidSpec for names outside the registry.
CheckId parse_check_id(const std::string& name);

// Parameter lists. Absent optionals fall back to per-prime defaults; an
// explicitly empty list yields no rows for checks that range over it.
struct Grid {
  std::vector<u64> primes{3, 5, 7};
  // Literals ("s/t", "k", "d0.d1_p") or the per-prime tokens
  // "1+p", "1+2p", "1+p^2", "1/(1+p)".
  std::vector<std::string> q{"1", "1+p", "1+p^2", "1/(1+p)"};
  std::vector<std::string> omega{"1", "1+p", "1+2p"};
  std::optional<std::vector<u64>> a;  // default {0, 1, 2, p+1, p^2-1}
  std::optional<std::vector<u64>> i;  // default {0, 1, 2, p+1, p^2-1}
  std::vector<unsigned> n{0, 1, 2, 3, 4};
  std::vector<unsigned> k{0, 1, 2, 3};
  std::vector<unsigned> euler_orders{0, 1, 2, 3, 4, 5, 6};
  // Function labels; empty means each check's own default set.
  std::vector<std::string> f;
};

struct AuditConfig {
  Grid grid;
  int precision = kDefaultPrecision;
  u64 term_budget = kDefaultTermBudget;
  unsigned threads = 0;
  int target_k = 8;
  // Overrides default_max_level(p) when set.
  std::optional<int> max_level;
  // Largest scale of the maximal operator; default min(3, level - 1).
  std::optional<unsigned> n_max;
};

// Reads a grid override file (JSON object with any of the Grid keys plus
// "prec", "max_level", "n_max", "target_k"). Throws InvalidSpec.
AuditConfig load_grid_file(const std::string& path, AuditConfig base);

// Resolves a q/omega token for prime p.
PadicInt resolve_parameter(const std::string& token, const PadicContext& ctx);
// "const", "const:c", "monomial:k", "q_monomial:k", "exp_weight",
// "exp_weight:w", "neg_q_inverse_power".
PadicFunction make_function(const std::string& label, const WeightedContext& wctx);

struct Claim {
  enum class Kind { Exponent, Exact, NotApplicable };
  Kind kind = Kind::NotApplicable;
  int exponent = 0;

  static Claim at_least(int e) { return {Kind::Exponent, e}; }
  static Claim exact() { return {Kind::Exact, 0}; }
  static Claim none() { return {Kind::NotApplicable, 0}; }
};

enum class Status { Pass, Discrepancy, Info, Error };
std::string to_string(Status s);

// A p-adic value, an exact rational norm, or nothing.
struct ReportValue {
  enum class Kind { None, Padic, Norm };
  Kind kind = Kind::None;
  u64 residue = 0;
  std::string digits;
  std::string norm;

  static ReportValue of(const PadicInt& x);
  static ReportValue of_norm(const Rational& r);
  std::string text() const;
};

struct IdentityReport {
  CheckId id{};
  ordered_json params = ordered_json::object();
  ReportValue lhs;
  ReportValue rhs;
  int measured_exponent = 0;
  Claim claimed;
  Status status = Status::Info;
  std::string notes;
  bool config_error = false;
};

// PASS/DISCREPANCY/INFO from measured vs claimed; `precision` resolves Exact.
Status classify(int measured, const Claim& claim, int precision);

struct ReportBundle {
  ordered_json meta = ordered_json::object();
  std::vector<IdentityReport> reports;

  int count(Status s) const;
  bool has_config_errors() const;
  bool has_computation_errors() const;
};

std::vector<IdentityReport> run_check(CheckId id, const AuditConfig& config);
ReportBundle run_all(const AuditConfig& config);
ReportBundle run_checks(const std::vector<CheckId>& ids, const AuditConfig& config);

enum class Format { Table, Json, Csv };
Format parse_format(const std::string& name);

std::string serialize(const ReportBundle& bundle, Format format);
ordered_json to_json(const ReportBundle& bundle);
// Writes to `path`, or stdout when path is empty or "-". Throws IoFailure.
void emit(const ReportBundle& bundle, Format format, const std::string& path);

}  // namespace padicq
