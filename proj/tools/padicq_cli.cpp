// padicq: fermionic q-integrals, weighted maximal averages and the claim audit.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "padicq/audit.hpp"

using namespace padicq;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitComputation = 3;

struct Options {
  u64 p = 3;
  std::string q = "4";
  std::string omega = "7";
  int prec = kDefaultPrecision;
  std::optional<int> max_level;
  std::optional<unsigned> n_max;
  std::string grid;
  std::string format = "table";
  std::string out = "-";
  u64 budget = kDefaultTermBudget;
  unsigned threads = 0;

  std::string f = "const";
  u64 a = 0;
  unsigned n = 1;
  int target = 8;
  unsigned t = 0;
  std::optional<int> m;
  std::string check_id;
};

// Output of the single-point subcommands: ordered key/value records.
struct Records {
  ordered_json meta = ordered_json::object();
  ordered_json rows = ordered_json::array();
};

std::string cell(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string render(const Records& r, Format format) {
  if (format == Format::Json) {
    ordered_json j;
    j["meta"] = r.meta;
    j["rows"] = r.rows;
    return j.dump(2) + "\n";
  }
  std::vector<std::string> keys;
  if (!r.rows.empty())
    for (const auto& [k, v] : r.rows.front().items()) keys.push_back(k);
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : r.rows) {
    std::vector<std::string> line;
    for (const auto& k : keys) line.push_back(row.contains(k) ? cell(row[k]) : "");
    cells.push_back(std::move(line));
  }
  std::ostringstream os;
  if (format == Format::Csv) {
    for (std::size_t c = 0; c < keys.size(); ++c) os << (c ? "," : "") << keys[c];
    os << '\n';
    for (const auto& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c) os << (c ? "," : "") << line[c];
      os << '\n';
    }
    return os.str();
  }
  for (const auto& [k, v] : r.meta.items()) os << k << ": " << cell(v) << '\n';
  os << '\n';
  std::vector<std::size_t> width(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    width[c] = keys[c].size();
    for (const auto& line : cells) width[c] = std::max(width[c], line[c].size());
  }
  auto emit_line = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
    }
    os << '\n';
  };
  emit_line(keys);
  for (const auto& line : cells) emit_line(line);
  return os.str();
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoFailure("cannot write '" + path + "'");
}

struct Point {
  PadicContext ctx;
  WeightedContext wctx;
};

Point make_point(const Options& o) {
  PadicContext ctx(o.p, o.prec);
  WeightedContext w(resolve_parameter(o.q, ctx), resolve_parameter(o.omega, ctx));
  return {ctx, w};
}

EngineConfig engine(const Options& o) { return {o.budget, o.threads}; }

void point_meta(Records& r, const Options& o) {
  r.meta["p"] = o.p;
  r.meta["q"] = o.q;
  r.meta["omega"] = o.omega;
  r.meta["prec"] = o.prec;
}

void add_history(Records& r, const StabilizationResult& s) {
  for (const auto& [m, v] : s.history) r.rows.push_back({{"m", m}, {"residue", v.residue()}, {"digits", to_digits(v)}});
}

int run_integrate(const Options& o) {
  const Point pt = make_point(o);
  const FermionicIntegrator integ(pt.wctx, engine(o));
  const int m_max = o.max_level.value_or(default_max_level(o.p));
  const auto s = integ.try_integrate(make_function(o.f, pt.wctx), o.target, m_max, o.t);
  Records r;
  point_meta(r, o);
  r.meta["f"] = o.f;
  r.meta["t"] = o.t;
  r.meta["value"] = to_literal(s.value);
  r.meta["stabilized_to"] = s.achieved_exponent;
  r.meta["converged"] = s.converged;
  add_history(r, s);
  write_out(render(r, parse_format(o.format)), o.out);
  return 0;
}

int run_measure(const Options& o) {
  const Point pt = make_point(o);
  const FermionicIntegrator integ(pt.wctx, engine(o));
  const CosetQuery c(o.a, o.n, pt.ctx);
  const int m_max = o.max_level.value_or(static_cast<int>(o.n) + default_max_level(o.p));
  const auto s = stabilize([&](int m) { return integ.weighted_measure_at(make_function(o.f, pt.wctx), c, m); },
                           std::max<int>(o.n, 1), o.target, m_max);
  Records r;
  point_meta(r, o);
  r.meta["f"] = o.f;
  r.meta["a"] = o.a;
  r.meta["n"] = o.n;
  r.meta["value"] = to_literal(s.value);
  r.meta["stabilized_to"] = s.achieved_exponent;
  r.meta["converged"] = s.converged;
  if (o.f == "const") {
    const PadicInt printed = integ.coset_volume_printed(c);
    const PadicInt candidate = integ.coset_volume_candidate(c);
    r.meta["closed_form_printed"] = to_literal(printed);
    r.meta["agreement_printed"] = agreement_exponent(s.value, printed);
    r.meta["closed_form_candidate"] = to_literal(candidate);
    r.meta["agreement_candidate"] = agreement_exponent(s.value, candidate);
  }
  add_history(r, s);
  write_out(render(r, parse_format(o.format)), o.out);
  return 0;
}

int run_maximal(const Options& o) {
  const Point pt = make_point(o);
  const MaximalOperator op(FermionicIntegrator(pt.wctx, engine(o)));
  const int m = o.m.value_or(o.max_level.value_or(default_max_level(o.p)));
  const unsigned n_max = o.n_max.value_or(static_cast<unsigned>(std::clamp(m - 1, 0, 3)));
  const PadicFunction f = make_function(o.f, pt.wctx);
  const auto res = op.maximal_function(f, o.a, n_max, m);
  Records r;
  point_meta(r, o);
  r.meta["f"] = o.f;
  r.meta["a"] = o.a;
  r.meta["m"] = m;
  r.meta["sup"] = rational_to_string(res.sup_abs);
  r.meta["argmax_n"] = res.argmax_n;
  r.meta["K"] = rational_to_string(op.bound_constant(o.a, n_max));
  for (const auto& s : res.scales) {
    r.rows.push_back({{"n", s.n},
                      {"residue", s.value.residue()},
                      {"digits", to_digits(s.value)},
                      {"norm", rational_to_string(abs_value(s.value))},
                      {"l1", rational_to_string(op.l1_twist_norm(s.n, m - static_cast<int>(s.n)).norm)}});
  }
  write_out(render(r, parse_format(o.format)), o.out);
  return 0;
}

AuditConfig audit_config(const Options& o, const CLI::App& app) {
  AuditConfig cfg;
  cfg.precision = o.prec;
  cfg.term_budget = o.budget;
  cfg.threads = o.threads;
  cfg.max_level = o.max_level;
  cfg.n_max = o.n_max;
  if (!o.grid.empty()) cfg = load_grid_file(o.grid, cfg);
  // Explicit point flags narrow the grid to that point.
  if (app.count("--p")) cfg.grid.primes = {o.p};
  if (app.count("--q")) cfg.grid.q = {o.q};
  if (app.count("--omega")) cfg.grid.omega = {o.omega};
  if (app.count("--prec")) cfg.precision = o.prec;
  return cfg;
}

int finish(const ReportBundle& bundle, const Options& o) {
  emit(bundle, parse_format(o.format), o.out);
  if (bundle.has_config_errors()) return kExitConfig;
  if (bundle.has_computation_errors()) return kExitComputation;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic p-adic q-integrals and a numeric audit of their identities"};
  app.require_subcommand(1);
  Options o;
  auto positive = CLI::PositiveNumber;
  app.add_option("--p", o.p, "Odd prime")->check(positive);
  app.add_option("--q", o.q, "q as s/t, integer, digit string or 1+p style token");
  app.add_option("--omega", o.omega, "Weight omega, same formats as --q");
  app.add_option("--prec", o.prec, "Precision N (work mod p^N)")->check(positive);
  app.add_option("--max-level", o.max_level, "Largest Riemann-sum level");
  app.add_option("--n-max", o.n_max, "Largest scale of the maximal operator");
  app.add_option("--grid", o.grid, "JSON grid override file");
  app.add_option("--format", o.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", o.out, "Output path, - for stdout");
  app.add_option("--budget", o.budget, "Largest number of terms per sum")->check(positive);
  app.add_option("--threads", o.threads, "Summation threads, 0 for all cores");

  auto* integrate = app.add_subcommand("integrate", "Stabilized integral of f against mu_{-q}");
  integrate->add_option("--f", o.f, "Function label");
  integrate->add_option("--target", o.target, "Target agreement exponent");
  integrate->add_option("--t", o.t, "Integrate against mu_{-q^(p^t)}");

  auto* measure = app.add_subcommand("measure", "Weighted measure of a coset a + p^n Z_p");
  measure->add_option("--f", o.f, "Function label");
  measure->add_option("--a", o.a, "Coset representative, a < p^n");
  measure->add_option("--n", o.n, "Coset scale");
  measure->add_option("--target", o.target, "Target agreement exponent");

  auto* maximal = app.add_subcommand("maximal", "Scale averages and the weighted maximal function at a");
  maximal->add_option("--f", o.f, "Function label");
  maximal->add_option("--a", o.a, "Base point");
  maximal->add_option("--m", o.m, "Sampling level");

  auto* check = app.add_subcommand("check", "Run one audit check over the grid");
  check->add_option("id", o.check_id, "Check id")->required();

  auto* report = app.add_subcommand("report", "Run every audit check");

  // Global flags are also accepted after the subcommand name.
  for (auto* sub : {integrate, measure, maximal, check, report}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*integrate) return run_integrate(o);
    if (*measure) return run_measure(o);
    if (*maximal) return run_maximal(o);
    if (*check) {
      const CheckId id = parse_check_id(o.check_id);
      return finish(run_checks({id}, audit_config(o, app)), o);
    }
    if (*report) return finish(run_all(audit_config(o, app)), o);
  } catch (const InvalidContext& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidLiteral& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NonUnitDenominator& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BadLevel& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PadicError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return 0;
}
