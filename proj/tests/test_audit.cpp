#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "padicq/audit.hpp"

using namespace padicq;

namespace {

AuditConfig single_point(u64 p = 3, std::string q = "4", std::string omega = "7") {
  AuditConfig cfg;
  cfg.grid.primes = {p};
  cfg.grid.q = {std::move(q)};
  cfg.grid.omega = {std::move(omega)};
  cfg.threads = 1;
  return cfg;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("padicq_test_" + name)).string();
}

}  // namespace

TEST_CASE("registry") {
  const auto& ids = all_checks();
  CHECK(ids.size() == 16);
  std::set<std::string> names;
  for (CheckId id : ids) {
    names.insert(to_string(id));
    CHECK(parse_check_id(to_string(id)) == id);
  }
  CHECK(names.size() == 16);
  CHECK(names.count("eq9-negq-cong") == 1);
  CHECK_THROWS_AS(parse_check_id("thm3"), InvalidSpec);
}

TEST_CASE("classification") {
  CHECK(classify(5, Claim::at_least(5), 12) == Status::Pass);
  CHECK(classify(4, Claim::at_least(5), 12) == Status::Discrepancy);
  CHECK(classify(12, Claim::exact(), 12) == Status::Pass);
  CHECK(classify(11, Claim::exact(), 12) == Status::Discrepancy);
  CHECK(classify(0, Claim::none(), 12) == Status::Info);
  CHECK(to_string(Status::Discrepancy) == "DISCREPANCY");
}

TEST_CASE("parameter tokens and function labels") {
  const PadicContext c(5, 6);
  CHECK(resolve_parameter("1+p", c).residue() == 6);
  CHECK(resolve_parameter("1+2p", c).residue() == 11);
  CHECK(resolve_parameter("1+p^2", c).residue() == 26);
  CHECK(resolve_parameter("1/(1+p)", c) == from_ratio(1, 6, c));
  CHECK(resolve_parameter("21/11", c) == from_ratio(21, 11, c));
  CHECK_THROWS_AS(resolve_parameter("1/5", c), InvalidParameter);
  CHECK_THROWS_AS(resolve_parameter("banana", c), InvalidParameter);

  const WeightedContext w(from_int(6, c), from_int(11, c));
  CHECK(make_function("const", w)(7).residue() == 1);
  CHECK(make_function("const:3", w)(7).residue() == 3);
  CHECK(make_function("monomial:2", w)(7).residue() == 49);
  CHECK(make_function("q_monomial:1", w)(2).residue() == 7);
  CHECK(make_function("exp_weight", w)(2).residue() == 121);
  CHECK(make_function("exp_weight:6", w)(2).residue() == 36);
  CHECK(make_function("neg_q_inverse_power", w)(1) * from_int(-6, c) == PadicInt::one(c));
  CHECK_THROWS_AS(make_function("monomial", w), InvalidParameter);
  CHECK_THROWS_AS(make_function("monomial:x", w), InvalidParameter);
  CHECK_THROWS_AS(make_function("sine", w), InvalidParameter);
}

TEST_CASE("constant exactness rows") {
  AuditConfig cfg = single_point();
  cfg.grid.q = {"1", "4", "1/(1+p)"};
  const auto rows = run_check(CheckId::ConstExactness, cfg);
  CHECK(rows.size() == 3 * 3 * 9);
  for (const auto& r : rows) {
    CHECK(r.status == Status::Pass);
    CHECK(r.measured_exponent == 12);
  }
}

TEST_CASE("negative-q congruence rows") {
  AuditConfig cfg = single_point();
  cfg.grid.a = std::vector<u64>{0};
  cfg.grid.i = std::vector<u64>{1, 2};
  cfg.grid.n = {1};
  const auto rows = run_check(CheckId::Eq9NegQCong, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].params["i"] == 1);
  CHECK(rows[0].status == Status::Discrepancy);
  CHECK(rows[0].measured_exponent == 0);
  CHECK(rows[0].claimed.exponent == 1);
  CHECK(rows[1].params["i"] == 2);
  CHECK(rows[1].status == Status::Pass);
}

TEST_CASE("Euler rows") {
  const auto rows = run_check(CheckId::EulerCrosscheck, single_point());
  REQUIRE(rows.size() == 7);
  for (const auto& r : rows) {
    CHECK(r.status == Status::Pass);
    CHECK(r.measured_exponent >= 8);
  }
}

TEST_CASE("weight congruence worked point") {
  AuditConfig cfg = single_point();
  cfg.grid.a = std::vector<u64>{0};
  cfg.grid.i = std::vector<u64>{1};
  cfg.grid.n = {1};
  const auto rows = run_check(CheckId::Eq8WeightCong, cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].measured_exponent == 2);
  CHECK(rows[0].status == Status::Pass);
}

TEST_CASE("invalid parameters become error rows") {
  AuditConfig cfg = single_point(3, "1/3");
  const auto rows = run_check(CheckId::ConstExactness, cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == Status::Error);
  CHECK(rows[0].config_error);
  CHECK(rows[0].notes.find("InvalidSpec") != std::string::npos);

  AuditConfig bad_q = single_point(3, "2");
  ReportBundle b = run_checks({CheckId::Eq7Expansion}, bad_q);
  CHECK(b.has_config_errors());
  CHECK_FALSE(b.has_computation_errors());

  AuditConfig bad_p = single_point(9);
  CHECK(run_check(CheckId::EulerCrosscheck, bad_p).front().config_error);
}

TEST_CASE("empty grid gives an empty bundle") {
  AuditConfig cfg;
  cfg.grid.primes = {};
  const auto b = run_all(cfg);
  CHECK(b.reports.empty());
  CHECK_FALSE(b.has_config_errors());
  CHECK(serialize(b, Format::Table) == "check  params  lhs  rhs  measured  claimed  status  notes\n");
  CHECK(serialize(b, Format::Csv) == "check,params,lhs,rhs,measured_exponent,claimed_exponent,status,notes\n");
  const auto j = to_json(b);
  CHECK(j["checks"].empty());
}

TEST_CASE("json layout") {
  AuditConfig cfg = single_point();
  cfg.grid.n = {1};
  cfg.grid.a = std::vector<u64>{0, 1};
  const auto b = run_checks({CheckId::Thm1bPrinted, CheckId::Cor1Bound}, cfg);
  const auto j = to_json(b);
  REQUIRE(j.contains("meta"));
  for (const char* key : {"p", "q", "omega", "prec", "budget"}) CHECK(j["meta"].contains(key));
  REQUIRE(j["checks"].size() == b.reports.size());
  for (const auto& row : j["checks"]) {
    for (const char* key : {"id", "params", "lhs", "rhs", "measured_exponent", "claimed_exponent", "status", "notes"})
      CHECK(row.contains(key));
    const std::string status = row["status"];
    CHECK((status == "PASS" || status == "DISCREPANCY" || status == "INFO"));
    CHECK((row["claimed_exponent"].is_number_integer() || row["claimed_exponent"] == "exact" ||
           row["claimed_exponent"] == "n/a"));
    if (row["id"] == "thm1b-printed") {
      CHECK(row["lhs"]["residue"].is_number_unsigned());
      CHECK(row["lhs"]["digits"].get<std::string>().size() == 2 * 12 - 1 + 2);
    } else {
      CHECK(row["lhs"].contains("norm"));
    }
  }
}

TEST_CASE("coset volume rows at the worked point") {
  AuditConfig cfg = single_point();
  cfg.grid.a = std::vector<u64>{0};
  cfg.grid.n = {1};
  const auto printed = run_check(CheckId::Thm1bPrinted, cfg);
  const auto candidate = run_check(CheckId::Thm1bCandidate, cfg);
  REQUIRE(printed.size() == 1);
  REQUIRE(candidate.size() == 1);
  CHECK(printed[0].status == Status::Discrepancy);
  CHECK(printed[0].measured_exponent == 2);
  CHECK(candidate[0].status == Status::Info);
  CHECK(candidate[0].rhs.residue % 27 == 16);
  CHECK(printed[0].rhs.residue % 27 == 25);
  CHECK(candidate[0].measured_exponent >= 8);
}

TEST_CASE("serialization is deterministic and thread-independent") {
  AuditConfig cfg = single_point(5, "6", "11");
  cfg.grid.n = {0, 1, 2};
  const std::vector<CheckId> ids{CheckId::Partition, CheckId::Prop1Defect, CheckId::Thm2a, CheckId::Eq7Expansion};
  const auto serial = run_checks(ids, cfg);
  AuditConfig par = cfg;
  par.threads = 4;
  const auto parallel = run_checks(ids, par);
  for (Format f : {Format::Json, Format::Csv, Format::Table}) {
    CHECK(serialize(serial, f) == serialize(serial, f));
    CHECK(serialize(serial, f) == serialize(parallel, f));
  }
}

TEST_CASE("grid files") {
  const std::string path = temp_path("grid.json");
  {
    std::ofstream out(path);
    out << R"({"p": [5], "q": ["1+p", 6], "omega": [1], "n": [1], "k": [2], "prec": 10, "max_level": 4})";
  }
  const AuditConfig cfg = load_grid_file(path, AuditConfig{});
  CHECK(cfg.grid.primes == std::vector<u64>{5});
  CHECK(cfg.grid.q == std::vector<std::string>{"1+p", "6"});
  CHECK(cfg.grid.omega == std::vector<std::string>{"1"});
  CHECK(cfg.precision == 10);
  CHECK(cfg.max_level == 4);
  CHECK(cfg.grid.k == std::vector<unsigned>{2});

  {
    std::ofstream out(path);
    out << R"({"primes": [3], "colour": 1})";
  }
  CHECK_THROWS_AS(load_grid_file(path, AuditConfig{}), InvalidSpec);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(load_grid_file(path, AuditConfig{}), InvalidSpec);
  {
    std::ofstream out(path);
    out << R"({"n": "all"})";
  }
  CHECK_THROWS_AS(load_grid_file(path, AuditConfig{}), InvalidSpec);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_grid_file(path, AuditConfig{}), IoFailure);
}

TEST_CASE("emit") {
  AuditConfig cfg = single_point();
  cfg.grid.q = {"1"};
  const auto b = run_checks({CheckId::ConstExactness}, cfg);
  const std::string path = temp_path("report.json");
  emit(b, Format::Json, path);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["checks"].size() == b.reports.size());
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit(b, Format::Json, "/nonexistent-dir/x/report.json"), IoFailure);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK_THROWS_AS(parse_format("xml"), InvalidSpec);
}
