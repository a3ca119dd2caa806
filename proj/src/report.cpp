#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "padicq/audit.hpp"

namespace padicq {

ReportValue ReportValue::of(const PadicInt& x) {
  ReportValue v;
  v.kind = Kind::Padic;
  v.residue = x.residue();
  v.digits = to_digits(x);
  return v;
}

ReportValue ReportValue::of_norm(const Rational& r) {
  ReportValue v;
  v.kind = Kind::Norm;
  v.norm = rational_to_string(r);
  return v;
}

std::string ReportValue::text() const {
  switch (kind) {
    case Kind::None: return "-";
    case Kind::Padic: return std::to_string(residue);
    case Kind::Norm: return "|.|=" + norm;
  }
  return "-";
}

Format parse_format(const std::string& name) {
  if (name == "table") return Format::Table;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw InvalidSpec("unknown format '" + name + "' (expected table, json or csv)");
}

namespace {

ordered_json value_json(const ReportValue& v) {
  switch (v.kind) {
    case ReportValue::Kind::None: return nullptr;
    case ReportValue::Kind::Padic: return ordered_json{{"residue", v.residue}, {"digits", v.digits}};
    case ReportValue::Kind::Norm: return ordered_json{{"norm", v.norm}};
  }
  return nullptr;
}

ordered_json claim_json(const Claim& c) {
  switch (c.kind) {
    case Claim::Kind::Exponent: return c.exponent;
    case Claim::Kind::Exact: return "exact";
    case Claim::Kind::NotApplicable: return "n/a";
  }
  return "n/a";
}

std::string claim_text(const Claim& c) {
  const auto j = claim_json(c);
  return j.is_string() ? j.get<std::string>() : std::to_string(j.get<int>());
}

std::string param_text(const ordered_json& params) {
  std::string s;
  for (const auto& [key, value] : params.items()) {
    if (!s.empty()) s += ';';
    s += key + '=' + (value.is_string() ? value.get<std::string>() : value.dump());
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string measured_text(const IdentityReport& r) {
  return r.status == Status::Error ? "-" : std::to_string(r.measured_exponent);
}

std::string table(const ReportBundle& b) {
  const std::vector<std::string> head{"check", "params", "lhs", "rhs", "measured", "claimed", "status", "notes"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : b.reports)
    rows.push_back({to_string(r.id), param_text(r.params), r.lhs.text(), r.rhs.text(), measured_text(r),
                    claim_text(r.claimed), to_string(r.status), r.notes});
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c + 1 < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << '\n';
  };
  line(head);
  for (const auto& row : rows) line(row);
  if (b.reports.empty()) return os.str();
  os << "\n" << b.count(Status::Pass) << " pass, " << b.count(Status::Discrepancy) << " discrepancy, "
     << b.count(Status::Info) << " info, " << b.count(Status::Error) << " error\n";
  return os.str();
}

std::string csv(const ReportBundle& b) {
  std::ostringstream os;
  os << "check,params,lhs,rhs,measured_exponent,claimed_exponent,status,notes\n";
  for (const auto& r : b.reports) {
    os << to_string(r.id) << ',' << csv_field(param_text(r.params)) << ',' << csv_field(r.lhs.text()) << ','
       << csv_field(r.rhs.text()) << ',' << measured_text(r) << ',' << claim_text(r.claimed) << ','
       << to_string(r.status) << ',' << csv_field(r.notes) << '\n';
  }
  return os.str();
}

}  // namespace

ordered_json to_json(const ReportBundle& b) {
  ordered_json out;
  out["meta"] = b.meta;
  out["summary"] = {{"pass", b.count(Status::Pass)},
                    {"discrepancy", b.count(Status::Discrepancy)},
                    {"info", b.count(Status::Info)},
                    {"error", b.count(Status::Error)}};
  ordered_json checks = ordered_json::array();
  for (const auto& r : b.reports) {
    ordered_json j;
    j["id"] = to_string(r.id);
    j["params"] = r.params;
    j["lhs"] = value_json(r.lhs);
    j["rhs"] = value_json(r.rhs);
    j["measured_exponent"] = r.status == Status::Error ? ordered_json(nullptr) : ordered_json(r.measured_exponent);
    j["claimed_exponent"] = claim_json(r.claimed);
    j["status"] = to_string(r.status);
    j["notes"] = r.notes;
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  return out;
}

std::string serialize(const ReportBundle& bundle, Format format) {
  switch (format) {
    case Format::Table: return table(bundle);
    case Format::Json: return to_json(bundle).dump(2) + "\n";
    case Format::Csv: return csv(bundle);
  }
  return {};
}

void emit(const ReportBundle& bundle, Format format, const std::string& path) {
  const std::string text = serialize(bundle, format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoFailure("write to '" + path + "' failed");
}

namespace {

// Tokens may be written as JSON strings or bare integers.
std::vector<std::string> tokens(const nlohmann::json& value) {
  std::vector<std::string> out;
  for (const auto& v : value.get<std::vector<nlohmann::json>>()) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  return out;
}

}  // namespace

AuditConfig load_grid_file(const std::string& path, AuditConfig base) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read grid file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec("grid file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw InvalidSpec("grid file must hold a JSON object");
  try {
    auto& g = base.grid;
    for (const auto& [key, value] : j.items()) {
      if (key == "p" || key == "primes") g.primes = value.get<std::vector<u64>>();
      else if (key == "q") g.q = tokens(value);
      else if (key == "omega") g.omega = tokens(value);
      else if (key == "a") g.a = value.get<std::vector<u64>>();
      else if (key == "i") g.i = value.get<std::vector<u64>>();
      else if (key == "n") g.n = value.get<std::vector<unsigned>>();
      else if (key == "k") g.k = value.get<std::vector<unsigned>>();
      else if (key == "euler_orders") g.euler_orders = value.get<std::vector<unsigned>>();
      else if (key == "f") g.f = value.get<std::vector<std::string>>();
      else if (key == "prec") base.precision = value.get<int>();
      else if (key == "max_level") base.max_level = value.get<int>();
      else if (key == "n_max") base.n_max = value.get<unsigned>();
      else if (key == "target_k") base.target_k = value.get<int>();
      else throw InvalidSpec("grid file: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec("grid file '" + path + "': " + e.what());
  }
  return base;
}

}  // namespace padicq
