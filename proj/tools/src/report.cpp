#include "hsfc/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace hsfc::cli {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(long v) { return std::to_string(v); }

std::string fmt(bool v) { return v ? "true" : "false"; }

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::logic_error("row width does not match header of table " + name);
  rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << content;
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

Table& ReportBundle::table(const std::string& name, std::vector<std::string> header) {
  for (auto& t : tables) {
    if (t.name == name) return t;
  }
  tables.push_back(Table{name, std::move(header), {}});
  return tables.back();
}

void ReportBundle::verdict(std::string case_id, bool satisfied, double margin, std::string detail) {
  verdicts.push_back(Verdict{std::move(case_id), satisfied, margin, std::move(detail)});
}

std::size_t ReportBundle::failures() const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.satisfied; }));
}

std::optional<double> ReportBundle::worst_margin() const {
  std::optional<double> worst;
  for (const auto& v : verdicts) {
    if (!worst || v.margin < *worst) worst = v.margin;
  }
  return worst;
}

std::string ReportBundle::summary_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["cases"] = verdicts.size();
  j["failures"] = failures();
  if (auto w = worst_margin()) {
    j["worst_margin"] = *w;
  } else {
    j["worst_margin"] = nullptr;
  }
  j["notes"] = notes;
  nlohmann::ordered_json failed = nlohmann::ordered_json::array();
  for (const auto& v : verdicts) {
    if (!v.satisfied) failed.push_back({{"case", v.case_id}, {"margin", v.margin}, {"detail", v.detail}});
  }
  j["failed_cases"] = failed;
  return j.dump(2) + "\n";
}

void ReportBundle::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& t : tables) write_file(dir / (t.name + ".csv"), t.to_csv());
  write_file(dir / "summary.json", summary_json());
  for (const auto& [name, content] : svgs) write_file(dir / name, content);
}

}  // namespace hsfc::cli
