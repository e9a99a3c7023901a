#pragma once

// Report assembly: CSV tables with per-row verdicts, a JSON summary and
// optional SVG artifacts, written into one output directory.

#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hsfc::cli {

/// %.17g, so re-parsing reproduces the double exactly.
std::string fmt(double v);
std::string fmt(long v);
std::string fmt(bool v);

struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string to_csv() const;
};

struct Verdict {
  std::string case_id;
  bool satisfied = true;
  double margin = 0.0;
  std::string detail;
};

struct ReportBundle {
  std::string command;
  std::deque<Table> tables;  // deque: table() hands out stable references
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::map<std::string, std::string> svgs;  // file name -> content

  Table& table(const std::string& name, std::vector<std::string> header);
  void verdict(std::string case_id, bool satisfied, double margin, std::string detail = {});

  std::size_t failures() const;
  std::optional<double> worst_margin() const;
  bool ok() const { return failures() == 0; }

  /// {command, cases, failures, worst_margin, notes}
  std::string summary_json() const;
  /// Writes <table>.csv, summary.json and the SVGs; creates the directory.
  void write(const std::filesystem::path& dir) const;
};

}  // namespace hsfc::cli
