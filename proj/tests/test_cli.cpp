#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "hsfc/cli/campaign.hpp"
#include "hsfc/random.hpp"

using namespace hsfc;
using namespace hsfc::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hsfc_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

const Table& find_table(const ReportBundle& rep, const std::string& name) {
  for (const auto& t : rep.tables) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no table " + name);
}

template <class Run, class Config>
std::string config_error_key(Run run, const Config& cfg) {
  try {
    run(cfg);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(ParseComplex, AcceptedForms) {
  EXPECT_EQ(parse_complex("i"), Complex(0.0, 1.0));
  EXPECT_EQ(parse_complex("-2i"), Complex(0.0, -2.0));
  EXPECT_EQ(parse_complex("1+0.5i"), Complex(1.0, 0.5));
  EXPECT_EQ(parse_complex("0.3-0.7i"), Complex(0.3, -0.7));
  EXPECT_EQ(parse_complex("2"), Complex(2.0, 0.0));
  EXPECT_EQ(parse_complex(" 1e-3 + 2e+1j "), Complex(1e-3, 20.0));
  EXPECT_EQ(parse_complex("-i"), Complex(0.0, -1.0));
}

TEST(ParseComplex, RejectsGarbage) {
  for (const char* bad : {"", "x", "1+", "1+2", "i2", "1++2i"}) {
    EXPECT_THROW(parse_complex(bad), std::invalid_argument) << bad;
  }
}

TEST(ParseComplex, FormatRoundTrip) {
  for (Complex z : {Complex(0.1, -0.3), Complex(-2.0, 1e-7), Complex(0.0, 1.0)}) {
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
}

TEST(MatrixJson, RoundTrip) {
  OperatorSampler rng(61);
  const Matrix m = rng.gue(3).matrix();
  const auto path = scratch("m.json");
  write_matrix_json(path, m);
  EXPECT_EQ(max_abs(read_matrix_json(path) - m), 0.0);
}

TEST(MatrixJson, RealMatrixWithoutImaginaryPart) {
  const auto path = scratch("real.json");
  std::ofstream(path) << R"({"dim": 2, "re": [[1, 0.5], [0.5, -1]]})";
  const Matrix m = read_matrix_json(path);
  EXPECT_EQ(m(0, 1), Complex(0.5, 0.0));
  EXPECT_EQ(m(1, 1), Complex(-1.0, 0.0));
}

TEST(Apply, MatrixFileCase) {
  const auto path = scratch("apply.json");
  std::ofstream(path) << R"({"dim": 2, "re": [[0.2, 0.1], [0.1, -0.4]], "im": [[0, 0.3], [-0.3, 0]]})";
  ApplyConfig cfg;
  cfg.matrix = path.string();
  const ReportBundle rep = run_apply(cfg);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(find_table(rep, "apply").rows.size(), 1u);
}

TEST(Apply, NonHermitianMatrixFileIsAConfigError) {
  const auto path = scratch("bad.json");
  std::ofstream(path) << R"({"dim": 2, "re": [[0, 1], [0, 0]]})";
  ApplyConfig cfg;
  cfg.matrix = path.string();
  EXPECT_EQ(config_error_key(run_apply, cfg), "matrix");
}

TEST(Apply, ZeroCasesSucceed) {
  ApplyConfig cfg;
  cfg.cases = 0;
  const ReportBundle rep = run_apply(cfg);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.worst_margin().has_value());
  EXPECT_TRUE(find_table(rep, "apply").rows.empty());
}

TEST(Apply, ConfigErrorsNameTheKey) {
  ApplyConfig a;
  a.tol = -1.0;
  EXPECT_EQ(config_error_key(run_apply, a), "tol");
  a = {};
  a.variant = "magic";
  EXPECT_EQ(config_error_key(run_apply, a), "variant");
  a = {};
  a.variant = "derivative";
  a.m = 3;
  EXPECT_EQ(config_error_key(run_apply, a), "ell");
  a = {};
  a.f = "bump(0)";
  EXPECT_EQ(config_error_key(run_apply, a), "f");
  a = {};
  a.z0 = "1";
  a.variant = "khochman";
  EXPECT_EQ(config_error_key(run_apply, a), "z0");
}

TEST(Bound, HundredRowsAllSatisfied) {
  BoundConfig cfg;
  cfg.cases = 100;
  cfg.seed = 7;
  const ReportBundle rep = run_bound(cfg);
  EXPECT_EQ(find_table(rep, "bound").rows.size(), 100u);
  EXPECT_EQ(rep.verdicts.size(), 100u);
  EXPECT_TRUE(rep.ok());
}

TEST(Bound, ConfigErrors) {
  BoundConfig cfg;
  cfg.suite = "nope";
  EXPECT_EQ(config_error_key(run_bound, cfg), "suite");
  cfg = {};
  cfg.p = {"0.5"};
  EXPECT_EQ(config_error_key(run_bound, cfg), "p");
}

TEST(Identities, SmallCampaignPasses) {
  IdentitiesConfig cfg;
  cfg.cases = 5;
  const ReportBundle rep = run_identities(cfg);
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.verdicts.size(), 5u);
}

TEST(Converge, ConfigErrors) {
  ConvergeConfig cfg;
  cfg.theorem = "thm99";
  EXPECT_EQ(config_error_key(run_converge, cfg), "theorem");
  cfg = {};
  cfg.kind = "spiral";
  EXPECT_EQ(config_error_key(run_converge, cfg), "kind");
}

TEST(Witten, WindowPastBandIsAConfigError) {
  WittenConfig cfg;
  cfg.modes = 16;
  EXPECT_EQ(config_error_key(run_witten, cfg), "window");
}

TEST(Majorant, RejectsNonIntegrableOrder) {
  MajorantConfig cfg;
  cfg.beta = {-0.5};
  EXPECT_EQ(config_error_key(run_majorant, cfg), "beta");
}

TEST(Report, DeterministicCsvAndSummaryKeys) {
  BoundConfig cfg;
  cfg.suite = "all";
  cfg.cases = 10;
  const ReportBundle a = run_bound(cfg);
  const ReportBundle b = run_bound(cfg);
  ASSERT_EQ(a.tables.size(), b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) EXPECT_EQ(a.tables[i].to_csv(), b.tables[i].to_csv());
  const auto j = nlohmann::json::parse(a.summary_json());
  for (const char* key : {"command", "cases", "failures", "worst_margin", "notes", "failed_cases"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["failures"], 0);
}

TEST(Report, WritesFiles) {
  MajorantConfig cfg;
  cfg.beta = {-2.0};
  cfg.nx = cfg.ny = 40;
  const auto dir = scratch("majorant_out");
  std::filesystem::remove_all(dir);
  run_majorant(cfg).write(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "majorant.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
}
