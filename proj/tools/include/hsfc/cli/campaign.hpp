#pragma once

// Campaign configurations and runners behind the `hsfc` subcommands. Every
// runner validates its whole configuration before computing anything.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsfc/cli/report.hpp"
#include "hsfc/linalg.hpp"

namespace hsfc::cli {

/// Invalid configuration; `key` names the offending option.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument("--" + key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// "i", "-2i", "1+0.5i", "0.3-0.7i", "2".
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

/// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for real matrices.
Matrix read_matrix_json(const std::filesystem::path& path);
void write_matrix_json(const std::filesystem::path& path, const Matrix& m);

struct ApplyConfig {
  std::string variant = "plain";  // plain | khochman | semigroup | derivative
  std::string matrix;             // JSON matrix file; empty: random cases
  long cases = 20;
  long dim_min = 2;
  long dim_max = 8;
  double spectrum_lo = -1.8;
  double spectrum_hi = 1.8;
  std::uint64_t seed = 1;
  std::string f = "bump(0,2)";
  double tol = 1e-6;
  long ell = 2;
  std::optional<double> strip_eps;
  long max_depth = 12;
  std::string cutoff = "bump";  // bump | smoothstep
  long m = 1;
  std::string z0 = "i";
  double t = 1.0;
};

struct BoundConfig {
  std::string suite = "lemma31";  // lemma31 | A0 | all
  long cases = 100;
  std::uint64_t seed = 7;
  std::vector<std::string> p = {"inf"};
  std::string z0 = "i";
  std::string f = "bump(0,1)";
  double tol = 1e-8;
  long dim_min = 2;
  long dim_max = 8;
};

struct IdentitiesConfig {
  long cases = 100;
  std::uint64_t seed = 11;
  long m_max = 5;
  long nodes = 128;
  long dim_min = 2;
  long dim_max = 8;
};

struct ConvergeConfig {
  std::string theorem = "thm35";  // lemma32 | thm35 | thm37
  std::string kind = "rankone_fade";
  std::string p = "1";
  long m = 2;
  long n_max = 10000;
  std::string z0 = "i";
  long dim = 4;
  std::uint64_t seed = 3;
  double tol = 1e-3;
  std::string f = "bump(0,2)";
};

struct WittenConfig {
  std::string phi = "bump(50,5)";
  std::optional<double> flux = 3.14159265358979323846;  // rescales phi to this grid integral
  double length = 100.0;
  long modes = 2048;
  std::vector<double> sweep = {1, 10, 100};
  double window_lo = -1.0;
  double window_hi = 1.0;
  double smoothing = 20.0;  // moving-average width in units of 2 pi / L
  double grid_half_width = 0.2;
  long grid_points = 41;
  long fit_points = 5;
  double tolerance = 0.02;
  bool plot = true;
};

struct MajorantConfig {
  std::vector<double> beta = {-1.5, -2.0, -3.0};
  std::string z0 = "i";
  long nx = 400;
  long ny = 400;
};

ReportBundle run_apply(const ApplyConfig& cfg);
ReportBundle run_bound(const BoundConfig& cfg);
ReportBundle run_identities(const IdentitiesConfig& cfg);
ReportBundle run_converge(const ConvergeConfig& cfg);
ReportBundle run_witten(const WittenConfig& cfg);
ReportBundle run_majorant(const MajorantConfig& cfg);

}  // namespace hsfc::cli
