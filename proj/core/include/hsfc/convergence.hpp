#pragma once

// Operator sequences S_{j,n} -> S_j with designed resolvent convergence, and
// traces of f(S_n) -> f(S) and of the resolvent / f(S) difference limits.
// At matrix scale strong and norm resolvent convergence coincide; nothing here
// attempts to separate them.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsfc/almost_analytic.hpp"
#include "hsfc/linalg.hpp"

namespace hsfc {

enum class SequenceKind { diagonal_drift, rankone_fade, commuting_pair };

SequenceKind parse_sequence_kind(std::string_view name);
std::string to_string(SequenceKind kind);

struct SequenceParams {
  Index dim = 4;
  std::uint64_t seed = 1;
  double spectrum_lo = -1.5;  // spectra of the limits
  double spectrum_hi = 1.5;
  double strength = 1.0;      // size of the fading perturbation; 0 gives constant sequences
  double gap = 0.5;           // size of the fixed perturbation S2 - S1
};

/// S_{j,n} = S_j + P_j / n.
///   diagonal_drift: P_j = D_j diagonal,
///   rankone_fade:   P_j = v v* with one shared unit vector v (scaled by strength),
///   commuting_pair: S_1, S_2, P_1, P_2 all diagonal in one basis.
class OperatorSequencePair {
 public:
  OperatorSequencePair(SequenceKind kind, HermitianOperator s1, HermitianOperator s2, Matrix p1, Matrix p2);

  SequenceKind kind() const { return kind_; }
  const HermitianOperator& limit_1() const { return s1_; }
  const HermitianOperator& limit_2() const { return s2_; }
  const Matrix& perturbation_1() const { return p1_; }
  const Matrix& perturbation_2() const { return p2_; }
  std::string mode() const;  // designed rate

  std::pair<HermitianOperator, HermitianOperator> term(long n) const;

 private:
  SequenceKind kind_;
  HermitianOperator s1_, s2_;
  Matrix p1_, p2_;
};

OperatorSequencePair make_sequence(SequenceKind kind, const SequenceParams& params = {});

struct ConvergenceTrace {
  std::string label;
  std::vector<std::pair<long, double>> entries;
  double tolerance = 1e-3;
  double slope = 0.0;       // least squares slope of log(value) vs log(n), positive values only
  bool converged = false;   // final <= tolerance and slope <= -0.5 (or identically zero)
  double final_value() const { return entries.empty() ? 0.0 : entries.back().second; }
};

/// Index set n in {1, 2, 4, ..., 2^k <= N} together with N itself.
std::vector<long> sample_indices(long n_max);

/// Fills slope and verdict from entries and tolerance.
void finalize_trace(ConvergenceTrace& trace);

/// max_n conclusion(n) / hypothesis(n) over entries with nonzero hypothesis.
double domination_constant(const ConvergenceTrace& hypothesis, const ConvergenceTrace& conclusion);

inline constexpr long kDefaultN = 10000;
inline constexpr double kDefaultTraceTol = 1e-3;

/// ||f(S_{1,n}) - f(S_1)||_inf via the oracle.
ConvergenceTrace verify_lemma32(const OperatorSequencePair& seq, const SmoothFunctionBundle& f,
                                long n_max = kDefaultN, double tol = kDefaultTraceTol);

struct DifferenceLimitReport {
  ConvergenceTrace hypothesis;  // ||[R_{2,n} - R_2] - [R_{1,n} - R_1]||_p at z0
  ConvergenceTrace conclusion;  // ||[f(S_{2,n}) - f(S_{1,n})] - [f(S_2) - f(S_1)]||_p
  bool applicable() const { return hypothesis.converged; }
  bool verified() const { return hypothesis.converged && conclusion.converged; }
};

DifferenceLimitReport verify_thm35(const OperatorSequencePair& pair, const AlmostAnalyticExtension& ext, SchattenIndex p,
                             Complex z0, long n_max = kDefaultN, double tol = kDefaultTraceTol);

struct PowerLimitReport {
  ConvergenceTrace power_hypothesis;  // m-th power resolvent differences at z0
  ConvergenceTrace mixed_hypothesis;  // (S_{1,n} - z0)^{-m}[R_{2,n}(z0) - R_{1,n}(z0)] vs its limit
  ConvergenceTrace conclusion;        // identical quantity to DifferenceLimitReport::conclusion
  bool applicable() const { return power_hypothesis.converged && mixed_hypothesis.converged; }
  bool verified() const { return applicable() && conclusion.converged; }
};

PowerLimitReport verify_thm37(const OperatorSequencePair& pair, const AlmostAnalyticExtension& ext, SchattenIndex p,
                             int m, Complex z0, long n_max = kDefaultN, double tol = kDefaultTraceTol);

}  // namespace hsfc
