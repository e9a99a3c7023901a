#include "hsfc/convergence.hpp"

#include <cmath>
#include <stdexcept>

#include "hsfc/random.hpp"

namespace hsfc {

namespace {

HermitianOperator add_scaled(const HermitianOperator& s, const Matrix& p, double factor) {
  return HermitianOperator(Matrix(s.matrix() + factor * p));
}

Matrix diagonal_matrix(const RealVector& d) { return d.cast<Complex>().asDiagonal(); }

RealVector uniform_vector(OperatorSampler& rng, Index dim, double lo, double hi) {
  RealVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

Matrix rank_one(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

ConvergenceTrace conclusion_trace(const OperatorSequencePair& pair, const SmoothFunctionBundle& f, SchattenIndex p,
                                  long n_max, double tol) {
  const ScalarFunction fn = f.derivative_fn(0);
  const Matrix limit = matrix_function_oracle(pair.limit_2(), fn) - matrix_function_oracle(pair.limit_1(), fn);
  ConvergenceTrace t;
  t.label = "conclusion p=" + p.to_string();
  t.tolerance = tol;
  for (long n : sample_indices(n_max)) {
    const auto [a, b] = pair.term(n);
    const Matrix d = matrix_function_oracle(b, fn) - matrix_function_oracle(a, fn);
    t.entries.emplace_back(n, schatten_norm(d - limit, p));
  }
  finalize_trace(t);
  return t;
}

}  // namespace

SequenceKind parse_sequence_kind(std::string_view name) {
  if (name == "diagonal_drift") return SequenceKind::diagonal_drift;
  if (name == "rankone_fade") return SequenceKind::rankone_fade;
  if (name == "commuting_pair") return SequenceKind::commuting_pair;
  throw std::invalid_argument("unknown sequence kind '" + std::string(name) +
                              "' (expected diagonal_drift, rankone_fade or commuting_pair)");
}

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::diagonal_drift: return "diagonal_drift";
    case SequenceKind::rankone_fade: return "rankone_fade";
    case SequenceKind::commuting_pair: return "commuting_pair";
  }
  return "?";
}

OperatorSequencePair::OperatorSequencePair(SequenceKind kind, HermitianOperator s1, HermitianOperator s2, Matrix p1,
                                           Matrix p2)
    : kind_(kind), s1_(std::move(s1)), s2_(std::move(s2)), p1_(std::move(p1)), p2_(std::move(p2)) {
  const Index d = s1_.dim();
  if (s2_.dim() != d || p1_.rows() != d || p1_.cols() != d || p2_.rows() != d || p2_.cols() != d) {
    throw std::invalid_argument("sequence pair: dimension mismatch");
  }
  // Validates that the perturbations are Hermitian.
  (void)HermitianOperator(p1_);
  (void)HermitianOperator(p2_);
}

std::string OperatorSequencePair::mode() const { return to_string(kind_) + ": ||R_n - R|| = O(1/n)"; }

std::pair<HermitianOperator, HermitianOperator> OperatorSequencePair::term(long n) const {
  if (n < 1) throw std::invalid_argument("sequence index must be >= 1");
  const double h = 1.0 / static_cast<double>(n);
  return {add_scaled(s1_, p1_, h), add_scaled(s2_, p2_, h)};
}

OperatorSequencePair make_sequence(SequenceKind kind, const SequenceParams& params) {
  if (params.dim < 1) throw std::invalid_argument("sequence dimension must be >= 1");
  if (!(params.spectrum_lo < params.spectrum_hi)) throw std::invalid_argument("empty spectrum interval");
  OperatorSampler rng(params.seed);
  const Index d = params.dim;
  if (kind == SequenceKind::commuting_pair) {
    const RealVector l1 = uniform_vector(rng, d, params.spectrum_lo, params.spectrum_hi);
    const RealVector shift = uniform_vector(rng, d, 0.0, params.gap);
    const RealVector d1 = uniform_vector(rng, d, -params.strength, params.strength);
    const RealVector d2 = uniform_vector(rng, d, -params.strength, params.strength);
    return OperatorSequencePair(kind, HermitianOperator::diagonal(l1), HermitianOperator::diagonal(RealVector(l1 + shift)),
                                diagonal_matrix(d1), diagonal_matrix(d2));
  }
  const HermitianOperator s1 = rng.with_spectrum_in(d, params.spectrum_lo, params.spectrum_hi);
  const Eigen::VectorXcd w = rng.complex_vector(d).normalized();
  const HermitianOperator s2 = add_scaled(s1, rank_one(w), params.gap);
  if (kind == SequenceKind::diagonal_drift) {
    const RealVector d1 = uniform_vector(rng, d, -params.strength, params.strength);
    const RealVector d2 = uniform_vector(rng, d, -params.strength, params.strength);
    return OperatorSequencePair(kind, s1, s2, diagonal_matrix(d1), diagonal_matrix(d2));
  }
  const Eigen::VectorXcd v = rng.complex_vector(d).normalized();
  const Matrix p = params.strength * rank_one(v);
  return OperatorSequencePair(kind, s1, s2, p, p);
}

std::vector<long> sample_indices(long n_max) {
  if (n_max < 1) throw std::invalid_argument("N must be >= 1");
  std::vector<long> out;
  for (long n = 1; n <= n_max; n *= 2) out.push_back(n);
  if (out.back() != n_max) out.push_back(n_max);
  return out;
}

void finalize_trace(ConvergenceTrace& trace) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  bool all_zero = true;
  for (const auto& [n, v] : trace.entries) {
    if (v != 0.0) all_zero = false;
    if (!(v > 0.0)) continue;
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  trace.slope = 0.0;
  if (count >= 2) {
    const double den = count * sxx - sx * sx;
    if (den > 0.0) trace.slope = (count * sxy - sx * sy) / den;
  }
  if (trace.entries.empty() || all_zero) {
    trace.converged = true;
    return;
  }
  trace.converged = trace.final_value() <= trace.tolerance && trace.slope <= -0.5;
}

double domination_constant(const ConvergenceTrace& hypothesis, const ConvergenceTrace& conclusion) {
  if (hypothesis.entries.size() != conclusion.entries.size()) {
    throw std::invalid_argument("traces sampled at different indices");
  }
  double c = 0.0;
  for (std::size_t i = 0; i < hypothesis.entries.size(); ++i) {
    const double h = hypothesis.entries[i].second;
    if (h > 0.0) c = std::max(c, conclusion.entries[i].second / h);
  }
  return c;
}

ConvergenceTrace verify_lemma32(const OperatorSequencePair& seq, const SmoothFunctionBundle& f, long n_max,
                                double tol) {
  const ScalarFunction fn = f.derivative_fn(0);
  const Matrix limit = matrix_function_oracle(seq.limit_1(), fn);
  ConvergenceTrace t;
  t.label = "lemma32";
  t.tolerance = tol;
  for (long n : sample_indices(n_max)) {
    const Matrix fn_n = matrix_function_oracle(seq.term(n).first, fn);
    t.entries.emplace_back(n, operator_norm(fn_n - limit));
  }
  finalize_trace(t);
  return t;
}

DifferenceLimitReport verify_thm35(const OperatorSequencePair& pair, const AlmostAnalyticExtension& ext, SchattenIndex p,
                             Complex z0, long n_max, double tol) {
  if (z0.imag() == 0.0) throw std::invalid_argument("z0 must be non-real");
  DifferenceLimitReport rep;
  const Matrix limit = resolvent(pair.limit_2(), z0) - resolvent(pair.limit_1(), z0);
  rep.hypothesis.label = "hypothesis p=" + p.to_string();
  rep.hypothesis.tolerance = tol;
  for (long n : sample_indices(n_max)) {
    const auto [a, b] = pair.term(n);
    const Matrix d = resolvent(b, z0) - resolvent(a, z0);
    rep.hypothesis.entries.emplace_back(n, schatten_norm(d - limit, p));
  }
  finalize_trace(rep.hypothesis);
  rep.conclusion = conclusion_trace(pair, ext.bundle(), p, n_max, tol);
  return rep;
}

PowerLimitReport verify_thm37(const OperatorSequencePair& pair, const AlmostAnalyticExtension& ext, SchattenIndex p,
                             int m, Complex z0, long n_max, double tol) {
  if (m < 1) throw std::invalid_argument("power limit check needs m >= 1");
  if (z0.imag() == 0.0) throw std::invalid_argument("z0 must be non-real");
  PowerLimitReport rep;
  const HermitianOperator& s1 = pair.limit_1();
  const HermitianOperator& s2 = pair.limit_2();
  const Matrix power_limit = resolvent_power(s2, z0, m) - resolvent_power(s1, z0, m);
  const Matrix mixed_limit = resolvent_power(s1, z0, m) * (resolvent(s2, z0) - resolvent(s1, z0));
  rep.power_hypothesis.label = "power hypothesis m=" + std::to_string(m) + " p=" + p.to_string();
  rep.mixed_hypothesis.label = "mixed hypothesis m=" + std::to_string(m) + " p=" + p.to_string();
  rep.power_hypothesis.tolerance = rep.mixed_hypothesis.tolerance = tol;
  for (long n : sample_indices(n_max)) {
    const auto [a, b] = pair.term(n);
    const Matrix pw = resolvent_power(b, z0, m) - resolvent_power(a, z0, m);
    const Matrix mixed = resolvent_power(a, z0, m) * (resolvent(b, z0) - resolvent(a, z0));
    rep.power_hypothesis.entries.emplace_back(n, schatten_norm(pw - power_limit, p));
    rep.mixed_hypothesis.entries.emplace_back(n, schatten_norm(mixed - mixed_limit, p));
  }
  finalize_trace(rep.power_hypothesis);
  finalize_trace(rep.mixed_hypothesis);
  rep.conclusion = conclusion_trace(pair, ext.bundle(), p, n_max, tol);
  return rep;
}

}  // namespace hsfc
