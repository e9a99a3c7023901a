#include "hsfc/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsfc {

SchattenIndex::SchattenIndex(double p) : p_(p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Schatten index must satisfy p >= 1");
  if (std::isinf(p)) {
    infinite_ = true;
    p_ = std::numeric_limits<double>::infinity();
  }
}

SchattenIndex SchattenIndex::infinity() {
  SchattenIndex idx;
  idx.infinite_ = true;
  idx.p_ = std::numeric_limits<double>::infinity();
  return idx;
}

SchattenIndex SchattenIndex::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "oo") return infinity();
  std::string s(text);
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid Schatten index '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("invalid Schatten index '" + s + "'");
  return SchattenIndex(p);
}

double SchattenIndex::p() const { return p_; }

std::string SchattenIndex::to_string() const {
  if (infinite_) return "inf";
  std::string s = std::to_string(p_);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

HermitianOperator::HermitianOperator(const Matrix& entries, double rel_tol) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw std::invalid_argument("HermitianOperator requires a non-empty square matrix");
  }
  if (!entries.allFinite()) throw std::invalid_argument("HermitianOperator entries must be finite");
  const Matrix adj = entries.adjoint();
  defect_ = (entries - adj).cwiseAbs().maxCoeff();
  const double scale = entries.cwiseAbs().maxCoeff();
  if (defect_ > rel_tol * scale) {
    throw std::invalid_argument("matrix is not Hermitian: defect " + std::to_string(defect_) +
                                " exceeds " + std::to_string(rel_tol) + " * max|entry|");
  }
  matrix_ = 0.5 * (entries + adj);
}

HermitianOperator::HermitianOperator(Matrix entries, Trusted) : matrix_(std::move(entries)) {}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("diagonal operator needs at least one entry");
  Matrix m = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = values[i];
  return HermitianOperator(std::move(m), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(const RealVector& values) {
  return diagonal(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch in operator sum");
  return HermitianOperator(Matrix(matrix_ + other.matrix_), Trusted{});
}

HermitianOperator HermitianOperator::scaled(double factor) const {
  return HermitianOperator(Matrix(factor * matrix_), Trusted{});
}

double SpectralDecomposition::unitarity_residual() const {
  const Index n = eigenvectors.cols();
  return (eigenvectors.adjoint() * eigenvectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double SpectralDecomposition::reconstruction_residual(const HermitianOperator& op) const {
  const Matrix rebuilt = eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  return (rebuilt - op.matrix()).cwiseAbs().maxCoeff();
}

SpectralDecomposition decompose(const HermitianOperator& op, bool check_residuals) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition did not converge");
  SpectralDecomposition dec{solver.eigenvalues(), solver.eigenvectors()};
  if (check_residuals) {
    const double lam = dec.eigenvalues.cwiseAbs().maxCoeff();
    if (dec.unitarity_residual() > 1e-10 ||
        dec.reconstruction_residual(op) > 1e-10 * (1.0 + lam)) {
      throw std::runtime_error("eigendecomposition residual above tolerance (ill-conditioned input)");
    }
  }
  return dec;
}

RealVector eigenvalues(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration did not converge");
  return solver.eigenvalues();
}

Matrix resolvent(const HermitianOperator& op, Complex z) {
  if (z.imag() == 0.0) throw std::invalid_argument("resolvent requires Im z != 0");
  Matrix shifted = op.matrix();
  shifted.diagonal().array() -= z;
  return shifted.partialPivLu().inverse();
}

Matrix resolvent_power(const HermitianOperator& op, Complex z, int m) {
  if (m < 0) throw std::invalid_argument("resolvent power must be nonnegative");
  const Index n = op.dim();
  if (m == 0) return Matrix::Identity(n, n);
  const Matrix r = resolvent(op, z);
  Matrix out = r;
  for (int k = 1; k < m; ++k) out = out * r;
  return out;
}

RealVector singular_values(const Matrix& t) {
  // Jacobi SVD keeps small singular values to high relative accuracy, which
  // matters for trace norms of near-cancelling differences.
  return Eigen::JacobiSVD<Matrix>(t).singularValues();  // descending
}

double schatten_norm(const Matrix& t, SchattenIndex p) {
  if (t.size() == 0) return 0.0;
  const RealVector s = singular_values(t);
  if (p.is_infinite()) return s[0];
  const double top = s[0];
  if (top == 0.0) return 0.0;
  // Scale by the largest singular value to keep s^p representable.
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) acc += std::pow(s[i] / top, p.p());
  return top * std::pow(acc, 1.0 / p.p());
}

double operator_norm(const Matrix& t) { return schatten_norm(t, SchattenIndex::infinity()); }

double max_abs(const Matrix& t) { return t.size() == 0 ? 0.0 : t.cwiseAbs().maxCoeff(); }

Matrix matrix_function_oracle(const SpectralDecomposition& dec, const ScalarFunction& f) {
  const Index n = dec.eigenvalues.size();
  Eigen::VectorXcd values(n);
  for (Index k = 0; k < n; ++k) {
    values[k] = f(dec.eigenvalues[k]);
    if (!std::isfinite(values[k].real()) || !std::isfinite(values[k].imag())) {
      throw std::domain_error("function is not finite on the spectrum");
    }
  }
  return dec.eigenvectors * values.asDiagonal() * dec.eigenvectors.adjoint();
}

Matrix matrix_function_oracle(const HermitianOperator& op, const ScalarFunction& f) {
  return matrix_function_oracle(decompose(op), f);
}

}  // namespace hsfc
