#pragma once

// Dense complex Hermitian linear algebra: resolvents, the eigendecomposition
// oracle, matrix functions by diagonalization and Schatten norms.

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace hsfc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Japanese bracket <x> = (|x|^2 + 1)^{1/2}.
inline double bracket(double x) { return std::sqrt(x * x + 1.0); }

/// Index p of the Schatten ideal B_p, with p in [1, inf) or p = inf.
class SchattenIndex {
 public:
  explicit SchattenIndex(double p);
  static SchattenIndex infinity();
  /// Accepts "1", "2.5", "inf", "infinity".
  static SchattenIndex parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  double p() const;
  std::string to_string() const;

  friend bool operator==(const SchattenIndex&, const SchattenIndex&) = default;

 private:
  SchattenIndex() = default;
  double p_ = 1.0;
  bool infinite_ = false;
};

/// Finite self-adjoint operator. The stored matrix is the symmetrization
/// (T + T*)/2 of the input; the pre-symmetrization defect is kept.
class HermitianOperator {
 public:
  static constexpr double kDefaultRelTol = 1e-12;

  /// Throws std::invalid_argument if max|T - T*| > rel_tol * max|T|.
  explicit HermitianOperator(const Matrix& entries, double rel_tol = kDefaultRelTol);

  static HermitianOperator diagonal(std::span<const double> values);
  static HermitianOperator diagonal(const RealVector& values);

  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  /// max_{ij} |T_ij - conj(T_ji)| of the matrix handed to the constructor.
  double hermiticity_defect() const { return defect_; }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator scaled(double factor) const;

 private:
  struct Trusted {};
  HermitianOperator(Matrix entries, Trusted);
  Matrix matrix_;
  double defect_ = 0.0;
};

/// S = U diag(eigenvalues) U*, eigenvalues ascending.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  /// ||U*U - I||_max and ||U Lambda U* - S||_max for the operator it came from.
  double unitarity_residual() const;
  double reconstruction_residual(const HermitianOperator& op) const;
};

/// Eigendecomposition; throws std::runtime_error when the residual invariants
/// (unitarity 1e-10, reconstruction 1e-10 * (1 + max|lambda|)) fail.
SpectralDecomposition decompose(const HermitianOperator& op, bool check_residuals = true);

/// Ascending eigenvalues only (no eigenvectors).
RealVector eigenvalues(const HermitianOperator& op);

/// (S - zI)^{-1} by LU factorization. Throws for Im z == 0.
Matrix resolvent(const HermitianOperator& op, Complex z);

/// (S - zI)^{-m}, m >= 0.
Matrix resolvent_power(const HermitianOperator& op, Complex z, int m);

/// Singular values via the eigenvalues of T*T, negative roundoff clamped to 0.
/// Returned in descending order.
RealVector singular_values(const Matrix& t);

double schatten_norm(const Matrix& t, SchattenIndex p);

/// Operator norm, shorthand for schatten_norm(t, infinity).
double operator_norm(const Matrix& t);

double max_abs(const Matrix& t);

using ScalarFunction = std::function<Complex(double)>;

/// Ground-truth f(S) = U diag(f(lambda_k)) U*.
Matrix matrix_function_oracle(const SpectralDecomposition& dec, const ScalarFunction& f);
Matrix matrix_function_oracle(const HermitianOperator& op, const ScalarFunction& f);

}  // namespace hsfc
