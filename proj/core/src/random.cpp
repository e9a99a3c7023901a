#include "hsfc/random.hpp"

#include <cmath>

namespace hsfc {

double OperatorSampler::normal() {
  // Box-Muller on the raw engine so the stream does not depend on the
  // standard library's distribution implementations.
  constexpr double kTwoPi = 2.0 * kPi;
  const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double OperatorSampler::uniform(double lo, double hi) {
  const double u = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Index OperatorSampler::uniform_index(Index lo, Index hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Index>(rng_() % span);
}

Complex OperatorSampler::nonreal_point(double radius) {
  const double re = uniform(-radius, radius);
  double im = uniform(0.05 * radius, radius);
  if (rng_() & 1U) im = -im;
  return {re, im};
}

Eigen::VectorXcd OperatorSampler::complex_vector(Index dim) {
  Eigen::VectorXcd v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal();
    const double im = normal();
    v[i] = Complex(re, im) / std::sqrt(2.0);
  }
  return v;
}

Matrix OperatorSampler::complex_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal();
      const double im = normal();
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

HermitianOperator OperatorSampler::gue(Index dim, double scale) {
  const Matrix x = complex_matrix(dim, dim);
  return HermitianOperator(Matrix(0.5 * scale * (x + x.adjoint())));
}

Matrix OperatorSampler::unitary(Index dim) {
  const Matrix x = complex_matrix(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

HermitianOperator OperatorSampler::with_spectrum(const RealVector& values) {
  const Matrix u = unitary(values.size());
  const Matrix s = u * values.cast<Complex>().asDiagonal() * u.adjoint();
  return HermitianOperator(Matrix(0.5 * (s + s.adjoint())));
}

HermitianOperator OperatorSampler::with_spectrum_in(Index dim, double lo, double hi) {
  RealVector values(dim);
  for (Index i = 0; i < dim; ++i) values[i] = uniform(lo, hi);
  return with_spectrum(values);
}

}  // namespace hsfc
