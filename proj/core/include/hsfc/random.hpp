#pragma once

#include <cstdint>
#include <random>

#include "hsfc/linalg.hpp"

namespace hsfc {

/// Deterministic source of random test operators. All draws come from one
/// mt19937_64 stream seeded at construction.
class OperatorSampler {
 public:
  explicit OperatorSampler(std::uint64_t seed) : rng_(seed) {}

  /// GUE-style: (X + X*)/2 with i.i.d. standard complex Gaussian X, times scale.
  HermitianOperator gue(Index dim, double scale = 1.0);

  /// U diag(lambda) U* with Haar-like U and lambda uniform in (lo, hi).
  HermitianOperator with_spectrum_in(Index dim, double lo, double hi);

  /// U diag(values) U* with Haar-like U.
  HermitianOperator with_spectrum(const RealVector& values);

  /// Haar-distributed unitary (QR of a complex Gaussian, phases fixed).
  Matrix unitary(Index dim);

  /// Standard complex Gaussian vector.
  Eigen::VectorXcd complex_vector(Index dim);

  Matrix complex_matrix(Index rows, Index cols);

  double uniform(double lo, double hi);
  Index uniform_index(Index lo, Index hi);  // inclusive bounds
  Complex nonreal_point(double radius);     // |Im| bounded away from 0

  std::mt19937_64& engine() { return rng_; }

 private:
  double normal();
  std::mt19937_64 rng_;
};

}  // namespace hsfc
