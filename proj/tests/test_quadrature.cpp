#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "hsfc/linalg.hpp"
#include "hsfc/quadrature.hpp"

using namespace hsfc;

TEST(GaussLegendre, ExactForDegree2nMinus1) {
  for (int n = 1; n <= 12; ++n) {
    const GaussRule& g = gauss_legendre(n);
    ASSERT_EQ(static_cast<int>(g.nodes.size()), n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += g.weights[i] * std::pow(g.nodes[i], d);
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      EXPECT_NEAR(q, exact, 1e-14) << "n=" << n << " d=" << d;
    }
  }
}

TEST(Composite, SineOverHalfPeriod) {
  EXPECT_NEAR(integrate_composite([](double x) { return std::sin(x); }, 0.0, kPi, 8), 2.0, 1e-14);
}

TEST(CompensatedSum, RecoversLostLowBits) {
  CompensatedSum<double> s(0.0);
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  EXPECT_NEAR(s.value() - 1.0, 1e-13, 2.3e-16);  // one ulp of 1; naive summation stays at exactly 1
}

namespace {

const std::array<Rect, 1> kUnit{Rect{0.0, 1.0, 0.0, 1.0}};

}  // namespace

TEST(Cubature, PolynomialExactOnCoarseGrid) {
  CubatureOptions opts;
  opts.cells_x = opts.cells_y = 1;
  const auto r = adaptive_cubature<double>([](double x, double y) { return x * x * y * y * y; }, kUnit, opts, 0.0,
                                           [](double v) { return std::abs(v); });
  EXPECT_NEAR(r.value, 1.0 / 12.0, 1e-15);
  EXPECT_TRUE(r.converged);
}

TEST(Cubature, SmoothIntegrandToTolerance) {
  CubatureOptions opts;
  opts.tol = 1e-12;
  const auto r = adaptive_cubature<double>([](double x, double y) { return std::exp(x + y); }, kUnit, opts, 0.0,
                                           [](double v) { return std::abs(v); });
  EXPECT_NEAR(r.value, (std::exp(1.0) - 1.0) * (std::exp(1.0) - 1.0), 1e-12);
}

TEST(Cubature, RefinesTowardSingularCorner) {
  CubatureOptions opts;
  opts.tol = 1e-8;
  opts.max_depth = 25;
  // \int_0^1\int_0^1 (x + y)^{-1/2} = 4 (2 sqrt 2 - 2) / 3
  const auto r = adaptive_cubature<double>([](double x, double y) { return 1.0 / std::sqrt(x + y); }, kUnit, opts, 0.0,
                                           [](double v) { return std::abs(v); });
  EXPECT_NEAR(r.value, 4.0 * (2.0 * std::sqrt(2.0) - 2.0) / 3.0, 1e-7);
  EXPECT_GT(r.cells, 64u);
}

TEST(Cubature, MatrixValuedAndAccumulatingFormsAgree) {
  const auto f = [](double x, double y) {
    Matrix m(2, 2);
    m << std::cos(x * y), Complex(0.0, x), Complex(y, 0.0), std::exp(-x - y);
    return m;
  };
  const Matrix zero = Matrix::Zero(2, 2);
  const auto norm = [](const Matrix& m) { return m.norm(); };
  CubatureOptions opts;
  opts.tol = 1e-10;
  const auto plain = adaptive_cubature<Matrix>(f, kUnit, opts, zero, norm);
  const auto accumulating = adaptive_cubature<Matrix>(
      [&](double x, double y, double c, Matrix& acc) { acc.noalias() += c * f(x, y); }, kUnit, opts, zero, norm);
  EXPECT_LT(max_abs(plain.value - accumulating.value), 1e-15);
  EXPECT_NEAR(std::abs(plain.value(0, 1) - Complex(0.0, 0.5)), 0.0, 1e-14);
  EXPECT_NEAR(plain.value(1, 1).real(), (1.0 - std::exp(-1.0)) * (1.0 - std::exp(-1.0)), 1e-12);
}

TEST(Cubature, DeterministicAcrossRuns) {
  CubatureOptions opts;
  opts.tol = 1e-9;
  const std::array<Rect, 2> regions{Rect{-1.0, 1.0, 0.01, 1.0}, Rect{-1.0, 1.0, -1.0, -0.01}};
  const auto f = [](double x, double y) { return 1.0 / (x * x + y * y); };
  const auto a = adaptive_cubature<double>(f, regions, opts, 0.0, [](double v) { return std::abs(v); });
  const auto b = adaptive_cubature<double>(f, regions, opts, 0.0, [](double v) { return std::abs(v); });
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.cells, b.cells);
}

TEST(Cubature, StopsAtCellBudget) {
  CubatureOptions opts;
  opts.tol = 1e-300;
  opts.max_cells = 200;
  const auto r = adaptive_cubature<double>([](double x, double y) { return 1.0 / std::sqrt(x + y); }, kUnit, opts, 0.0,
                                           [](double v) { return std::abs(v); });
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.cells, 203u);
}
