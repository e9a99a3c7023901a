#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "hsfc/smooth_function.hpp"

using namespace hsfc;

namespace {

// Closed forms written out by hand: with t = (x-c)/r, u = 1 - t^2,
// f = a e^{1 - 1/u},  f' = a (-2t/u^2) e^{1-1/u} / r,  f'' = a (6t^4 - 2)/u^4 e^{1-1/u} / r^2.
struct BumpByHand {
  double c, r, a;
  double t(double x) const { return (x - c) / r; }
  double e(double x) const {
    const double u = 1.0 - t(x) * t(x);
    return u > 0.0 ? a * std::exp(1.0 - 1.0 / u) : 0.0;
  }
  double d1(double x) const {
    const double s = t(x), u = 1.0 - s * s;
    return u > 0.0 ? -2.0 * s / (u * u) * e(x) / r : 0.0;
  }
  double d2(double x) const {
    const double s = t(x), u = 1.0 - s * s;
    return u > 0.0 ? (6.0 * s * s * s * s - 2.0) / (u * u * u * u) * e(x) / (r * r) : 0.0;
  }
};

double central(const SmoothFunctionBundle& f, int k, double x, double h) {
  return (f.eval(k, x + h).real() - f.eval(k, x - h).real()) / (2.0 * h);
}

}  // namespace

TEST(Bump, ValueAtCenterIsAmplitude) {
  EXPECT_DOUBLE_EQ(bump(0.0, 1.0)(0.0).real(), 1.0);
  EXPECT_DOUBLE_EQ(bump(3.0, 0.5, 2.5)(3.0).real(), 2.5);
}

TEST(Bump, VanishesOutsideSupport) {
  const auto f = bump(1.0, 2.0);
  for (double x : {-1.0, -1.5, 3.0, 7.0}) {
    for (int k = 0; k <= f.max_order(); ++k) EXPECT_EQ(f.eval(k, x), Complex(0.0)) << x << " " << k;
  }
  const FunctionClass cls = f.function_class();
  EXPECT_TRUE(cls.is_compact());
  EXPECT_DOUBLE_EQ(cls.support_lo, -1.0);
  EXPECT_DOUBLE_EQ(cls.support_hi, 3.0);
  EXPECT_DOUBLE_EQ(cls.support_radius(), 3.0);
}

TEST(Bump, FirstTwoDerivativesMatchHandFormulas) {
  const BumpByHand ref{0.3, 1.7, 1.4};
  const auto f = bump(ref.c, ref.r, ref.a);
  for (double x = -1.35; x < 1.95; x += 0.137) {
    EXPECT_NEAR(f(x).real(), ref.e(x), 1e-14);
    EXPECT_NEAR(f.eval(1, x).real(), ref.d1(x), 1e-12 * (1.0 + std::abs(ref.d1(x))));
    EXPECT_NEAR(f.eval(2, x).real(), ref.d2(x), 1e-12 * (1.0 + std::abs(ref.d2(x))));
  }
}

TEST(Bump, HigherDerivativesMatchFiniteDifferences) {
  const auto f = bump(0.0, 2.0);
  for (int k = 1; k <= 6; ++k) {
    for (double x : {-1.6, -0.9, -0.2, 0.35, 1.1, 1.55}) {
      const double fd = central(f, k - 1, x, 1e-5);
      EXPECT_NEAR(f.eval(k, x).real(), fd, 1e-5 * (1.0 + std::abs(fd))) << "k=" << k << " x=" << x;
    }
  }
}

TEST(Bump, RejectsBadParameters) {
  EXPECT_THROW(bump(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(bump(0.0, -1.0), std::invalid_argument);
}

TEST(Bump, DerivativeOrderBeyondMaxThrows) {
  const auto f = bump(0.0, 1.0, 1.0, 3);
  EXPECT_ANY_THROW(f.eval(4, 0.1));
}

TEST(JapanesePower, DerivativesMatchClosedForms) {
  const double beta = -1.5;
  const auto f = japanese_power(beta);
  for (double x : {-7.0, -1.0, 0.0, 0.4, 3.0, 40.0}) {
    const double w = 1.0 + x * x;
    EXPECT_NEAR(f(x).real(), std::pow(w, beta / 2.0), 1e-15);
    EXPECT_NEAR(f.eval(1, x).real(), beta * x * std::pow(w, beta / 2.0 - 1.0), 1e-15);
    const double d2 = beta * std::pow(w, beta / 2.0 - 1.0) + beta * (beta - 2.0) * x * x * std::pow(w, beta / 2.0 - 2.0);
    EXPECT_NEAR(f.eval(2, x).real(), d2, 1e-14);
  }
  EXPECT_FALSE(f.function_class().is_compact());
  EXPECT_DOUBLE_EQ(f.function_class().beta, beta);
}

TEST(JapanesePower, SymbolConstantsAreFinite) {
  const auto f = japanese_power(-2.0);
  std::vector<double> grid;
  for (int i = -200; i <= 200; ++i) grid.push_back(0.5 * i);
  const auto c = symbol_constants(f, -2.0, 4, grid);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_NEAR(c[0], 1.0, 1e-12);
  for (double v : c) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0.0);
  }
}

TEST(PlaneWave, DerivativesArePowersOfIOmega) {
  const auto f = plane_wave(1.7);
  const double x = 0.9;
  Complex factor = 1.0;
  for (int k = 0; k <= 5; ++k) {
    EXPECT_NEAR(std::abs(f.eval(k, x) - factor * std::exp(Complex(0.0, 1.7 * x))), 0.0, 1e-14);
    factor *= Complex(0.0, 1.7);
  }
}

TEST(Product, LeibnizRule) {
  const auto f = bump(0.0, 2.0);
  const auto g = plane_wave(0.8);
  const auto fg = product(f, g);
  const double x = 0.37;
  const Complex expected = f.eval(2, x) * g(x) + 2.0 * f.eval(1, x) * g.eval(1, x) + f(x) * g.eval(2, x);
  EXPECT_NEAR(std::abs(fg.eval(2, x) - expected), 0.0, 1e-13);
  EXPECT_TRUE(fg.function_class().is_compact());
}

TEST(Conjugate, ConjugatesEveryDerivative) {
  const auto g = conjugate(plane_wave(2.0));
  EXPECT_NEAR(std::abs(g.eval(1, 0.3) - std::conj(Complex(0.0, 2.0) * std::exp(Complex(0.0, 0.6)))), 0.0, 1e-14);
}

TEST(FiniteDifference, FlaggedAsReducedAccuracy) {
  const auto f = finite_difference([](double x) { return Complex(std::sin(x)); }, FunctionClass::symbol(0.0), "sin");
  EXPECT_TRUE(f.reduced_accuracy());
  EXPECT_FALSE(bump(0.0, 1.0).reduced_accuracy());
  EXPECT_NEAR(f.eval(1, 0.2).real(), std::cos(0.2), 1e-4);
}

TEST(Spec, ParsesKnownForms) {
  EXPECT_EQ(parse_function_spec("bump(0,2)").describe(), "bump(0,2)");
  EXPECT_DOUBLE_EQ(parse_function_spec(" bump( 1.5 , 0.5 , 3 ) ")(1.5).real(), 3.0);
  EXPECT_DOUBLE_EQ(parse_function_spec("symbol(-2)").function_class().beta, -2.0);
  EXPECT_NEAR(std::abs(parse_function_spec("wave(1)")(0.0) - 1.0), 0.0, 1e-15);
}

TEST(Spec, RejectsMalformed) {
  for (const char* bad : {"", "bump", "bump(1)", "bump(0,1,2,3)", "gauss(0,1)", "bump(a,b)", "symbol()"}) {
    EXPECT_THROW(parse_function_spec(bad), std::invalid_argument) << bad;
  }
}
