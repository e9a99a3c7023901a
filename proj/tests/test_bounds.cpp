#include <gtest/gtest.h>

#include <cmath>

#include "hsfc/bounds.hpp"
#include "hsfc/random.hpp"

using namespace hsfc;

namespace {

HermitianOperator diag(std::initializer_list<double> values) {
  const std::vector<double> v(values);
  return HermitianOperator::diagonal(std::span<const double>(v));
}

HermitianOperator rank_one_perturbation(OperatorSampler& rng, const HermitianOperator& s, double size) {
  const Eigen::VectorXcd v = rng.complex_vector(s.dim()).normalized();
  return HermitianOperator(Matrix(s.matrix() + size * v * v.adjoint()));
}

// Midpoint rule on a uniform grid over the upper half of the support box,
// doubled by the y -> -y symmetry of |dbar| for real f.
double davies_midpoint(const AlmostAnalyticExtension& ext, Complex z0, int nx, int ny) {
  const FunctionClass cls = ext.bundle().function_class();
  const double h = ext.support_height();
  const double dx = (cls.support_hi - cls.support_lo) / nx, dy = h / ny;
  double acc = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double x = cls.support_lo + (i + 0.5) * dx;
    double col = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double y = (j + 0.5) * dy;
      const Complex z(x, y);
      col += std::abs(ext.dbar(z)) * (std::norm(z0) + std::norm(z)) / (y * y);
    }
    acc += col;
  }
  return 2.0 * 8.0 / kPi * acc * dx * dy;
}

}  // namespace

TEST(Davies, ReferenceBumpValue) {
  const AlmostAnalyticExtension ext(bump(0.0, 1.0));
  const DaviesConstant c = davies_constant(ext, kI);
  // Independent check on a uniform grid, then the frozen regression value.
  EXPECT_NEAR(c.value, davies_midpoint(ext, kI, 1200, 1200), 1e-4 * c.value);
  EXPECT_NEAR(c.value, 795.0036806, 2e-5);
  EXPECT_LE(c.est_error, 1e-8 * c.value * 10.0);
}

TEST(Davies, NonnegativeAndGrowsWithZ0) {
  const AlmostAnalyticExtension ext(bump(0.3, 0.8));
  const double a = davies_constant(ext, kI, 1e-6).value;
  const double b = davies_constant(ext, Complex(2.0, 3.0), 1e-6).value;
  EXPECT_GT(a, 0.0);
  EXPECT_GT(b, a);
}

TEST(Davies, RequiresEllTwoAndIntegrableSymbol) {
  EXPECT_THROW(davies_constant(AlmostAnalyticExtension(bump(0.0, 1.0), 3), kI), std::invalid_argument);
  EXPECT_THROW(davies_constant(AlmostAnalyticExtension(japanese_power(-0.5)), kI), std::domain_error);
}

TEST(Davies, SymbolClassFinite) {
  const DaviesConstant c = davies_constant(AlmostAnalyticExtension(japanese_power(-2.0)), kI, 1e-5);
  EXPECT_TRUE(std::isfinite(c.value));
  EXPECT_GT(c.value, 0.0);
  EXPECT_GT(c.tail_bound, 0.0);
}

TEST(DifferenceBound, EqualOperatorsHaveZeroLhs) {
  OperatorSampler rng(41);
  const HermitianOperator s = rng.gue(4);
  const AlmostAnalyticExtension ext(bump(0.0, 1.0));
  const BoundReport r = verify_lemma31(s, s, ext, SchattenIndex(1.0), kI, 1e-6);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_TRUE(r.satisfied);
}

TEST(DifferenceBound, RankOnePerturbationTraceNorm) {
  OperatorSampler rng(42);
  const HermitianOperator s1 = rng.gue(4, 0.5);
  const HermitianOperator s2 = rank_one_perturbation(rng, s1, 0.7);
  const AlmostAnalyticExtension ext(bump(0.0, 1.0));
  const DaviesConstant c = davies_constant(ext, kI);
  for (const char* p : {"1", "2", "inf"}) {
    const BoundReport r = verify_lemma31(s1, s2, ext, SchattenIndex::parse(p), kI, c);
    EXPECT_TRUE(r.satisfied) << p;
    EXPECT_GT(r.margin, 0.0) << p;
    EXPECT_GT(r.lhs, 0.0) << p;
  }
}

TEST(MajorantCheck, InverseSquareSymbol) {
  MajorantGrid grid;
  grid.nx = grid.ny = 120;
  const MajorantReport r = majorant_check(AlmostAnalyticExtension(japanese_power(-2.0)), kI, grid);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_NEAR(r.shape_integral, 6.0 * kPi, 1e-6);
  EXPECT_NEAR(r.closed_form, 6.0 * kPi, 1e-12);
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.tail_integral, r.fitted_C_hat * r.shape_integral, 1e-9 * r.tail_integral);
}

TEST(MajorantCheck, RejectsCompactAndNonIntegrable) {
  EXPECT_THROW(majorant_check(AlmostAnalyticExtension(bump(0.0, 1.0)), kI), std::domain_error);
  EXPECT_THROW(majorant_check(AlmostAnalyticExtension(japanese_power(-1.0)), kI), std::domain_error);
}

TEST(IdentityMinusOne, TrivialCases) {
  OperatorSampler rng(43);
  const HermitianOperator t1 = rng.gue(4), t2 = rng.gue(4);
  EXPECT_LE(verify_identity_Aminus1(t1, t1, Complex(0.5, 1.0), Complex(-1.0, -2.0)), 1e-12);
  EXPECT_LE(verify_identity_Aminus1(t1, t2, Complex(0.5, 1.0), Complex(0.5, 1.0)), 1e-12);
}

TEST(IdentityMinusOne, RandomFiveByFive) {
  OperatorSampler rng(44);
  const HermitianOperator t1 = rng.gue(5), t2 = rng.gue(5);
  EXPECT_LE(verify_identity_Aminus1(t1, t2, Complex(1.0, 1.0), Complex(0.0, -2.0)), 1e-10);
}

TEST(ResolventEstimate, CoincidentPoints) {
  const Complex z0(0.3, 2.0);
  const BoundReport r = verify_bound_A0(diag({-1.0, 0.5}), z0, z0);
  EXPECT_NEAR(r.lhs, 1.0, 1e-14);
  EXPECT_NEAR(r.rhs, 4.0 * std::abs(z0) / std::abs(z0.imag()), 1e-14);
  EXPECT_TRUE(r.satisfied);
}

TEST(ResolventEstimate, ScalarSweep) {
  const Complex z = kI, z0(0.0, 2.0);
  for (double l = -10.0; l <= 10.0; l += 0.05) {
    const BoundReport r = verify_bound_A0(diag({l}), z, z0);
    EXPECT_NEAR(r.lhs, std::abs((l - z0) / (l - z)), 1e-13);
    EXPECT_TRUE(r.satisfied) << l;
  }
}

TEST(PowerIdentities, TrivialAndRandom) {
  OperatorSampler rng(45);
  const HermitianOperator t1 = rng.gue(4), t2 = rng.gue(4);
  const auto [e1, e2] = verify_power_identities(t1, t1, Complex(0.1, 0.8), 2);
  EXPECT_LE(e1, 1e-12);
  EXPECT_LE(e2, 1e-12);
  const auto [r1, r2] = verify_power_identities(t1, t2, Complex(0.1, 0.8), 1);
  EXPECT_LE(r1, 1e-10);
  EXPECT_LE(r2, 1e-10);
}

TEST(PowerIdentities, DiagonalPairAgainstScalars) {
  const HermitianOperator t1 = diag({-1.0, 0.2, 1.5}), t2 = diag({-0.4, 0.9, 1.1});
  const Complex z(0.3, 0.6);
  const auto [r1, r2] = verify_power_identities(t1, t2, z, 3);
  EXPECT_LE(r1, 1e-10);
  EXPECT_LE(r2, 1e-10);
  // The left side is diagonal with entries (b - z)^{-4} - (a - z)^{-4}.
  const Matrix lhs = resolvent_power(t2, z, 4) - resolvent_power(t1, z, 4);
  const double a[] = {-1.0, 0.2, 1.5}, b[] = {-0.4, 0.9, 1.1};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(std::abs(lhs(k, k) - (std::pow(b[k] - z, -4) - std::pow(a[k] - z, -4))), 0.0, 1e-12);
  }
}

TEST(CauchyPower, SignResolvedToPlus) {
  const CauchySignReport& r = cauchy_sign_resolution();
  EXPECT_EQ(r.sign, 1);
  EXPECT_LT(r.plus_error, 1e-12);
  EXPECT_GT(r.minus_error, 1.0);
  EXPECT_FALSE(r.summary().empty());
}

TEST(CauchyPower, EqualPowersReproduceResolventPower) {
  OperatorSampler rng(46);
  const HermitianOperator s = rng.gue(3);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_LE(max_abs(cauchy_power(s, Complex(0.2, 1.0), m, m) - resolvent_power(s, Complex(0.2, 1.0), m)), 1e-10);
  }
}

TEST(CauchyPower, ScalarCubeFromFirstPower) {
  const Matrix r = cauchy_power(diag({0.0}), kI, 1, 3);
  EXPECT_NEAR(std::abs(r(0, 0) - Complex(0.0, -1.0)), 0.0, 1e-10);
}

TEST(CauchyPower, FourthPowerFromSecond) {
  OperatorSampler rng(47);
  const HermitianOperator s = rng.gue(4);
  const Complex z(0.0, 2.0);
  const Matrix r = cauchy_power(s, z, 2, 4, Contour{1.0, 128});
  EXPECT_LE(max_abs(r - resolvent_power(s, z, 4)), 1e-8);
}

TEST(CauchyPower, ContourMustStayOffAxis) {
  EXPECT_THROW(cauchy_power(diag({0.0}), Complex(0.0, 0.5), 1, 2, Contour{0.5, 64}), std::invalid_argument);
  EXPECT_THROW(cauchy_power(diag({0.0}), kI, 3, 2), std::invalid_argument);
}

TEST(RouteEquivalence, SamePowerIsExact) {
  OperatorSampler rng(48);
  const HermitianOperator s1 = rng.gue(4);
  const HermitianOperator s2 = rank_one_perturbation(rng, s1, 0.5);
  const ContourRouteReport r = verify_lemma_A1(s1, s2, 2, 2, SchattenIndex(1.0), Complex(0.1, 0.9));
  EXPECT_LE(r.agreement.lhs, 1e-8);
}

TEST(RouteEquivalence, HigherPowersAgree) {
  OperatorSampler rng(49);
  const HermitianOperator s1 = rng.gue(4);
  const HermitianOperator s2 = rank_one_perturbation(rng, s1, 0.5);
  const ContourRouteReport a = verify_lemma_A1(s1, s2, 1, 2, SchattenIndex(1.0), Complex(0.1, 0.9));
  EXPECT_TRUE(a.agreement.satisfied);
  EXPECT_LE(a.agreement.lhs, 1e-7);
  EXPECT_NEAR(a.direct_norm, a.contour_norm, 1e-7);
  const ContourRouteReport b = verify_lemma_A1(s1, s2, 2, 4, SchattenIndex(2.0), Complex(0.1, 0.9));
  EXPECT_LE(b.agreement.lhs, 1e-7);
}
