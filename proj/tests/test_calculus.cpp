#include <gtest/gtest.h>

#include <array>

#include "hsfc/calculus.hpp"
#include "hsfc/random.hpp"

using namespace hsfc;

namespace {

double oracle_error(const CalculusResult& r, const HermitianOperator& s, const ScalarFunction& f) {
  return operator_norm(r.value - matrix_function_oracle(s, f));
}

HermitianOperator diag(std::initializer_list<double> values) {
  const std::vector<double> v(values);
  return HermitianOperator::diagonal(std::span<const double>(v));
}

}  // namespace

TEST(HsFunction, SupportDisjointGivesZero) {
  const AlmostAnalyticExtension ext(bump(2.5, 0.5));
  const CalculusResult r = hs_function(diag({0.0, 1.0}), ext, make_plan(ext));
  EXPECT_LE(operator_norm(r.value), 1e-7);
}

TEST(HsFunction, OneByOneReducesToScalar) {
  const AlmostAnalyticExtension ext(bump(0.0, 1.0));
  const CalculusResult r = hs_function(diag({0.0}), ext, make_plan(ext));
  EXPECT_NEAR(std::abs(r.value(0, 0) - 1.0), 0.0, 1e-6);
}

TEST(HsFunction, RandomEightByEightMatchesOracle) {
  OperatorSampler rng(31);
  const HermitianOperator s = rng.with_spectrum_in(8, -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const CalculusResult r = hs_function(s, ext, make_plan(ext));
  const double err = oracle_error(r, s, ext.bundle().derivative_fn(0));
  EXPECT_LE(err, 1e-6);
  EXPECT_LE(err, r.est_error);  // the estimate is an upper bound in practice
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.strip_epsilon, 0.0);
  EXPECT_LE(r.strip_bound, 1e-7 * (1.0 + 1e-12));
}

TEST(HsFunction, TighterToleranceIsMoreAccurate) {
  const HermitianOperator s = diag({-0.7, 0.1, 0.9});
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const auto f = ext.bundle().derivative_fn(0);
  const CalculusResult coarse = hs_function(s, ext, make_plan(ext, 1e-4));
  const CalculusResult fine = hs_function(s, ext, make_plan(ext, 1e-8));
  EXPECT_LE(oracle_error(coarse, s, f), 1e-4);
  EXPECT_LE(oracle_error(fine, s, f), 1e-8);
  EXPECT_LT(coarse.cells_used, fine.cells_used);
}

TEST(HsFunction, MultiplicativeOnProducts) {
  OperatorSampler rng(32);
  const HermitianOperator s = rng.with_spectrum_in(3, -1.0, 1.0);
  const auto f = bump(0.0, 2.0);
  const auto g = bump(0.5, 1.5);
  const AlmostAnalyticExtension ef(f), eg(g), efg(product(f, g));
  const Matrix lhs = hs_function(s, efg, make_plan(efg)).value;
  const Matrix rhs = hs_function(s, ef, make_plan(ef)).value * hs_function(s, eg, make_plan(eg)).value;
  EXPECT_LE(operator_norm(lhs - rhs), 3e-6);
}

TEST(HsFunction, SymbolClassAgainstOracle) {
  const HermitianOperator s = diag({-3.0, 0.0, 2.0});
  const AlmostAnalyticExtension ext(japanese_power(-2.0));
  const QuadraturePlan plan = make_plan(ext, 1e-5);
  EXPECT_EQ(plan.map, CoordinateMap::sinh_scaled);
  const CalculusResult r = hs_function(s, ext, plan);
  EXPECT_GT(r.tail_bound, 0.0);
  EXPECT_LE(oracle_error(r, s, ext.bundle().derivative_fn(0)), 1e-5);
}

TEST(Plan, SymbolOrderMustBeIntegrable) {
  EXPECT_THROW(make_plan(AlmostAnalyticExtension(japanese_power(-0.5))), PlanError);
  EXPECT_THROW(make_plan(AlmostAnalyticExtension(bump(0.0, 1.0)), 0.0), PlanError);
}

TEST(Plan, BoxMustCoverSupport) {
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  QuadraturePlan plan = make_plan(ext);
  plan.x_max = 1.0;
  EXPECT_THROW(validate_plan(plan, ext), PlanError);
  plan = make_plan(ext);
  plan.y_max = 1.0;
  EXPECT_THROW(hs_function(diag({0.0}), ext, plan), PlanError);
}

TEST(Plan, OversizedStripRejected) {
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  QuadraturePlan plan = make_plan(ext);
  plan.strip_epsilon = 0.1;
  EXPECT_THROW(hs_function(diag({0.0}), ext, plan), PlanError);
  plan.strip_epsilon = 1e-5;
  EXPECT_NO_THROW(hs_function(diag({0.0}), ext, plan));
}

TEST(Khochman, PowerZeroIsBitwisePlain) {
  OperatorSampler rng(33);
  const HermitianOperator s = rng.with_spectrum_in(4, -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const QuadraturePlan plan = make_plan(ext);
  const CalculusResult a = hs_function(s, ext, plan);
  const CalculusResult b = hs_function_khochman(s, ext, plan, 0, kI);
  EXPECT_EQ(max_abs(a.value - b.value), 0.0);
}

TEST(Khochman, FirstPowerMatchesOracle) {
  OperatorSampler rng(34);
  const HermitianOperator s = rng.with_spectrum_in(6, -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const CalculusResult r = hs_function_khochman(s, ext, make_plan(ext), 1, kI);
  EXPECT_LE(oracle_error(r, s, ext.bundle().derivative_fn(0)), 1e-5);
}

TEST(Khochman, SecondAndThirdPowersAgree) {
  OperatorSampler rng(35);
  const HermitianOperator s = rng.with_spectrum_in(3, -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const QuadraturePlan plan = make_plan(ext);
  const CalculusResult r2 = hs_function_khochman(s, ext, plan, 2, kI);
  const CalculusResult r3 = hs_function_khochman(s, ext, plan, 3, kI);
  EXPECT_LE(operator_norm(r2.value - r3.value), 2.0 * plan.target_tol);
  EXPECT_LE(oracle_error(r3, s, ext.bundle().derivative_fn(0)), 1e-5);
}

TEST(Khochman, RejectsBadArguments) {
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const QuadraturePlan plan = make_plan(ext);
  EXPECT_THROW(hs_function_khochman(diag({0.0}), ext, plan, -1, kI), std::invalid_argument);
  EXPECT_THROW(hs_function_khochman(diag({0.0}), ext, plan, 1, Complex(0.3, 0.0)), std::invalid_argument);
}

TEST(Semigroup, SupportDisjointGivesZero) {
  const AlmostAnalyticExtension ext(bump(2.5, 0.5));
  const CalculusResult r = hs_function_semigroup(diag({0.0, 1.0}), ext, make_plan(ext), 1.0);
  EXPECT_LE(operator_norm(r.value), 1e-7);
}

TEST(Semigroup, DiagonalMatchesOracle) {
  const HermitianOperator s = diag({0.0, 1.0, 2.0});
  const AlmostAnalyticExtension ext(bump(1.0, 1.5));
  const CalculusResult r = hs_function_semigroup(s, ext, make_plan(ext), 0.5);
  EXPECT_LE(oracle_error(r, s, ext.bundle().derivative_fn(0)), 1e-5);
}

TEST(Semigroup, IndependentOfT) {
  OperatorSampler rng(36);
  const HermitianOperator s = rng.with_spectrum_in(3, -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const QuadraturePlan plan = make_plan(ext);
  const CalculusResult a = hs_function_semigroup(s, ext, plan, 0.1);
  const CalculusResult b = hs_function_semigroup(s, ext, plan, 1.0);
  EXPECT_LE(operator_norm(a.value - b.value), 2.0 * plan.target_tol);
  EXPECT_THROW(hs_function_semigroup(s, ext, plan, 0.0), std::invalid_argument);
}

TEST(Derivative, FirstOrderIsPlain) {
  OperatorSampler rng(37);
  const HermitianOperator s = rng.with_spectrum_in(3, -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const QuadraturePlan plan = make_plan(ext);
  EXPECT_LE(max_abs(hs_derivative(s, ext, plan, 1).value - hs_function(s, ext, plan).value), 1e-12);
}

TEST(Derivative, SecondOrderOnDiagonal) {
  const double a = -0.6, b = 0.45;
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const CalculusResult r = hs_derivative(diag({a, b}), ext, make_plan(ext), 2);
  EXPECT_NEAR(std::abs(r.value(0, 0) - ext.bundle().eval(1, a)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(r.value(1, 1) - ext.bundle().eval(1, b)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(r.value(0, 1)), 0.0, 1e-6);
}

TEST(Derivative, ThirdOrderMatchesOracle) {
  OperatorSampler rng(38);
  const HermitianOperator s = rng.with_spectrum_in(4, -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0), 3);
  const CalculusResult r = hs_derivative(s, ext, make_plan(ext), 3);
  EXPECT_LE(oracle_error(r, s, ext.bundle().derivative_fn(2)), 1e-5);
}

TEST(Derivative, OrderAboveEllRejected) {
  const AlmostAnalyticExtension ext(bump(0.0, 2.0), 2);
  EXPECT_THROW(hs_derivative(diag({0.0}), ext, make_plan(ext), 3), std::invalid_argument);
  EXPECT_THROW(hs_derivative(diag({0.0}), ext, make_plan(ext), 0), std::invalid_argument);
}
