#pragma once

// Quantitative bounds (Davies-type Schatten estimate, resolvent estimate,
// symbol-class majorant) and exact resolvent identities, reported with margins.

#include <string>
#include <utility>

#include "hsfc/almost_analytic.hpp"
#include "hsfc/linalg.hpp"

namespace hsfc {

struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;  // lhs <= rhs + slack
  double margin = 0.0;     // rhs - lhs
  std::string context;
};

/// Slack 1e-9 (1 + rhs) + extra_slack.
BoundReport make_bound_report(double lhs, double rhs, double extra_slack, std::string context);

struct DaviesConstant {
  double value = 0.0;
  double est_error = 0.0;  // cubature estimate plus truncated tail
  double tail_bound = 0.0;
  std::size_t cells = 0;
};

/// (8/pi) \int |dbar f~(z)| (|z0|^2 + |z|^2) / |Im z|^2 dx dy for ell = 2.
/// The integrand stays bounded at the real axis, so no strip is excluded.
/// Symbol classes need beta < -1 (std::domain_error otherwise); their
/// integral is truncated in sinh-scaled coordinates with a majorant tail bound.
/// tol is relative to max(1, value); the tail is kept below tol/10 in absolute terms.
DaviesConstant davies_constant(const AlmostAnalyticExtension& ext, Complex z0, double tol = 1e-8);

/// ||f(S2) - f(S1)||_p <= C(z0) ||R2(z0) - R1(z0)||_p with both sides measured
/// (f(S_j) from the oracle). The constant can be shared across a campaign.
BoundReport verify_lemma31(const HermitianOperator& s1, const HermitianOperator& s2,
                           const AlmostAnalyticExtension& ext, SchattenIndex p, Complex z0,
                           const DaviesConstant& constant);
BoundReport verify_lemma31(const HermitianOperator& s1, const HermitianOperator& s2,
                           const AlmostAnalyticExtension& ext, SchattenIndex p, Complex z0, double tol = 1e-8);

struct MajorantGrid {
  int nx = 400;
  int ny = 400;
  double u_max = 12.0;  // x = sinh(u), |u| <= u_max
  double s_max = 2.5;   // y = s <x>, 0 < |s| < s_max
};

struct MajorantReport {
  double beta = 0.0;
  Complex z0;
  double fitted_C_hat = 0.0;         // 1.05 x max ratio on the fitting grid
  double pointwise_max_ratio = 0.0;  // max ratio on the verification grid
  std::size_t points = 0;
  std::size_t violations = 0;        // grid points with integrand > C_hat * shape
  double shape_integral = 0.0;       // \int\int <x>^{beta-1}(chi_U + chi_V), numerically
  double closed_form = 0.0;          // 6 \int <x>^beta dx
  double tail_integral = 0.0;        // C_hat * shape_integral, the majorant's total mass
  bool integral_matches = false;     // |shape_integral - closed_form| <= 1e-6
  bool ok() const { return violations == 0 && integral_matches && pointwise_max_ratio <= fitted_C_hat; }
};

/// Checks |dbar|(|z0|^2 + |z|^2)/|Im z|^2 <= C_hat <x>^{beta-1}(chi_U + chi_V)
/// on an off-axis verification grid, C_hat fitted on a separate coarser grid.
/// Throws std::domain_error unless the bundle is a symbol with beta < -1,
/// std::runtime_error if the ratio is unbounded.
MajorantReport majorant_check(const AlmostAnalyticExtension& ext, Complex z0, const MajorantGrid& grid = {});

/// Max-norm residual of
/// R2(z) - R1(z) = (T2 - z0) R2(z) [R2(z0) - R1(z0)] (T1 - z0) R1(z).
double verify_identity_Aminus1(const HermitianOperator& t1, const HermitianOperator& t2, Complex z, Complex z0);

/// ||(S - z0)(S - z)^{-1}|| <= 8^{1/2} (|z0|^2 + |z|^2)^{1/2} / |Im z|.
BoundReport verify_bound_A0(const HermitianOperator& s, Complex z, Complex z0);

/// Max-norm residuals of the two expansions of R2^{m+1} - R1^{m+1}:
///   [R2^m - R1^m] R1 + R2^m [R2 - R1]
///   R2 [R2^m - R1^m] + [R2 - R1] R2^m - [R2 - R1][R2^m - R1^m]
std::pair<double, double> verify_power_identities(const HermitianOperator& t1, const HermitianOperator& t2,
                                                  Complex z, int m);

/// Scale used for the identity residual tolerances: 1 + max(||T1||, ||T2||).
double identity_scale(const HermitianOperator& t1, const HermitianOperator& t2);

/// Circle zeta = z + r e^{i theta}, N trapezoid nodes. radius <= 0 selects |Im z|/2.
struct Contour {
  static constexpr int kDefaultNodes = 128;
  double radius = 0.0;
  int nodes = kDefaultNodes;
};

/// Orientation sign in front of the Cauchy-type representation
///   (T - z)^{-k} = sign (k-m)!(m-1)!/(2 pi i (k-1)!) \oint (zeta - z)^{m-k-1} (T - zeta)^{-m} d zeta
/// determined numerically on the scalar case T = 0, z = i, m = 1, k = 3.
struct CauchySignReport {
  double plus_error = 0.0;   // |contour value with sign +1 - exact|
  double minus_error = 0.0;  // same with sign -1
  int sign = 1;
  std::string summary() const;
};

const CauchySignReport& cauchy_sign_resolution();

/// (S - z)^{-k} from (S - zeta)^{-m} on the contour, 1 <= m <= k.
/// Throws std::invalid_argument if r >= |Im z| (the circle would reach the real axis).
Matrix cauchy_power(const HermitianOperator& s, Complex z, int m, int k, Contour contour = {});

struct ContourRouteReport {
  double direct_norm = 0.0;  // ||R2(z)^n - R1(z)^n||_p
  double contour_norm = 0.0; // same, via the contour applied to the m-th power difference
  BoundReport agreement;     // lhs = ||direct - contour||_p, rhs = 1e-7
};

/// Compares R2^n - R1^n computed directly with the contour representation
/// built from R2(zeta)^m - R1(zeta)^m, n >= m >= 1.
ContourRouteReport verify_lemma_A1(const HermitianOperator& s1, const HermitianOperator& s2, int m, int n,
                              SchattenIndex p, Complex z, Contour contour = {});

}  // namespace hsfc
