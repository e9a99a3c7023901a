#pragma once

// f(S) = pi^{-1} \int_C d f~/d zbar (z) (S - zI)^{-1} dx dy and its variants,
// evaluated by adaptive cubature of the operator-valued integrand.

#include <optional>
#include <stdexcept>

#include "hsfc/almost_analytic.hpp"
#include "hsfc/linalg.hpp"

namespace hsfc {

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CoordinateMap {
  /// Integrate in (x, y) over [x_min, x_max] x ([-y_max, -eps] u [eps, y_max]).
  cartesian,
  /// Integrate in (u, s) with x = sinh u, y = s <x>; used for symbol classes,
  /// where the integrand decays exponentially in u. The strip is |s| < eps.
  sinh_scaled,
};

/// Discretization of the integral over C. In cartesian mode the box must
/// contain supp f~; the excluded real-axis strip |y| < strip_epsilon is
/// accounted for by the bound
///   sup |dbar|/|y|^ell * \int\int_strip |y|^{ell-q}
/// (q = power of the resolvent singularity), which must stay below target_tol/10.
struct QuadraturePlan {
  static constexpr double kDefaultTol = 1e-6;
  static constexpr double kDefaultStrip = 1e-3;
  static constexpr int kDefaultMaxDepth = 12;

  CoordinateMap map = CoordinateMap::cartesian;
  double x_min = 0.0;  // x-range (cartesian) or u-range (sinh_scaled)
  double x_max = 0.0;
  double y_max = 0.0;  // |y| (cartesian) or |s| (sinh_scaled) upper limit
  int cells_x = 8;
  int cells_y = 8;
  int max_depth = kDefaultMaxDepth;
  /// Empty: the largest value <= kDefaultStrip satisfying the strip invariant
  /// is chosen per call.
  std::optional<double> strip_epsilon;
  double target_tol = kDefaultTol;
  std::size_t max_cells = 400000;
};

/// Plan covering supp f~. For symbol-class bundles (beta < -1 required) the
/// u-range is truncated where the fitted majorant tail drops below target_tol/10.
QuadraturePlan make_plan(const AlmostAnalyticExtension& ext, double target_tol = QuadraturePlan::kDefaultTol);

/// Throws PlanError if the plan does not cover supp f~ or is malformed.
void validate_plan(const QuadraturePlan& plan, const AlmostAnalyticExtension& ext);

struct CalculusResult {
  Matrix value;
  double est_error = 0.0;    // cubature + strip + tail contributions
  std::size_t cells_used = 0;
  double strip_epsilon = 0.0;
  double strip_bound = 0.0;
  double tail_bound = 0.0;
  bool converged = false;    // cubature estimate reached its share of target_tol
};

/// Plain formula: f(S) = pi^{-1} \int dbar(z) (S - z)^{-1}.
CalculusResult hs_function(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                           const QuadraturePlan& plan);

/// Resolvent-power variant:
/// f(S) = pi^{-1} \int dbar(z) (z - z0)^m (S - z0)^{-m} (S - z)^{-1}, m >= 0.
CalculusResult hs_function_khochman(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                                    const QuadraturePlan& plan, int m, Complex z0);

/// Semigroup variant: f(S) = pi^{-1} \int dbar(z) e^{tz} e^{-tS} (S - z)^{-1}, t > 0.
CalculusResult hs_function_semigroup(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                                     const QuadraturePlan& plan, double t);

/// f^{(m-1)}(S) = pi^{-1} (-1)^{m-1} (m-1)! \int dbar(z) (S - z)^{-m}, m >= 1.
/// Requires ext.ell() >= m so the strip bound is finite.
CalculusResult hs_derivative(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                             const QuadraturePlan& plan, int m);

}  // namespace hsfc
