#pragma once

// Almost analytic extensions
//   f~(z) = sigma(x, y) * sum_{k=0}^{ell} f^{(k)}(x) (iy)^k / k!,  z = x + iy,
// with sigma(x, y) = tau(y / <x>), and their Wirtinger derivative d f~ / d zbar.

#include <functional>
#include <string>

#include "hsfc/linalg.hpp"
#include "hsfc/smooth_function.hpp"

namespace hsfc {

/// Smooth cutoff tau with tau = 1 on |s| <= 1 and tau = 0 on |s| >= 2.
class CutoffProfile {
 public:
  enum class Kind {
    /// h(2-|s|) / (h(2-|s|) + h(|s|-1)), h(t) = exp(-1/t) for t > 0.
    bump_quotient,
    /// 1 - S(|s| - 1) with the C^3 septic smoothstep S(t) = 35t^4 - 84t^5 + 70t^6 - 20t^7.
    smoothstep,
  };

  explicit CutoffProfile(Kind kind = Kind::bump_quotient) : kind_(kind) {}

  double tau(double s) const;
  double tau_prime(double s) const;
  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  Kind kind_;
};

struct SigmaValue {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};

class AlmostAnalyticExtension {
 public:
  static constexpr int kDefaultEll = 2;

  /// Throws std::invalid_argument unless 1 <= ell and f.max_order() >= ell + 1.
  explicit AlmostAnalyticExtension(SmoothFunctionBundle f, int ell = kDefaultEll,
                                   CutoffProfile cutoff = CutoffProfile{});

  const SmoothFunctionBundle& bundle() const { return f_; }
  int ell() const { return ell_; }
  const CutoffProfile& cutoff() const { return cutoff_; }

  AlmostAnalyticExtension with_ell(int ell) const { return AlmostAnalyticExtension(f_, ell, cutoff_); }
  AlmostAnalyticExtension with_cutoff(CutoffProfile c) const { return AlmostAnalyticExtension(f_, ell_, c); }

  /// sigma and its partial derivatives by the chain rule.
  SigmaValue sigma(double x, double y) const;

  Complex eval(Complex z) const;

  /// 1/2 (sigma_x + i sigma_y) sum_{k<=ell} f^{(k)}(iy)^k/k! + 1/2 sigma f^{(ell+1)} (iy)^ell / ell!.
  /// Exactly zero on the real axis.
  Complex dbar(Complex z) const;

  struct Point {
    Complex value;
    Complex dbar;
  };
  Point evaluate(Complex z) const;

  /// For compact support: supp f~ lies in [lo, hi] x [-2<c>, 2<c>], c = max(|lo|, |hi|).
  double support_height() const;

 private:
  SmoothFunctionBundle f_;
  int ell_;
  CutoffProfile cutoff_;
  std::vector<double> inv_factorial_;
};

/// Characteristic functions of U = {<x> < |y| < 2<x>} and V = {0 < |y| < 2<x>}.
bool in_region_u(double x, double y);
bool in_region_v(double x, double y);

/// <x>^{beta-1} (chi_U + chi_V), the symbol-class majorant shape.
double majorant_shape(double beta, double x, double y);

/// Result of fitting |dbar(z)| * weight(z) <= C <x>^{beta-1} (chi_U + chi_V).
struct MajorantFit {
  double max_ratio = 0.0;   // observed sup of the ratio on the fitting grid
  double constant = 0.0;    // 1.05 * max_ratio
  bool bounded = true;      // false if the integrand is nonzero where the shape vanishes
};

/// Fits the majorant constant on a grid x = sinh(u), u uniform in
/// [-u_max, u_max] (nx points), y = s <x>, s uniform in (0, 2.5) (ny points),
/// both half planes.
MajorantFit fit_majorant(const AlmostAnalyticExtension& ext, double beta,
                         const std::function<double(Complex)>& weight, int nx = 241, int ny = 120,
                         double u_max = 12.0);

/// Upper bound for int_X^inf <x>^beta dx (beta < -1) via <x>^beta <= x^beta.
double japanese_tail_bound(double beta, double x);

/// int_R <x>^beta dx = sqrt(pi) Gamma(-beta/2 - 1/2) / Gamma(-beta/2), beta < -1.
double japanese_integral(double beta);

}  // namespace hsfc
