#pragma once

// Spectral shift functions by eigenvalue counting, Krein's trace formula, the
// Abel-type transform linking 1D and 2D shift functions, and the periodic
// Dirac model A_- = -i d/dx, A_+ = A_- + phi with its Witten index.

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hsfc/linalg.hpp"
#include "hsfc/smooth_function.hpp"

namespace hsfc {

/// xi(nu; S2, S1) = N1(nu) - N2(nu), N_j(nu) = #{eigenvalues of S_j <= nu}.
/// With this orientation tr(f(S2) - f(S1)) = \int xi f'.
class SpectralShiftFunction {
 public:
  static constexpr const char* kConvention = "xi(nu; S2, S1) = N1(nu) - N2(nu)";

  /// Exact staircase from the two spectra, sampled on nu_grid.
  static SpectralShiftFunction counting(RealVector eig1, RealVector eig2, RealVector nu_grid);
  /// Grid samples only; evaluation interpolates linearly, constant outside the grid.
  static SpectralShiftFunction sampled(RealVector nu_grid, RealVector values);

  const RealVector& nu_grid() const { return grid_; }
  const RealVector& values() const { return values_; }
  bool is_staircase() const { return staircase_; }

  double operator()(double nu) const;

  /// Jump points of the staircase (merged, ascending) and the level on
  /// [breaks[i], breaks[i+1]); the level is 0 left of breaks[0] and right of breaks.back().
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& levels() const { return levels_; }

  /// (1/(b-a)) \int_a^b xi, exact for staircases, trapezoidal on samples otherwise.
  double window_average(double a, double b) const;

 private:
  bool staircase_ = false;
  RealVector grid_, values_;
  RealVector eig1_, eig2_;  // sorted
  std::vector<double> breaks_, levels_;
};

SpectralShiftFunction counting_ssf(const HermitianOperator& s1, const HermitianOperator& s2, const RealVector& nu_grid);

/// \int xi f' with f' integrated by Gauss-Legendre on every constant piece of the staircase.
double krein_integral(const SpectralShiftFunction& xi, const SmoothFunctionBundle& f);

/// tr(f(S2) - f(S1)) from eigenvalue sums.
Complex trace_difference(const HermitianOperator& s1, const HermitianOperator& s2, const SmoothFunctionBundle& f);

/// (1/pi) \int_{-sqrt(l)}^{sqrt(l)} xi(nu) (l - nu^2)^{-1/2} d nu = (1/pi) \int_{-pi/2}^{pi/2} xi(sqrt(l) sin t) dt;
/// 0 for l <= 0.
double abel_transform(const std::function<double(double)>& xi, double lambda, int panels = 64);
/// Staircase-aware version: the theta integral is split at the jump points.
RealVector abel_transform(const SpectralShiftFunction& xi, const RealVector& lambda_grid);

/// F'(nu) = \int_{nu^2}^inf f'(l) (l - nu^2)^{-1/2} dl = \int_0^inf 2 f'(nu^2 + s^2) ds. f compactly supported.
double dual_weight(const SmoothFunctionBundle& f, double nu);

struct DualityCheck {
  double lhs = 0.0;  // \int_0^inf abel(xi)(l) f'(l) dl
  double rhs = 0.0;  // (1/pi) \int xi(nu) F'(nu) d nu
  double residual() const { return std::abs(lhs - rhs); }
};

DualityCheck duality_check(const std::function<double(double)>& xi, const SmoothFunctionBundle& f);

/// Periodic 1D model on a circle of circumference L sampled at N (even) points x_j = j L / N.
struct DiracDiscretization {
  double length = 100.0;
  int modes = 2048;
  RealVector phi;  // phi(x_j)

  /// Grid integral (L/N) sum phi_j.
  double flux() const;
  static DiracDiscretization sample(double length, int modes, const std::function<double(double)>& phi);
};

/// Amplitude a with \int bump(c, radius, a) dx = flux.
double bump_amplitude_for_flux(double radius, double flux);

/// 2 pi k / L for k = -N/2, ..., N/2 - 1.
RealVector dirac_frequencies(double length, int modes);

struct DiracOperators {
  HermitianOperator a_minus;
  HermitianOperator a_plus;
};

/// Grid-basis operators: A_- = F* diag(2 pi k / L) F with the unitary DFT F,
/// A_+ = A_- + diag(phi). Throws for odd N or L <= 0.
DiracOperators build_dirac(const DiracDiscretization& disc);

/// Spectra of A_- and A_{+,n} = A_- + chi_n phi chi_n, chi_n = n (A_-^2 + n^2)^{-1/2}, computed in
/// the Fourier basis where A_- and chi_n are diagonal and phi is a circulant.
/// n = infinity gives A_+ itself.
struct DiracSpectra {
  RealVector minus;
  RealVector plus;
};
DiracSpectra dirac_spectra(const DiracDiscretization& disc, double n = std::numeric_limits<double>::infinity());

struct Window {
  double lo = -1.0;
  double hi = 1.0;
};

/// Window average of the counting xi(.; A_+, A_-). Rejects windows reaching
/// past half of the truncated band [-pi N / L, pi N / L].
double dirac_ssf(const DiracDiscretization& disc, Window window = {});

/// (n, dirac_ssf for the pair (A_-, A_{+,n})).
std::vector<std::pair<double, double>> regularized_sweep(const DiracDiscretization& disc,
                                                         const std::vector<double>& n_list, Window window = {});

/// Moving average of a staircase xi over [nu - w/2, nu + w/2], sampled on grid.
SpectralShiftFunction smoothed_ssf(const SpectralShiftFunction& staircase, const RealVector& grid, double width);

struct WittenIndexReport {
  double xi_left = 0.0;
  double xi_right = 0.0;
  double index = 0.0;  // (xi_left + xi_right) / 2
};

/// One-sided limits at 0 by linear least squares over the `points` nearest
/// grid samples strictly left and strictly right of 0.
WittenIndexReport witten_index(const SpectralShiftFunction& xi, int points = 5);

}  // namespace hsfc
