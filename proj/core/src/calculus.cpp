#include "hsfc/calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "hsfc/quadrature.hpp"

namespace hsfc {

namespace {

struct Kernel {
  int power = 1;  // resolvent power inside the integrand
  int q = 1;      // ||integrand operator|| <= C / |y|^q near the axis
  std::function<Complex(Complex)> weight;  // scalar factor; empty means 1
  double weight_sup = 1.0;                 // sup of |weight| over the strip
  Complex prefactor = 1.0 / kPi;
  std::optional<Matrix> left;              // constant left factor
};

// sup_{y in strip} |dbar| / |y|^ell equals |f^{(ell+1)}(x)| / (2 ell!) because
// sigma is identically 1 for |y| <= <x>. Returns
//   \int M(x) g(x) dx * 2 / (ell - q + 1)
// with g = 1 (cartesian) or cosh(u)^{ell-q+2} in the u variable (sinh_scaled),
// so that the strip bound is this coefficient times eps^{ell-q+1}.
double strip_coefficient(const AlmostAnalyticExtension& ext, const QuadraturePlan& plan, int q) {
  const int ell = ext.ell();
  const double p = static_cast<double>(ell - q + 1);
  double ell_fact = 1.0;
  for (int k = 2; k <= ell; ++k) ell_fact *= k;
  constexpr int kPanels = 1024;
  constexpr int kSamples = 5;
  const double width = (plan.x_max - plan.x_min) / kPanels;
  double acc = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    double sup = 0.0;
    for (int j = 0; j < kSamples; ++j) {
      const double t = plan.x_min + width * (i + static_cast<double>(j) / (kSamples - 1));
      double x = t;
      double g = 1.0;
      if (plan.map == CoordinateMap::sinh_scaled) {
        x = std::sinh(t);
        g = std::pow(std::cosh(t), static_cast<double>(ell - q + 2));
      }
      const double m = std::abs(ext.bundle().eval(ell + 1, x)) / (2.0 * ell_fact);
      sup = std::max(sup, m * g);
    }
    acc += sup * width;
  }
  return acc * 2.0 / p;
}

// S = Q T Q* with T real symmetric tridiagonal (Householder, no eigenvalues).
// (T - z)^{-m} then costs O(m n^2) per node: the pivots of the unpivoted LU
// satisfy Im d_k <= -Im z < 0 (mirror for Im z < 0), so |d_k| >= |Im z|.
class TridiagonalResolvent {
 public:
  explicit TridiagonalResolvent(const HermitianOperator& op) : n_(op.dim()) {
    Eigen::Tridiagonalization<Matrix> tri(op.matrix());
    diag_ = tri.diagonal();
    sub_ = n_ > 1 ? RealVector(tri.subDiagonal()) : RealVector();
    q_ = tri.matrixQ();
    inv_.resize(n_);
    mul_.resize(std::max<Index>(n_ - 1, 0));
  }

  const Matrix& basis() const { return q_; }

  // out = (T - z)^{-m}, m >= 1, in the tridiagonal basis.
  void power(Complex z, int m, Matrix& out) {
    inv_(0) = 1.0 / (diag_(0) - z);
    for (Index k = 1; k < n_; ++k) {
      mul_(k - 1) = sub_(k - 1) * inv_(k - 1);
      inv_(k) = 1.0 / (diag_(k) - z - sub_(k - 1) * mul_(k - 1));
    }
    out.setIdentity(n_, n_);
    for (int r = 0; r < m; ++r) {
      for (Index c = 0; c < n_; ++c) solve_column(out.col(c).data(), r == 0 ? c : 0);
    }
  }

 private:
  // Columns of the identity are zero above `first`, which the forward sweep skips.
  void solve_column(Complex* x, Index first) const {
    for (Index k = first + 1; k < n_; ++k) x[k] -= mul_(k - 1) * x[k - 1];
    x[n_ - 1] *= inv_(n_ - 1);
    for (Index k = n_ - 1; k-- > 0;) x[k] = (x[k] - sub_(k) * x[k + 1]) * inv_(k);
  }

  Index n_;
  RealVector diag_, sub_;
  Matrix q_;
  Eigen::VectorXcd inv_, mul_;  // reciprocal pivots, elimination multipliers
};

double symbol_tail(const AlmostAnalyticExtension& ext, const QuadraturePlan& plan, int q, double scale) {
  const FunctionClass cls = ext.bundle().function_class();
  const double x_cut = std::sinh(std::min(std::abs(plan.x_min), std::abs(plan.x_max)));
  const auto weight = [q](Complex z) { return std::pow(std::abs(z.imag()), -static_cast<double>(q)); };
  const MajorantFit fit = fit_majorant(ext, cls.beta, weight);
  if (!fit.bounded) throw PlanError("symbol-class integrand is not dominated by the majorant shape");
  return scale * fit.constant * 12.0 * japanese_tail_bound(cls.beta, x_cut);
}

CalculusResult integrate(const HermitianOperator& op, const AlmostAnalyticExtension& ext, const QuadraturePlan& plan,
                         const Kernel& kernel) {
  validate_plan(plan, ext);
  if (ext.ell() < kernel.q) {
    throw std::invalid_argument("extension order ell = " + std::to_string(ext.ell()) +
                                " is too small for a resolvent singularity of order " + std::to_string(kernel.q) +
                                " (need ell >= " + std::to_string(kernel.q) + ")");
  }
  const double left_norm = kernel.left ? operator_norm(*kernel.left) : 1.0;
  const double outer = std::abs(kernel.prefactor) * left_norm;
  const double p = static_cast<double>(ext.ell() - kernel.q + 1);
  const double coeff = outer * kernel.weight_sup * strip_coefficient(ext, plan, kernel.q);
  const double strip_budget = plan.target_tol / 10.0;

  CalculusResult result;
  double eps = 0.0;
  if (plan.strip_epsilon) {
    eps = *plan.strip_epsilon;
    if (!(eps > 0.0)) throw PlanError("strip_epsilon must be positive");
    if (coeff * std::pow(eps, p) > strip_budget) {
      throw PlanError("strip contribution bound " + std::to_string(coeff * std::pow(eps, p)) +
                      " exceeds target_tol/10 = " + std::to_string(strip_budget) + " for strip_epsilon " +
                      std::to_string(eps));
    }
  } else {
    eps = QuadraturePlan::kDefaultStrip;
    if (coeff > 0.0) eps = std::min(eps, std::pow(strip_budget / coeff, 1.0 / p));
  }
  result.strip_epsilon = eps;
  result.strip_bound = coeff * std::pow(eps, p);

  if (plan.map == CoordinateMap::sinh_scaled) {
    result.tail_bound = symbol_tail(ext, plan, kernel.q, outer * kernel.weight_sup);
  }

  const Index n = op.dim();
  const Matrix zero = Matrix::Zero(n, n);
  const bool mapped = plan.map == CoordinateMap::sinh_scaled;
  TridiagonalResolvent resolvents(op);
  Matrix rm(n, n);
  auto integrand = [&](double a, double b, double c, Matrix& acc) {
    Complex z;
    double jac = 1.0;
    if (mapped) {
      const double ch = std::cosh(a);
      z = Complex(std::sinh(a), b * ch);
      jac = ch * ch;
    } else {
      z = Complex(a, b);
    }
    Complex w = ext.dbar(z);
    if (w == Complex(0.0)) return;
    if (kernel.weight) w *= kernel.weight(z);
    resolvents.power(z, kernel.power, rm);
    acc.noalias() += (c * jac * w) * rm;
  };

  const std::array<Rect, 2> regions{Rect{plan.x_min, plan.x_max, eps, plan.y_max},
                                    Rect{plan.x_min, plan.x_max, -plan.y_max, -eps}};
  CubatureOptions opts;
  opts.cells_x = plan.cells_x;
  opts.cells_y = plan.cells_y;
  opts.max_depth = plan.max_depth;
  opts.max_cells = plan.max_cells;
  const double budget = std::max(plan.target_tol - result.strip_bound - result.tail_bound, 0.5 * plan.target_tol);
  opts.tol = 0.9 * budget / outer;
  const auto cub = adaptive_cubature<Matrix>(integrand, regions, opts, zero, [](const Matrix& m) { return m.norm(); });

  const Matrix& q = resolvents.basis();
  Matrix value = kernel.prefactor * (q * cub.value * q.adjoint());
  if (kernel.left) value = (*kernel.left) * value;
  result.value = std::move(value);
  result.cells_used = cub.cells;
  result.converged = cub.converged;
  result.est_error = outer * cub.est_error + result.strip_bound + result.tail_bound;
  return result;
}

void require_compact(const AlmostAnalyticExtension& ext, const char* what) {
  if (!ext.bundle().function_class().is_compact()) {
    throw std::invalid_argument(std::string(what) + " requires a compactly supported function");
  }
}

}  // namespace

QuadraturePlan make_plan(const AlmostAnalyticExtension& ext, double target_tol) {
  if (!(target_tol > 0.0)) throw PlanError("target_tol must be positive");
  QuadraturePlan plan;
  plan.target_tol = target_tol;
  const FunctionClass cls = ext.bundle().function_class();
  if (cls.is_compact()) {
    plan.map = CoordinateMap::cartesian;
    plan.x_min = cls.support_lo;
    plan.x_max = cls.support_hi;
    plan.y_max = ext.support_height();
    return plan;
  }
  if (!(cls.beta < -1.0)) {
    throw PlanError("symbol-class calculus needs beta < -1 (got " + std::to_string(cls.beta) + ")");
  }
  plan.map = CoordinateMap::sinh_scaled;
  plan.y_max = 2.0;
  const auto weight = [](Complex z) { return 1.0 / std::abs(z.imag()); };
  const MajorantFit fit = fit_majorant(ext, cls.beta, weight);
  if (!fit.bounded) throw PlanError("symbol-class integrand is not dominated by the majorant shape");
  // Smallest u-range with (1/pi) * C * 12 * tail(sinh u) <= tol / 10.
  double u = 3.0;
  while (u < 40.0 && fit.constant / kPi * 12.0 * japanese_tail_bound(cls.beta, std::sinh(u)) > target_tol / 10.0) {
    u += 0.5;
  }
  plan.x_min = -u;
  plan.x_max = u;
  plan.cells_x = std::max(8, static_cast<int>(std::ceil(2.0 * u)));
  plan.cells_y = 4;
  return plan;
}

void validate_plan(const QuadraturePlan& plan, const AlmostAnalyticExtension& ext) {
  if (!(plan.target_tol > 0.0)) throw PlanError("target_tol must be positive");
  if (plan.cells_x < 1 || plan.cells_y < 1) throw PlanError("initial cell grid must be at least 1x1");
  if (plan.max_depth < 0 || plan.max_depth > 30) throw PlanError("max_depth must be in [0, 30]");
  if (!(plan.x_min < plan.x_max) || !(plan.y_max > 0.0)) throw PlanError("degenerate bounding box");
  const FunctionClass cls = ext.bundle().function_class();
  if (plan.map == CoordinateMap::cartesian) {
    if (!cls.is_compact()) throw PlanError("cartesian plans require a compactly supported bundle");
    constexpr double kSlack = 1e-12;
    if (plan.x_min > cls.support_lo + kSlack || plan.x_max < cls.support_hi - kSlack ||
        plan.y_max < ext.support_height() - kSlack) {
      throw PlanError("bounding box does not contain the support of the extension");
    }
  } else {
    if (cls.is_compact()) throw PlanError("sinh_scaled plans are meant for symbol-class bundles");
    if (!(cls.beta < -1.0)) throw PlanError("symbol-class calculus needs beta < -1");
    if (plan.y_max < 2.0) throw PlanError("sinh_scaled plans must cover |s| <= 2");
  }
  if (plan.strip_epsilon && !(*plan.strip_epsilon > 0.0 && *plan.strip_epsilon < plan.y_max)) {
    throw PlanError("strip_epsilon must lie in (0, y_max)");
  }
}

CalculusResult hs_function(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                           const QuadraturePlan& plan) {
  return integrate(op, ext, plan, Kernel{});
}

CalculusResult hs_function_khochman(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                                    const QuadraturePlan& plan, int m, Complex z0) {
  if (m < 0) throw std::invalid_argument("resolvent-power exponent m must be >= 0");
  if (z0.imag() == 0.0) throw std::invalid_argument("z0 must be non-real");
  require_compact(ext, "the resolvent-power formula");
  Kernel k;
  if (m > 0) {
    k.weight = [m, z0](Complex z) {
      Complex w = 1.0;
      for (int j = 0; j < m; ++j) w *= z - z0;
      return w;
    };
    const FunctionClass cls = ext.bundle().function_class();
    const double reach = std::max(std::abs(Complex(cls.support_lo, 0.0) - z0), std::abs(Complex(cls.support_hi, 0.0) - z0));
    k.weight_sup = std::pow(reach + QuadraturePlan::kDefaultStrip, m);
    k.left = resolvent_power(op, z0, m);
  }
  return integrate(op, ext, plan, k);
}

CalculusResult hs_function_semigroup(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                                     const QuadraturePlan& plan, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("semigroup parameter t must be > 0");
  require_compact(ext, "the semigroup formula");
  Kernel k;
  k.weight = [t](Complex z) { return std::exp(t * z); };
  k.weight_sup = std::exp(t * ext.bundle().function_class().support_hi);
  k.left = matrix_function_oracle(op, [t](double x) { return Complex(std::exp(-t * x)); });
  return integrate(op, ext, plan, k);
}

CalculusResult hs_derivative(const HermitianOperator& op, const AlmostAnalyticExtension& ext,
                             const QuadraturePlan& plan, int m) {
  if (m < 1) throw std::invalid_argument("derivative formula needs m >= 1");
  Kernel k;
  k.power = m;
  k.q = m;
  double fact = 1.0;
  for (int j = 2; j < m; ++j) fact *= j;
  k.prefactor = ((m - 1) % 2 == 0 ? 1.0 : -1.0) * fact / kPi;
  return integrate(op, ext, plan, k);
}

}  // namespace hsfc
