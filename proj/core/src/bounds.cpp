#include "hsfc/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hsfc/quadrature.hpp"

namespace hsfc {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double davies_weight(Complex z0, Complex z) {
  const double y = z.imag();
  return (std::norm(z0) + std::norm(z)) / (y * y);
}

// Trapezoid evaluation of sign * c/(2 pi i) \oint (zeta - z)^{m-k-1} g(zeta) d zeta
// with g(zeta) supplied per node; c = (k-m)!(m-1)!/(k-1)!.
template <class Node>
Matrix contour_sum(Complex z, int m, int k, const Contour& c, int sign, Node&& node) {
  const double r = c.radius;
  Matrix acc;
  for (int j = 0; j < c.nodes; ++j) {
    const double theta = 2.0 * kPi * j / c.nodes;
    const Complex offset = std::polar(r, theta);
    Matrix term = std::pow(offset, m - k) * node(z + offset);
    if (j == 0) {
      acc = std::move(term);
    } else {
      acc += term;
    }
  }
  const double pref = factorial(k - m) * factorial(m - 1) / factorial(k - 1);
  return (sign * pref / c.nodes) * acc;
}

Contour checked_contour(Complex z, Contour c) {
  if (z.imag() == 0.0) throw std::invalid_argument("contour centre must be non-real");
  if (c.nodes < 1) throw std::invalid_argument("contour needs at least one node");
  if (c.radius <= 0.0) c.radius = 0.5 * std::abs(z.imag());
  if (!(c.radius < std::abs(z.imag()))) {
    throw std::invalid_argument("contour radius " + std::to_string(c.radius) + " reaches the real axis (|Im z| = " +
                                std::to_string(std::abs(z.imag())) + ")");
  }
  return c;
}

std::string complex_text(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

BoundReport make_bound_report(double lhs, double rhs, double extra_slack, std::string context) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = 1e-9 * (1.0 + std::abs(rhs)) + extra_slack;
  r.satisfied = lhs <= rhs + r.slack;
  r.margin = rhs - lhs;
  r.context = std::move(context);
  return r;
}

DaviesConstant davies_constant(const AlmostAnalyticExtension& ext, Complex z0, double tol) {
  if (z0.imag() == 0.0) throw std::invalid_argument("z0 must be non-real");
  if (ext.ell() != 2) throw std::invalid_argument("the Davies constant is defined for ell = 2");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const FunctionClass cls = ext.bundle().function_class();
  const double pref = 8.0 / kPi;

  DaviesConstant out;
  CubatureOptions opts;
  opts.max_depth = 16;
  opts.max_cells = 2000000;
  std::vector<Rect> regions;
  std::function<double(double, double)> integrand;
  if (cls.is_compact()) {
    const double h = ext.support_height();
    regions = {Rect{cls.support_lo, cls.support_hi, 0.0, h}, Rect{cls.support_lo, cls.support_hi, -h, 0.0}};
    integrand = [&](double x, double y) {
      const Complex z(x, y);
      const double d = std::abs(ext.dbar(z));
      return d == 0.0 ? 0.0 : d * davies_weight(z0, z);
    };
  } else {
    if (!(cls.beta < -1.0)) {
      throw std::domain_error("Davies constant diverges for symbol classes with beta >= -1 (beta = " +
                              std::to_string(cls.beta) + ")");
    }
    const MajorantFit fit =
        fit_majorant(ext, cls.beta, [z0](Complex z) { return davies_weight(z0, z); });
    if (!fit.bounded) throw std::runtime_error("Davies integrand escapes the majorant support");
    double u = 3.0;
    while (u < 45.0 && pref * fit.constant * 12.0 * japanese_tail_bound(cls.beta, std::sinh(u)) > tol / 10.0) u += 0.5;
    out.tail_bound = pref * fit.constant * 12.0 * japanese_tail_bound(cls.beta, std::sinh(u));
    regions = {Rect{-u, u, 0.0, 2.0}, Rect{-u, u, -2.0, 0.0}};
    opts.cells_x = std::max(8, static_cast<int>(std::ceil(2.0 * u)));
    opts.cells_y = 4;
    integrand = [&](double a, double s) {
      const double c = std::cosh(a);
      const Complex z(std::sinh(a), s * c);
      const double d = std::abs(ext.dbar(z));
      return d == 0.0 ? 0.0 : d * davies_weight(z0, z) * c * c;
    };
  }
  const auto run = [&](double abs_tol) {
    opts.tol = abs_tol / pref;
    return adaptive_cubature<double>(integrand, std::span<const Rect>(regions), opts, 0.0,
                                     [](double v) { return std::abs(v); });
  };
  // tol is relative: a coarse pass fixes the magnitude, the second pass the value.
  const double magnitude = std::max(1.0, pref * run(1e-3).value);
  const auto cub = run(0.9 * tol * magnitude);
  out.value = pref * cub.value;
  out.est_error = pref * cub.est_error + out.tail_bound;
  out.cells = cub.cells;
  return out;
}

BoundReport verify_lemma31(const HermitianOperator& s1, const HermitianOperator& s2,
                           const AlmostAnalyticExtension& ext, SchattenIndex p, Complex z0,
                           const DaviesConstant& constant) {
  if (s1.dim() != s2.dim()) throw std::invalid_argument("operators must have equal dimension");
  if (z0.imag() == 0.0) throw std::invalid_argument("z0 must be non-real");
  const ScalarFunction f = ext.bundle().derivative_fn(0);
  const Matrix diff = matrix_function_oracle(s2, f) - matrix_function_oracle(s1, f);
  const double res_diff = schatten_norm(resolvent(s2, z0) - resolvent(s1, z0), p);
  const double lhs = schatten_norm(diff, p);
  const double rhs = constant.value * res_diff;
  return make_bound_report(lhs, rhs, constant.est_error * res_diff,
                           "lemma31 p=" + p.to_string() + " z0=" + complex_text(z0));
}

BoundReport verify_lemma31(const HermitianOperator& s1, const HermitianOperator& s2,
                           const AlmostAnalyticExtension& ext, SchattenIndex p, Complex z0, double tol) {
  return verify_lemma31(s1, s2, ext, p, z0, davies_constant(ext, z0, tol));
}

MajorantReport majorant_check(const AlmostAnalyticExtension& ext, Complex z0, const MajorantGrid& grid) {
  const FunctionClass cls = ext.bundle().function_class();
  if (cls.is_compact() || !(cls.beta < -1.0)) {
    throw std::domain_error("majorant check needs a symbol class with beta < -1");
  }
  if (z0.imag() == 0.0) throw std::invalid_argument("z0 must be non-real");
  if (grid.nx < 1 || grid.ny < 1) throw std::invalid_argument("verification grid must be non-empty");
  const double beta = cls.beta;
  const auto weight = [z0](Complex z) { return davies_weight(z0, z); };

  MajorantReport rep;
  rep.beta = beta;
  rep.z0 = z0;
  const MajorantFit fit = fit_majorant(ext, beta, weight);
  if (!fit.bounded) throw std::runtime_error("integrand is nonzero where the majorant vanishes");
  rep.fitted_C_hat = fit.constant;

  // Verification grid, offset from the fitting grid's nodes.
  for (int i = 0; i < grid.nx; ++i) {
    const double u = -grid.u_max + 2.0 * grid.u_max * (i + 0.31) / grid.nx;
    const double x = std::sinh(u);
    const double bx = bracket(x);
    for (int j = 0; j < grid.ny; ++j) {
      const double s = grid.s_max * (j + 0.73) / grid.ny;
      for (double sign : {1.0, -1.0}) {
        const double y = sign * s * bx;
        const Complex z(x, y);
        const double value = std::abs(ext.dbar(z)) * weight(z);
        const double shape = majorant_shape(beta, x, y);
        ++rep.points;
        if (shape == 0.0) {
          if (value != 0.0) {
            ++rep.violations;
            rep.pointwise_max_ratio = std::numeric_limits<double>::infinity();
          }
          continue;
        }
        const double ratio = value / shape;
        rep.pointwise_max_ratio = std::max(rep.pointwise_max_ratio, ratio);
        if (value > rep.fitted_C_hat * shape) ++rep.violations;
      }
    }
  }

  // y-slices of U and V have measure 2<x> and 4<x>; integrate over y with the
  // breakpoints <x>, 2<x> and then over x = sinh(u).
  const auto slice = [beta](double x) {
    const double b = bracket(x);
    const std::array<double, 5> breaks{-2.0 * b, -b, 0.0, b, 2.0 * b};
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double mid = 0.5 * (breaks[k] + breaks[k + 1]);
      acc += majorant_shape(beta, x, mid) * (breaks[k + 1] - breaks[k]);
    }
    return acc;
  };
  constexpr double kU = 40.0;
  rep.shape_integral = integrate_composite(
      [&](double u) { return slice(std::sinh(u)) * std::cosh(u); }, -kU, kU, 800, 8);
  rep.closed_form = 6.0 * japanese_integral(beta);
  rep.integral_matches = std::abs(rep.shape_integral - rep.closed_form) <= 1e-6;
  rep.tail_integral = rep.fitted_C_hat * rep.shape_integral;
  return rep;
}

double verify_identity_Aminus1(const HermitianOperator& t1, const HermitianOperator& t2, Complex z, Complex z0) {
  if (t1.dim() != t2.dim()) throw std::invalid_argument("operators must have equal dimension");
  const Matrix r1 = resolvent(t1, z), r2 = resolvent(t2, z);
  const Matrix r10 = resolvent(t1, z0), r20 = resolvent(t2, z0);
  Matrix a2 = t2.matrix(), a1 = t1.matrix();
  a2.diagonal().array() -= z0;
  a1.diagonal().array() -= z0;
  const Matrix rhs = (a2 * r2) * (r20 - r10) * (a1 * r1);
  return max_abs((r2 - r1) - rhs);
}

BoundReport verify_bound_A0(const HermitianOperator& s, Complex z, Complex z0) {
  if (z.imag() == 0.0 || z0.imag() == 0.0) throw std::invalid_argument("z and z0 must be non-real");
  Matrix a = s.matrix();
  a.diagonal().array() -= z0;
  const double lhs = operator_norm(a * resolvent(s, z));
  const double rhs = std::sqrt(8.0) * std::sqrt(std::norm(z0) + std::norm(z)) / std::abs(z.imag());
  return make_bound_report(lhs, rhs, 0.0, "A0 z=" + complex_text(z) + " z0=" + complex_text(z0));
}

std::pair<double, double> verify_power_identities(const HermitianOperator& t1, const HermitianOperator& t2,
                                                  Complex z, int m) {
  if (m < 1) throw std::invalid_argument("power identities need m >= 1");
  if (t1.dim() != t2.dim()) throw std::invalid_argument("operators must have equal dimension");
  const Matrix r1 = resolvent(t1, z), r2 = resolvent(t2, z);
  const Matrix r1m = resolvent_power(t1, z, m), r2m = resolvent_power(t2, z, m);
  const Matrix lhs = resolvent_power(t2, z, m + 1) - resolvent_power(t1, z, m + 1);
  const Matrix dm = r2m - r1m;
  const Matrix d1 = r2 - r1;
  const Matrix a1 = dm * r1 + r2m * d1;
  const Matrix a2 = r2 * dm + d1 * r2m - d1 * dm;
  return {max_abs(lhs - a1), max_abs(lhs - a2)};
}

double identity_scale(const HermitianOperator& t1, const HermitianOperator& t2) {
  return 1.0 + std::max(operator_norm(t1.matrix()), operator_norm(t2.matrix()));
}

std::string CauchySignReport::summary() const {
  std::ostringstream os;
  os.precision(3);
  os << "cauchy power formula sign: " << (sign > 0 ? "+" : "-") << " (error with +: " << plus_error
     << ", with -: " << minus_error << "); "
     << (sign > 0 ? "a leading minus sign contradicts the counterclockwise orientation"
                  : "the leading minus sign matches the orientation");
  return os.str();
}

const CauchySignReport& cauchy_sign_resolution() {
  static const CauchySignReport report = [] {
    const HermitianOperator t = HermitianOperator::diagonal(RealVector::Zero(1));
    const Complex z(0.0, 1.0);
    const Contour c = checked_contour(z, Contour{});
    const Complex exact = std::pow(-z, -3);
    auto node = [&](Complex zeta) { return resolvent(t, zeta); };
    CauchySignReport r;
    r.plus_error = std::abs(contour_sum(z, 1, 3, c, +1, node)(0, 0) - exact);
    r.minus_error = std::abs(contour_sum(z, 1, 3, c, -1, node)(0, 0) - exact);
    r.sign = r.plus_error <= r.minus_error ? 1 : -1;
    return r;
  }();
  return report;
}

Matrix cauchy_power(const HermitianOperator& s, Complex z, int m, int k, Contour contour) {
  if (m < 1 || k < m) throw std::invalid_argument("cauchy_power needs 1 <= m <= k");
  const Contour c = checked_contour(z, contour);
  const int sign = cauchy_sign_resolution().sign;
  return contour_sum(z, m, k, c, sign, [&](Complex zeta) { return resolvent_power(s, zeta, m); });
}

ContourRouteReport verify_lemma_A1(const HermitianOperator& s1, const HermitianOperator& s2, int m, int n,
                              SchattenIndex p, Complex z, Contour contour) {
  if (m < 1 || n < m) throw std::invalid_argument("contour route needs 1 <= m <= n");
  if (s1.dim() != s2.dim()) throw std::invalid_argument("operators must have equal dimension");
  const Contour c = checked_contour(z, contour);
  const int sign = cauchy_sign_resolution().sign;
  const Matrix direct = resolvent_power(s2, z, n) - resolvent_power(s1, z, n);
  const Matrix via = contour_sum(z, m, n, c, sign, [&](Complex zeta) {
    return Matrix(resolvent_power(s2, zeta, m) - resolvent_power(s1, zeta, m));
  });
  ContourRouteReport rep;
  rep.direct_norm = schatten_norm(direct, p);
  rep.contour_norm = schatten_norm(via, p);
  rep.agreement = make_bound_report(schatten_norm(direct - via, p), 1e-7, 0.0,
                                    "lemmaA1 m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                        " p=" + p.to_string());
  return rep;
}

}  // namespace hsfc
