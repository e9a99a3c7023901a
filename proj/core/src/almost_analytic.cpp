#include "hsfc/almost_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsfc {

namespace {

double h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double h_prime(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

}  // namespace

double CutoffProfile::tau(double s) const {
  const double a = std::abs(s);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  switch (kind_) {
    case Kind::bump_quotient: {
      const double p = h(2.0 - a);
      const double q = h(a - 1.0);
      return p / (p + q);
    }
    case Kind::smoothstep: {
      const double t = a - 1.0;
      const double t4 = t * t * t * t;
      return 1.0 - t4 * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
    }
  }
  return 0.0;
}

double CutoffProfile::tau_prime(double s) const {
  const double a = std::abs(s);
  if (a <= 1.0 || a >= 2.0) return 0.0;
  const double sign = s < 0.0 ? -1.0 : 1.0;
  switch (kind_) {
    case Kind::bump_quotient: {
      const double p = h(2.0 - a);
      const double q = h(a - 1.0);
      const double dp = -h_prime(2.0 - a);
      const double dq = h_prime(a - 1.0);
      const double den = p + q;
      return sign * (dp * q - p * dq) / (den * den);
    }
    case Kind::smoothstep: {
      const double t = a - 1.0;
      const double t3 = t * t * t;
      // d/dt of 35t^4 - 84t^5 + 70t^6 - 20t^7 = 140 t^3 (1 - t)^3
      const double omt = 1.0 - t;
      return -sign * 140.0 * t3 * omt * omt * omt;
    }
  }
  return 0.0;
}

std::string CutoffProfile::name() const {
  return kind_ == Kind::bump_quotient ? "bump_quotient" : "smoothstep";
}

AlmostAnalyticExtension::AlmostAnalyticExtension(SmoothFunctionBundle f, int ell, CutoffProfile cutoff)
    : f_(std::move(f)), ell_(ell), cutoff_(cutoff) {
  if (ell < 1) throw std::invalid_argument("almost analytic extension order ell must be >= 1");
  if (f_.max_order() < ell + 1) {
    throw std::invalid_argument("bundle provides derivatives up to order " + std::to_string(f_.max_order()) +
                                " but ell = " + std::to_string(ell) + " needs order ell + 1");
  }
  inv_factorial_.resize(static_cast<std::size_t>(ell) + 2);
  double fact = 1.0;
  for (int k = 0; k <= ell + 1; ++k) {
    if (k > 0) fact *= k;
    inv_factorial_[k] = 1.0 / fact;
  }
}

SigmaValue AlmostAnalyticExtension::sigma(double x, double y) const {
  const double bx = bracket(x);
  const double s = y / bx;
  const double tp = cutoff_.tau_prime(s);
  SigmaValue out;
  out.value = cutoff_.tau(s);
  out.dy = tp / bx;
  out.dx = -tp * s * x / (bx * bx);
  return out;
}

AlmostAnalyticExtension::Point AlmostAnalyticExtension::evaluate(Complex z) const {
  const double x = z.real();
  const double y = z.imag();
  const SigmaValue sg = sigma(x, y);
  if (sg.value == 0.0 && sg.dx == 0.0 && sg.dy == 0.0) return {Complex(0.0), Complex(0.0)};

  Complex d[32];
  const int n = ell_ + 2;
  f_.derivatives(x, std::span<Complex>(d, static_cast<std::size_t>(n)));

  Complex taylor = 0.0;
  Complex iy_pow = 1.0;
  const Complex iy(0.0, y);
  for (int k = 0; k <= ell_; ++k) {
    taylor += d[k] * iy_pow * inv_factorial_[k];
    if (k < ell_) iy_pow *= iy;
  }
  // iy_pow now holds (iy)^ell.
  const Complex value = sg.value * taylor;
  const Complex dbar = 0.5 * Complex(sg.dx, sg.dy) * taylor + 0.5 * sg.value * d[ell_ + 1] * iy_pow * inv_factorial_[ell_];
  return {value, dbar};
}

Complex AlmostAnalyticExtension::eval(Complex z) const { return evaluate(z).value; }

Complex AlmostAnalyticExtension::dbar(Complex z) const { return evaluate(z).dbar; }

double AlmostAnalyticExtension::support_height() const {
  const FunctionClass cls = f_.function_class();
  if (!cls.is_compact()) throw std::logic_error("support_height requires a compactly supported bundle");
  return 2.0 * bracket(cls.support_radius());
}

bool in_region_u(double x, double y) {
  const double b = bracket(x);
  const double a = std::abs(y);
  return b < a && a < 2.0 * b;
}

bool in_region_v(double x, double y) {
  const double a = std::abs(y);
  return 0.0 < a && a < 2.0 * bracket(x);
}

double majorant_shape(double beta, double x, double y) {
  const double count = (in_region_u(x, y) ? 1.0 : 0.0) + (in_region_v(x, y) ? 1.0 : 0.0);
  if (count == 0.0) return 0.0;
  return std::pow(bracket(x), beta - 1.0) * count;
}

MajorantFit fit_majorant(const AlmostAnalyticExtension& ext, double beta, const std::function<double(Complex)>& weight,
                         int nx, int ny, double u_max) {
  MajorantFit fit;
  for (int i = 0; i < nx; ++i) {
    const double u = -u_max + 2.0 * u_max * (i + 0.5) / nx;
    const double x = std::sinh(u);
    const double bx = bracket(x);
    for (int j = 0; j < ny; ++j) {
      const double s = 2.5 * (j + 0.5) / ny;
      for (double sign : {1.0, -1.0}) {
        const double y = sign * s * bx;
        const Complex z(x, y);
        const double integrand = std::abs(ext.dbar(z)) * weight(z);
        const double shape = majorant_shape(beta, x, y);
        if (shape == 0.0) {
          if (integrand != 0.0) fit.bounded = false;
          continue;
        }
        fit.max_ratio = std::max(fit.max_ratio, integrand / shape);
      }
    }
  }
  fit.constant = 1.05 * fit.max_ratio;
  return fit;
}

double japanese_tail_bound(double beta, double x) {
  if (!(beta < -1.0)) throw std::domain_error("tail of <x>^beta is integrable only for beta < -1");
  if (!(x > 0.0)) throw std::domain_error("tail bound needs x > 0");
  return std::pow(x, beta + 1.0) / (-beta - 1.0);
}

double japanese_integral(double beta) {
  if (!(beta < -1.0)) throw std::domain_error("<x>^beta is integrable only for beta < -1");
  return std::sqrt(kPi) * std::tgamma(-0.5 * beta - 0.5) / std::tgamma(-0.5 * beta);
}

}  // namespace hsfc
