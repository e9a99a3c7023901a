#include "hsfc/ssf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsfc/quadrature.hpp"

namespace hsfc {

namespace {

RealVector sorted(RealVector v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

long count_le(const RealVector& sorted_values, double nu) {
  return std::upper_bound(sorted_values.data(), sorted_values.data() + sorted_values.size(), nu) -
         sorted_values.data();
}

// \int_a^b 1[lambda <= nu] d nu summed over lambda.
double counting_integral(const RealVector& eig, double a, double b) {
  CompensatedSum<double> acc(0.0);
  for (Index i = 0; i < eig.size(); ++i) acc.add(std::max(0.0, b - std::max(eig(i), a)));
  return acc.value();
}

// exp(-2 pi i r / N) for r = 0..N-1.
std::vector<Complex> twiddles(int n) {
  std::vector<Complex> w(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) w[r] = std::polar(1.0, -2.0 * kPi * r / n);
  return w;
}

void check_disc(const DiracDiscretization& disc) {
  if (!(disc.length > 0.0)) throw std::invalid_argument("circumference L must be positive");
  if (disc.modes < 2 || disc.modes % 2 != 0) {
    throw std::invalid_argument("number of modes must be even and >= 2 (got " + std::to_string(disc.modes) + ")");
  }
  if (disc.phi.size() != disc.modes) throw std::invalid_argument("phi must have one sample per mode");
  if (!disc.phi.allFinite()) throw std::invalid_argument("phi samples must be finite");
}

void check_window(const DiracDiscretization& disc, Window w) {
  if (!(w.lo < w.hi)) throw std::invalid_argument("empty spectral window");
  const double edge = kPi * disc.modes / disc.length;
  if (std::max(std::abs(w.lo), std::abs(w.hi)) > 0.5 * edge) {
    throw std::invalid_argument("window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                                "] reaches the truncated band edge (|nu| must stay below " + std::to_string(0.5 * edge) +
                                ")");
  }
}

}  // namespace

SpectralShiftFunction SpectralShiftFunction::counting(RealVector eig1, RealVector eig2, RealVector nu_grid) {
  SpectralShiftFunction xi;
  xi.staircase_ = true;
  xi.eig1_ = sorted(std::move(eig1));
  xi.eig2_ = sorted(std::move(eig2));
  xi.grid_ = std::move(nu_grid);
  xi.values_.resize(xi.grid_.size());
  for (Index i = 0; i < xi.grid_.size(); ++i) xi.values_(i) = xi(xi.grid_(i));

  std::vector<std::pair<double, int>> jumps;
  for (Index i = 0; i < xi.eig1_.size(); ++i) jumps.emplace_back(xi.eig1_(i), +1);
  for (Index i = 0; i < xi.eig2_.size(); ++i) jumps.emplace_back(xi.eig2_(i), -1);
  std::sort(jumps.begin(), jumps.end());
  int level = 0;
  for (std::size_t i = 0; i < jumps.size();) {
    const double at = jumps[i].first;
    while (i < jumps.size() && jumps[i].first == at) level += jumps[i++].second;
    xi.breaks_.push_back(at);
    xi.levels_.push_back(level);
  }
  return xi;
}

SpectralShiftFunction SpectralShiftFunction::sampled(RealVector nu_grid, RealVector values) {
  if (nu_grid.size() != values.size()) throw std::invalid_argument("grid and values differ in length");
  for (Index i = 1; i < nu_grid.size(); ++i) {
    if (!(nu_grid(i) > nu_grid(i - 1))) throw std::invalid_argument("nu grid must be strictly ascending");
  }
  SpectralShiftFunction xi;
  xi.grid_ = std::move(nu_grid);
  xi.values_ = std::move(values);
  return xi;
}

double SpectralShiftFunction::operator()(double nu) const {
  if (staircase_) return static_cast<double>(count_le(eig1_, nu) - count_le(eig2_, nu));
  const Index n = grid_.size();
  if (n == 0) return 0.0;
  if (nu <= grid_(0)) return values_(0);
  if (nu >= grid_(n - 1)) return values_(n - 1);
  const Index hi = std::upper_bound(grid_.data(), grid_.data() + n, nu) - grid_.data();
  const Index lo = hi - 1;
  const double t = (nu - grid_(lo)) / (grid_(hi) - grid_(lo));
  return (1.0 - t) * values_(lo) + t * values_(hi);
}

double SpectralShiftFunction::window_average(double a, double b) const {
  if (!(a < b)) throw std::invalid_argument("window average needs a < b");
  if (staircase_) return (counting_integral(eig1_, a, b) - counting_integral(eig2_, a, b)) / (b - a);
  constexpr int kPanels = 256;
  return integrate_composite([this](double nu) { return (*this)(nu); }, a, b, kPanels, 2) / (b - a);
}

SpectralShiftFunction counting_ssf(const HermitianOperator& s1, const HermitianOperator& s2, const RealVector& nu_grid) {
  if (s1.dim() != s2.dim()) throw std::invalid_argument("spectral shift needs operators of equal dimension");
  return SpectralShiftFunction::counting(eigenvalues(s1), eigenvalues(s2), nu_grid);
}

double krein_integral(const SpectralShiftFunction& xi, const SmoothFunctionBundle& f) {
  if (!xi.is_staircase()) throw std::invalid_argument("krein_integral needs the exact counting staircase");
  const auto& br = xi.breaks();
  const auto& lv = xi.levels();
  const auto fprime = [&f](double x) { return f.eval(1, x).real(); };
  CompensatedSum<double> acc(0.0);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (lv[i] == 0.0) continue;
    const double a = br[i], b = br[i + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 0.05)));
    acc.add(lv[i] * integrate_composite(fprime, a, b, panels, 10));
  }
  return acc.value();
}

Complex trace_difference(const HermitianOperator& s1, const HermitianOperator& s2, const SmoothFunctionBundle& f) {
  const RealVector e1 = eigenvalues(s1), e2 = eigenvalues(s2);
  CompensatedSum<Complex> acc(Complex(0.0));
  for (Index i = 0; i < e2.size(); ++i) acc.add(f(e2(i)));
  for (Index i = 0; i < e1.size(); ++i) acc.add(-f(e1(i)));
  return acc.value();
}

double abel_transform(const std::function<double(double)>& xi, double lambda, int panels) {
  if (!(lambda > 0.0)) return 0.0;
  const double r = std::sqrt(lambda);
  return integrate_composite([&](double t) { return xi(r * std::sin(t)); }, -0.5 * kPi, 0.5 * kPi, panels, 8) / kPi;
}

RealVector abel_transform(const SpectralShiftFunction& xi, const RealVector& lambda_grid) {
  RealVector out(lambda_grid.size());
  for (Index i = 0; i < lambda_grid.size(); ++i) {
    const double lambda = lambda_grid(i);
    if (!(lambda > 0.0)) {
      out(i) = 0.0;
      continue;
    }
    if (!xi.is_staircase()) {
      out(i) = abel_transform([&xi](double nu) { return xi(nu); }, lambda);
      continue;
    }
    // xi(sqrt(l) sin t) is piecewise constant in t; integrate it exactly.
    const double r = std::sqrt(lambda);
    double prev = -0.5 * kPi;
    double level = xi(-r);
    CompensatedSum<double> acc(0.0);
    const auto& br = xi.breaks();
    const auto& lv = xi.levels();
    for (std::size_t k = 0; k < br.size(); ++k) {
      if (br[k] <= -r) continue;
      if (br[k] >= r) break;
      const double t = std::asin(br[k] / r);
      acc.add(level * (t - prev));
      prev = t;
      level = lv[k];
    }
    acc.add(level * (0.5 * kPi - prev));
    out(i) = acc.value() / kPi;
  }
  return out;
}

double dual_weight(const SmoothFunctionBundle& f, double nu) {
  const FunctionClass cls = f.function_class();
  if (!cls.is_compact()) throw std::invalid_argument("dual_weight needs a compactly supported function");
  const double nu2 = nu * nu;
  if (nu2 >= cls.support_hi) return 0.0;
  const double s0 = std::sqrt(std::max(cls.support_lo - nu2, 0.0));
  const double s1 = std::sqrt(cls.support_hi - nu2);
  return integrate_composite([&](double s) { return 2.0 * f.eval(1, nu2 + s * s).real(); }, s0, s1, 64, 8);
}

DualityCheck duality_check(const std::function<double(double)>& xi, const SmoothFunctionBundle& f) {
  const FunctionClass cls = f.function_class();
  if (!cls.is_compact()) throw std::invalid_argument("duality check needs a compactly supported function");
  DualityCheck out;
  if (cls.support_hi <= 0.0) return out;
  const double lo = std::max(cls.support_lo, 0.0);
  out.lhs = integrate_composite([&](double l) { return abel_transform(xi, l) * f.eval(1, l).real(); }, lo,
                                cls.support_hi, 64, 8);
  const double nu_max = std::sqrt(cls.support_hi);
  out.rhs = integrate_composite([&](double nu) { return xi(nu) * dual_weight(f, nu); }, -nu_max, nu_max, 64, 8) / kPi;
  return out;
}

double DiracDiscretization::flux() const {
  return length / modes * phi.sum();
}

DiracDiscretization DiracDiscretization::sample(double length, int modes, const std::function<double(double)>& phi) {
  DiracDiscretization d;
  d.length = length;
  d.modes = modes;
  if (modes < 1) throw std::invalid_argument("number of modes must be positive");
  d.phi.resize(modes);
  for (int j = 0; j < modes; ++j) d.phi(j) = phi(length * j / modes);
  check_disc(d);
  return d;
}

double bump_amplitude_for_flux(double radius, double flux) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
  const SmoothFunctionBundle unit = bump(0.0, radius);
  const double mass = integrate_composite([&](double x) { return unit(x).real(); }, -radius, radius, 64, 10);
  return flux / mass;
}

RealVector dirac_frequencies(double length, int modes) {
  RealVector k(modes);
  for (int i = 0; i < modes; ++i) k(i) = 2.0 * kPi * (i - modes / 2) / length;
  return k;
}

DiracOperators build_dirac(const DiracDiscretization& disc) {
  check_disc(disc);
  const int n = disc.modes;
  const RealVector kappa = dirac_frequencies(disc.length, n);
  const std::vector<Complex> w = twiddles(n);
  // (A_-)_{jl} = c[(j - l) mod N], c[d] = (1/N) sum_k kappa_k exp(2 pi i k d / N).
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    CompensatedSum<Complex> acc(Complex(0.0));
    for (int i = 0; i < n; ++i) {
      const long k = i - n / 2;
      const long r = ((k * d) % n + n) % n;
      acc.add(kappa(i) * std::conj(w[r]));
    }
    c[d] = acc.value() / static_cast<double>(n);
  }
  Matrix a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) a(j, l) = c[((j - l) % n + n) % n];
  }
  HermitianOperator minus(a);
  Matrix plus = minus.matrix();
  plus.diagonal() += disc.phi.cast<Complex>();
  return {minus, HermitianOperator(plus)};
}

DiracSpectra dirac_spectra(const DiracDiscretization& disc, double n_reg) {
  check_disc(disc);
  if (!(n_reg > 0.0)) throw std::invalid_argument("regularization parameter n must be positive");
  const int n = disc.modes;
  const RealVector kappa = dirac_frequencies(disc.length, n);
  const std::vector<Complex> w = twiddles(n);
  // Fourier coefficients phi^[d] = (1/N) sum_j phi_j exp(-2 pi i d j / N).
  std::vector<Complex> phat(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    CompensatedSum<Complex> acc(Complex(0.0));
    for (int j = 0; j < n; ++j) acc.add(disc.phi(j) * w[(static_cast<long>(d) * j) % n]);
    phat[d] = acc.value() / static_cast<double>(n);
  }
  RealVector chi = RealVector::Ones(n);
  if (std::isfinite(n_reg)) {
    for (int i = 0; i < n; ++i) chi(i) = n_reg / std::sqrt(kappa(i) * kappa(i) + n_reg * n_reg);
  }
  Matrix m(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) m(k, l) = chi(k) * chi(l) * phat[((k - l) % n + n) % n];
    m(k, k) += kappa(k);
  }
  DiracSpectra out;
  out.minus = kappa;  // already ascending
  out.plus = eigenvalues(HermitianOperator(m));
  return out;
}

double dirac_ssf(const DiracDiscretization& disc, Window window) {
  check_disc(disc);
  check_window(disc, window);
  const DiracSpectra sp = dirac_spectra(disc);
  return SpectralShiftFunction::counting(sp.minus, sp.plus, RealVector()).window_average(window.lo, window.hi);
}

std::vector<std::pair<double, double>> regularized_sweep(const DiracDiscretization& disc,
                                                         const std::vector<double>& n_list, Window window) {
  check_disc(disc);
  check_window(disc, window);
  std::vector<std::pair<double, double>> out;
  for (double n : n_list) {
    const DiracSpectra sp = dirac_spectra(disc, n);
    out.emplace_back(n, SpectralShiftFunction::counting(sp.minus, sp.plus, RealVector()).window_average(window.lo, window.hi));
  }
  return out;
}

SpectralShiftFunction smoothed_ssf(const SpectralShiftFunction& staircase, const RealVector& grid, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("smoothing width must be positive");
  RealVector values(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    values(i) = staircase.window_average(grid(i) - 0.5 * width, grid(i) + 0.5 * width);
  }
  return SpectralShiftFunction::sampled(grid, values);
}

WittenIndexReport witten_index(const SpectralShiftFunction& xi, int points) {
  if (points < 2) throw std::invalid_argument("one-sided fits need at least 2 points");
  const RealVector& g = xi.nu_grid();
  const RealVector& v = xi.values();
  std::vector<Index> left, right;
  for (Index i = 0; i < g.size(); ++i) {
    if (g(i) < 0.0) left.push_back(i);
    if (g(i) > 0.0) right.push_back(i);
  }
  if (left.size() < 2 || right.size() < 2) {
    throw std::invalid_argument("nu grid must straddle 0 with at least two points on each side");
  }
  // Nearest samples to 0 on each side.
  std::sort(left.begin(), left.end(), [&](Index a, Index b) { return g(a) > g(b); });
  std::sort(right.begin(), right.end(), [&](Index a, Index b) { return g(a) < g(b); });
  const auto intercept = [&](const std::vector<Index>& idx) {
    const std::size_t k = std::min<std::size_t>(idx.size(), static_cast<std::size_t>(points));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double x = g(idx[i]), y = v(idx[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(k);
    const double den = n * sxx - sx * sx;
    const double slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    return (sy - slope * sx) / n;
  };
  WittenIndexReport rep;
  rep.xi_left = intercept(left);
  rep.xi_right = intercept(right);
  rep.index = 0.5 * (rep.xi_left + rep.xi_right);
  return rep;
}

}  // namespace hsfc
