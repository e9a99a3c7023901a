#include "hsfc/smooth_function.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace hsfc {

FunctionClass FunctionClass::compact(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("compact support interval needs lo <= hi");
  FunctionClass c;
  c.kind = Kind::compact_support;
  c.support_lo = lo;
  c.support_hi = hi;
  return c;
}

FunctionClass FunctionClass::symbol(double beta) {
  FunctionClass c;
  c.kind = Kind::symbol;
  c.beta = beta;
  return c;
}

double FunctionClass::support_radius() const { return std::max(std::abs(support_lo), std::abs(support_hi)); }

SmoothFunctionBundle::SmoothFunctionBundle(std::shared_ptr<const SmoothFunction> impl) : impl_(std::move(impl)) {
  if (!impl_) throw std::invalid_argument("null SmoothFunction");
}

Complex SmoothFunctionBundle::eval(int k, double x) const {
  if (k < 0 || k > impl_->max_order()) throw std::out_of_range("derivative order outside bundle range");
  Complex buf[64];
  impl_->derivatives(x, std::span<Complex>(buf, static_cast<std::size_t>(k) + 1));
  return buf[k];
}

void SmoothFunctionBundle::derivatives(double x, std::span<Complex> out) const {
  if (out.size() > static_cast<std::size_t>(impl_->max_order()) + 1) {
    throw std::out_of_range("derivative order outside bundle range");
  }
  impl_->derivatives(x, out);
}

ScalarFunction SmoothFunctionBundle::derivative_fn(int k) const {
  if (k < 0 || k > max_order()) throw std::out_of_range("derivative order outside bundle range");
  auto self = *this;
  return [self, k](double x) { return self.eval(k, x); };
}

namespace {

using Poly = std::vector<double>;  // ascending coefficients

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0};
  Poly d(p.size() - 1);
  for (std::size_t j = 1; j < p.size(); ++j) d[j - 1] = static_cast<double>(j) * p[j];
  return d;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double horner(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t j = p.size(); j-- > 0;) acc = acc * x + p[j];
  return acc;
}

// Polynomials P_k of the bump recurrence, u = 1 - t^2.
std::vector<Poly> bump_polynomials(int max_order) {
  const Poly u{1.0, 0.0, -1.0};
  const Poly u2 = multiply(u, u);
  std::vector<Poly> ps{Poly{1.0}};
  for (int k = 0; k < max_order; ++k) {
    const Poly& pk = ps.back();
    // (4k t u - 2t) = t (4k - 2 - 4k t^2)
    const Poly factor{0.0, 4.0 * k - 2.0, 0.0, -4.0 * k};
    ps.push_back(add(multiply(derivative(pk), u2), multiply(factor, pk)));
  }
  return ps;
}

// Polynomials Q_k with <x>^beta derivative f^{(k)} = Q_k(x) (1 + x^2)^{beta/2 - k}.
std::vector<Poly> symbol_polynomials(double beta, int max_order) {
  const Poly w{1.0, 0.0, 1.0};
  std::vector<Poly> qs{Poly{1.0}};
  for (int k = 0; k < max_order; ++k) {
    const Poly& qk = qs.back();
    const Poly factor{0.0, beta - 2.0 * k};
    qs.push_back(add(multiply(derivative(qk), w), multiply(factor, qk)));
  }
  return qs;
}

class Bump final : public SmoothFunction {
 public:
  Bump(double center, double radius, double amplitude, int max_order)
      : center_(center), radius_(radius), amplitude_(amplitude), max_order_(max_order),
        polys_(bump_polynomials(max_order)) {
    if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
    if (max_order < 0 || max_order > 30) throw std::invalid_argument("bump max_order must be in [0, 30]");
  }

  int max_order() const override { return max_order_; }
  FunctionClass function_class() const override {
    return FunctionClass::compact(center_ - radius_, center_ + radius_);
  }
  void derivatives(double x, std::span<Complex> out) const override {
    const double t = (x - center_) / radius_;
    const double u = 1.0 - t * t;
    if (!(u > 0.0)) {
      std::fill(out.begin(), out.end(), Complex(0.0));
      return;
    }
    const double log_u = std::log(u);
    const double base = 1.0 - 1.0 / u;
    double rk = 1.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double e = std::exp(base - 2.0 * static_cast<double>(k) * log_u);
      out[k] = amplitude_ * rk * horner(polys_[k], t) * e;
      rk /= radius_;
    }
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "bump(" << center_ << "," << radius_;
    if (amplitude_ != 1.0) os << "," << amplitude_;
    os << ")";
    return os.str();
  }

 private:
  double center_, radius_, amplitude_;
  int max_order_;
  std::vector<Poly> polys_;
};

class JapanesePower final : public SmoothFunction {
 public:
  JapanesePower(double beta, int max_order) : beta_(beta), max_order_(max_order), polys_(symbol_polynomials(beta, max_order)) {}

  int max_order() const override { return max_order_; }
  FunctionClass function_class() const override { return FunctionClass::symbol(beta_); }
  void derivatives(double x, std::span<Complex> out) const override {
    const double log_w = std::log1p(x * x);
    const double log_ax = x == 0.0 ? 0.0 : std::log(std::abs(x));
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double gamma = 0.5 * beta_ - static_cast<double>(k);
      // Term-wise in the log domain so large |x| neither overflows nor cancels early.
      double acc = 0.0;
      const Poly& q = polys_[k];
      for (std::size_t j = 0; j < q.size(); ++j) {
        if (q[j] == 0.0) continue;
        if (x == 0.0) {
          if (j == 0) acc += q[0];
          continue;
        }
        const double mag = std::exp(static_cast<double>(j) * log_ax + gamma * log_w);
        const double sign = (x < 0.0 && (j % 2 == 1)) ? -1.0 : 1.0;
        acc += q[j] * sign * mag;
      }
      out[k] = acc;
    }
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "symbol(" << beta_ << ")";
    return os.str();
  }

 private:
  double beta_;
  int max_order_;
  std::vector<Poly> polys_;
};

class PlaneWave final : public SmoothFunction {
 public:
  PlaneWave(double omega, int max_order) : omega_(omega), max_order_(max_order) {}
  int max_order() const override { return max_order_; }
  FunctionClass function_class() const override { return FunctionClass::symbol(0.0); }
  void derivatives(double x, std::span<Complex> out) const override {
    const Complex e = std::exp(kI * omega_ * x);
    Complex factor = 1.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = factor * e;
      factor *= kI * omega_;
    }
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "wave(" << omega_ << ")";
    return os.str();
  }

 private:
  double omega_;
  int max_order_;
};

class Product final : public SmoothFunction {
 public:
  Product(SmoothFunctionBundle f, SmoothFunctionBundle g) : f_(std::move(f)), g_(std::move(g)) {}
  int max_order() const override { return std::min(f_.max_order(), g_.max_order()); }
  FunctionClass function_class() const override {
    const FunctionClass a = f_.function_class();
    const FunctionClass b = g_.function_class();
    if (a.is_compact() && b.is_compact()) {
      const double lo = std::max(a.support_lo, b.support_lo);
      const double hi = std::min(a.support_hi, b.support_hi);
      return lo <= hi ? FunctionClass::compact(lo, hi) : FunctionClass::compact(lo, lo);
    }
    if (a.is_compact()) return a;
    if (b.is_compact()) return b;
    return FunctionClass::symbol(a.beta + b.beta);
  }
  void derivatives(double x, std::span<Complex> out) const override {
    const std::size_t n = out.size();
    Complex fd[64], gd[64];
    f_.derivatives(x, std::span<Complex>(fd, n));
    g_.derivatives(x, std::span<Complex>(gd, n));
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc = 0.0;
      double binom = 1.0;
      for (std::size_t j = 0; j <= k; ++j) {
        acc += binom * fd[j] * gd[k - j];
        binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
      }
      out[k] = acc;
    }
  }
  std::string describe() const override { return f_.describe() + "*" + g_.describe(); }
  bool reduced_accuracy() const override { return f_.reduced_accuracy() || g_.reduced_accuracy(); }

 private:
  SmoothFunctionBundle f_, g_;
};

class Conjugate final : public SmoothFunction {
 public:
  explicit Conjugate(SmoothFunctionBundle f) : f_(std::move(f)) {}
  int max_order() const override { return f_.max_order(); }
  FunctionClass function_class() const override { return f_.function_class(); }
  void derivatives(double x, std::span<Complex> out) const override {
    f_.derivatives(x, out);
    for (auto& v : out) v = std::conj(v);
  }
  std::string describe() const override { return "conj(" + f_.describe() + ")"; }
  bool reduced_accuracy() const override { return f_.reduced_accuracy(); }

 private:
  SmoothFunctionBundle f_;
};

class FiniteDifference final : public SmoothFunction {
 public:
  FiniteDifference(ScalarFunction f, FunctionClass cls, std::string name, double step, int max_order)
      : f_(std::move(f)), cls_(cls), name_(std::move(name)), step_(step), max_order_(max_order) {
    if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  }
  int max_order() const override { return max_order_; }
  FunctionClass function_class() const override { return cls_; }
  void derivatives(double x, std::span<Complex> out) const override {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (k == 0) {
        out[0] = f_(x);
        continue;
      }
      Complex acc = 0.0;
      double binom = 1.0;
      for (std::size_t j = 0; j <= k; ++j) {
        const double shift = (0.5 * static_cast<double>(k) - static_cast<double>(j)) * step_;
        acc += ((j % 2 == 0) ? binom : -binom) * f_(x + shift);
        binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
      }
      out[k] = acc / std::pow(step_, static_cast<double>(k));
    }
  }
  std::string describe() const override { return "fd(" + name_ + ")"; }
  bool reduced_accuracy() const override { return true; }

 private:
  ScalarFunction f_;
  FunctionClass cls_;
  std::string name_;
  double step_;
  int max_order_;
};

std::vector<double> parse_args(const std::string& text, std::string_view spec) {
  std::vector<double> args;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty argument in function spec '" + std::string(spec) + "'");
    const std::string trimmed = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(trimmed, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != trimmed.size()) {
      throw std::invalid_argument("non-numeric argument '" + trimmed + "' in function spec '" + std::string(spec) + "'");
    }
    args.push_back(v);
  }
  return args;
}

}  // namespace

SmoothFunctionBundle bump(double center, double radius, double amplitude, int max_order) {
  return SmoothFunctionBundle(std::make_shared<Bump>(center, radius, amplitude, max_order));
}

SmoothFunctionBundle japanese_power(double beta, int max_order) {
  return SmoothFunctionBundle(std::make_shared<JapanesePower>(beta, max_order));
}

SmoothFunctionBundle plane_wave(double omega, int max_order) {
  return SmoothFunctionBundle(std::make_shared<PlaneWave>(omega, max_order));
}

SmoothFunctionBundle product(const SmoothFunctionBundle& f, const SmoothFunctionBundle& g) {
  return SmoothFunctionBundle(std::make_shared<Product>(f, g));
}

SmoothFunctionBundle conjugate(const SmoothFunctionBundle& f) {
  return SmoothFunctionBundle(std::make_shared<Conjugate>(f));
}

SmoothFunctionBundle finite_difference(ScalarFunction f, FunctionClass cls, std::string name, double step,
                                       int max_order) {
  return SmoothFunctionBundle(std::make_shared<FiniteDifference>(std::move(f), cls, std::move(name), step, max_order));
}

SmoothFunctionBundle parse_function_spec(std::string_view spec) {
  static const std::regex pattern(R"(^\s*([A-Za-z_]+)\s*\((.*)\)\s*$)");
  std::smatch m;
  const std::string text(spec);
  if (!std::regex_match(text, m, pattern)) {
    throw std::invalid_argument("malformed function spec '" + text + "' (expected name(args))");
  }
  const std::string name = m[1].str();
  const std::vector<double> args = parse_args(m[2].str(), spec);
  if (name == "bump") {
    if (args.size() != 2 && args.size() != 3) throw std::invalid_argument("bump expects (center, radius[, amplitude])");
    return bump(args[0], args[1], args.size() == 3 ? args[2] : 1.0);
  }
  if (name == "symbol") {
    if (args.size() != 1) throw std::invalid_argument("symbol expects (beta)");
    return japanese_power(args[0]);
  }
  if (name == "wave") {
    if (args.size() != 1) throw std::invalid_argument("wave expects (omega)");
    return plane_wave(args[0]);
  }
  throw std::invalid_argument("unknown function '" + name + "' (known: bump, symbol, wave)");
}

std::vector<double> symbol_constants(const SmoothFunctionBundle& f, double beta, int order,
                                     std::span<const double> grid) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  std::vector<Complex> d(static_cast<std::size_t>(order) + 1);
  for (double x : grid) {
    f.derivatives(x, d);
    for (int k = 0; k <= order; ++k) {
      const double ratio = std::abs(d[k]) / std::pow(bracket(x), beta - k);
      c[k] = std::max(c[k], ratio);
    }
  }
  return c;
}

}  // namespace hsfc
