#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsfc/linalg.hpp"

namespace hsfc {

/// Which decay class a function belongs to.
struct FunctionClass {
  enum class Kind { compact_support, symbol };

  Kind kind = Kind::compact_support;
  double support_lo = 0.0;  // compact_support: supp f within [lo, hi]
  double support_hi = 0.0;
  double beta = 0.0;        // symbol: f^{(m)} = O(<x>^{beta - m})

  static FunctionClass compact(double lo, double hi);
  static FunctionClass symbol(double beta);

  bool is_compact() const { return kind == Kind::compact_support; }
  /// max(|lo|, |hi|) for compact support.
  double support_radius() const;
};

/// A smooth function together with closed-form derivatives up to max_order().
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;

  virtual int max_order() const = 0;
  virtual FunctionClass function_class() const = 0;
  /// out[k] = f^{(k)}(x) for k < out.size(); out.size() <= max_order() + 1.
  virtual void derivatives(double x, std::span<Complex> out) const = 0;
  virtual std::string describe() const = 0;
  /// Derivatives come from differencing rather than closed forms.
  virtual bool reduced_accuracy() const { return false; }
};

/// Immutable, cheaply copyable handle to a SmoothFunction.
class SmoothFunctionBundle {
 public:
  explicit SmoothFunctionBundle(std::shared_ptr<const SmoothFunction> impl);

  Complex eval(int k, double x) const;
  Complex operator()(double x) const { return eval(0, x); }
  void derivatives(double x, std::span<Complex> out) const;

  int max_order() const { return impl_->max_order(); }
  FunctionClass function_class() const { return impl_->function_class(); }
  std::string describe() const { return impl_->describe(); }
  bool reduced_accuracy() const { return impl_->reduced_accuracy(); }

  /// Pointwise real->complex map for f^{(k)}, usable with matrix_function_oracle.
  ScalarFunction derivative_fn(int k) const;

 private:
  std::shared_ptr<const SmoothFunction> impl_;
};

inline constexpr int kDefaultMaxOrder = 10;

/// amplitude * e * exp(-1/(1 - t^2)), t = (x - center)/radius, so that the
/// peak value f(center) equals amplitude. Derivatives use
/// f^{(k)} = r^{-k} P_k(t) (1 - t^2)^{-2k} f, P_{k+1} = P_k' u^2 + (4k t u - 2t) P_k, u = 1 - t^2.
SmoothFunctionBundle bump(double center, double radius, double amplitude = 1.0,
                          int max_order = kDefaultMaxOrder);

/// <x>^beta = (1 + x^2)^{beta/2}, in S^beta.
SmoothFunctionBundle japanese_power(double beta, int max_order = kDefaultMaxOrder);

/// exp(i omega x), in S^0.
SmoothFunctionBundle plane_wave(double omega, int max_order = kDefaultMaxOrder);

/// Pointwise product via the Leibniz rule. Compact if either factor is;
/// otherwise symbol class with beta_f + beta_g.
SmoothFunctionBundle product(const SmoothFunctionBundle& f, const SmoothFunctionBundle& g);

/// Complex conjugate.
SmoothFunctionBundle conjugate(const SmoothFunctionBundle& f);

/// Fallback for functions without closed-form derivatives: central
/// differences of order k with step h. Flagged reduced_accuracy().
SmoothFunctionBundle finite_difference(ScalarFunction f, FunctionClass cls, std::string name,
                                       double step = 1e-2, int max_order = 4);

/// Parses "bump(c,r)", "bump(c,r,amplitude)", "symbol(beta)", "wave(omega)".
/// Throws std::invalid_argument on malformed input.
SmoothFunctionBundle parse_function_spec(std::string_view spec);

/// Fitted constants C_k = max over the grid of |f^{(k)}(x)| / <x>^{beta - k},
/// k = 0..order. Finite for genuine S^beta symbols.
std::vector<double> symbol_constants(const SmoothFunctionBundle& f, double beta, int order,
                                     std::span<const double> grid);

}  // namespace hsfc
