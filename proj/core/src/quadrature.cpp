#include "hsfc/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace hsfc {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = n == 1 ? 2.0 : 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("Gauss-Legendre order must be in [1, 256]");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate_composite(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("integrate_composite needs at least one panel");
  const GaussRule& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  CompensatedSum<double> acc(0.0);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double c = lo + 0.5 * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) acc.add(0.5 * h * g.weights[i] * f(c + 0.5 * h * g.nodes[i]));
  }
  return acc.value();
}

}  // namespace hsfc
