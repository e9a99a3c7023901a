#pragma once

// Gauss-Legendre rules and a deterministic adaptive cubature over unions of
// axis-aligned rectangles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

namespace hsfc {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre integral of f over [a, b] with `panels` equal panels.
double integrate_composite(const std::function<double(double)>& f, double a, double b, int panels,
                           int order = 8);

/// Neumaier-compensated accumulator; Value may be double, complex or an Eigen matrix.
template <class Value>
class CompensatedSum {
 public:
  explicit CompensatedSum(Value zero) : sum_(zero), comp_(zero) {}

  void add(const Value& v) {
    Value y = v - comp_;
    Value t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = std::move(t);
  }
  const Value& value() const { return sum_; }

 private:
  Value sum_;
  Value comp_;
};

struct Rect {
  double x0, x1, y0, y1;
  double area() const { return (x1 - x0) * (y1 - y0); }
};

struct CubatureOptions {
  int cells_x = 8;
  int cells_y = 8;
  int max_depth = 12;
  double tol = 1e-6;
  std::size_t max_cells = 400000;
};

template <class Value>
struct CubatureResult {
  Value value;
  double est_error = 0.0;
  std::size_t cells = 0;
  bool converged = false;
};

namespace detail {

struct CellKey {
  std::uint32_t region = 0;
  std::uint32_t cell = 0;
  std::uint64_t path = 0;  // 2 bits per level, left-aligned to 32 levels
  int depth = 0;

  friend bool operator<(const CellKey& a, const CellKey& b) {
    if (a.region != b.region) return a.region < b.region;
    if (a.cell != b.cell) return a.cell < b.cell;
    return a.path < b.path;
  }
  CellKey child(int q) const {
    CellKey k = *this;
    k.depth = depth + 1;
    k.path |= static_cast<std::uint64_t>(q) << (2 * (31 - depth));
    return k;
  }
};

}  // namespace detail

/// Adaptive tensor Gauss-Legendre cubature. Each cell is integrated with the
/// 4x4 rule; the 3x3 rule on the same cell provides the error estimate
/// ||Q4 - Q3||. The cell with the largest estimate is split into quadrants
/// until the summed estimate drops below opts.tol, every splittable cell is at
/// max_depth, or max_cells is reached. Leaves are summed in Morton order of
/// their cell keys with compensated summation, so the value is independent of
/// the refinement order.
///
/// f is either a plain integrand f(x, y) -> Value or an accumulating one,
/// f(x, y, c, acc) performing acc += c * value in place; the latter avoids
/// temporaries for matrix-valued integrands.
template <class Value, class Integrand, class Norm>
CubatureResult<Value> adaptive_cubature(Integrand&& f, std::span<const Rect> regions,
                                        const CubatureOptions& opts, const Value& zero, Norm&& norm) {
  const GaussRule& g4 = gauss_legendre(4);
  const GaussRule& g3 = gauss_legendre(3);

  struct Cell {
    Rect rect;
    detail::CellKey key;
    Value q;
    double err;
  };

  auto evaluate = [&](const Rect& r, const detail::CellKey& key) {
    const double hx = 0.5 * (r.x1 - r.x0), hy = 0.5 * (r.y1 - r.y0);
    const double cx = 0.5 * (r.x1 + r.x0), cy = 0.5 * (r.y1 + r.y0);
    Value q4 = zero;
    Value q3 = zero;
    auto add = [&](Value& acc, double c, double x, double y) {
      if constexpr (std::is_invocable_v<Integrand&, double, double, double, Value&>) {
        f(x, y, c, acc);
      } else {
        acc += c * f(x, y);
      }
    };
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        add(q4, g4.weights[i] * g4.weights[j] * hx * hy, cx + hx * g4.nodes[i], cy + hy * g4.nodes[j]);
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        add(q3, g3.weights[i] * g3.weights[j] * hx * hy, cx + hx * g3.nodes[i], cy + hy * g3.nodes[j]);
      }
    }
    const double err = norm(Value(q4 - q3));
    return Cell{r, key, std::move(q4), err};
  };

  std::vector<Cell> cells;
  auto by_error = [&cells](std::size_t a, std::size_t b) {
    if (cells[a].err != cells[b].err) return cells[a].err < cells[b].err;
    return cells[b].key < cells[a].key;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> heap(by_error);
  std::vector<char> alive;

  double total_err = 0.0;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const Rect& reg = regions[r];
    const double dx = (reg.x1 - reg.x0) / opts.cells_x;
    const double dy = (reg.y1 - reg.y0) / opts.cells_y;
    for (int j = 0; j < opts.cells_y; ++j) {
      for (int i = 0; i < opts.cells_x; ++i) {
        detail::CellKey key;
        key.region = static_cast<std::uint32_t>(r);
        key.cell = static_cast<std::uint32_t>(j * opts.cells_x + i);
        const Rect rect{reg.x0 + i * dx, reg.x0 + (i + 1) * dx, reg.y0 + j * dy, reg.y0 + (j + 1) * dy};
        cells.push_back(evaluate(rect, key));
        alive.push_back(1);
        total_err += cells.back().err;
        heap.push(cells.size() - 1);
      }
    }
  }

  std::size_t leaves = cells.size();
  while (!heap.empty() && total_err > opts.tol && leaves < opts.max_cells) {
    const std::size_t idx = heap.top();
    heap.pop();
    if (cells[idx].key.depth >= opts.max_depth) continue;  // stays a leaf
    const Rect r = cells[idx].rect;
    const detail::CellKey key = cells[idx].key;
    total_err -= cells[idx].err;
    alive[idx] = 0;
    cells[idx].q = zero;
    const double mx = 0.5 * (r.x0 + r.x1), my = 0.5 * (r.y0 + r.y1);
    const Rect quads[4] = {{r.x0, mx, r.y0, my}, {mx, r.x1, r.y0, my}, {r.x0, mx, my, r.y1}, {mx, r.x1, my, r.y1}};
    for (int q = 0; q < 4; ++q) {
      cells.push_back(evaluate(quads[q], key.child(q)));
      alive.push_back(1);
      total_err += cells.back().err;
      heap.push(cells.size() - 1);
    }
    leaves += 3;
  }

  std::vector<std::size_t> order;
  order.reserve(leaves);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (alive[i]) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cells[a].key < cells[b].key; });

  CompensatedSum<Value> value(zero);
  CompensatedSum<double> err(0.0);
  for (std::size_t i : order) {
    value.add(cells[i].q);
    err.add(cells[i].err);
  }
  CubatureResult<Value> out{value.value(), err.value(), order.size(), err.value() <= opts.tol};
  return out;
}

}  // namespace hsfc
