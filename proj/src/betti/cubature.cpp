#include "leg/betti/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace leg {

namespace {

struct Cell {
  Rect r;
  double value = 0, error = 0;
  int split = 0;
  long nonfinite = 0;
};

// Genz-Malik weights for two dimensions.
constexpr double L2 = 0.35856858280031809;   // sqrt(9/70)
constexpr double L3 = 0.94868329805051380;   // sqrt(9/10)
constexpr double L4 = 0.94868329805051380;   // sqrt(9/10)
constexpr double L5 = 0.68824720161168529;   // sqrt(9/19)
constexpr double W1 = -3816.0 / 19683, W2 = 980.0 / 6561, W3 = 1020.0 / 19683, W4 = 200.0 / 19683,
                 W5 = 6859.0 / 19683 / 4;
constexpr double V1 = -971.0 / 729, V2 = 245.0 / 486, V3 = 65.0 / 1458, V4 = 25.0 / 729;

void evaluate(const Integrand2D& f, Cell& c) {
  const double cx = 0.5 * (c.r.x0 + c.r.x1), cy = 0.5 * (c.r.y0 + c.r.y1);
  const double hx = 0.5 * (c.r.x1 - c.r.x0), hy = 0.5 * (c.r.y1 - c.r.y0);
  long bad = 0;
  auto F = [&](double u, double v) {
    double y = f(cx + u * hx, cy + v * hy);
    if (!std::isfinite(y)) {
      ++bad;
      return 0.0;
    }
    return y;
  };
  const double f0 = F(0, 0);
  const double a2x = F(L2, 0) + F(-L2, 0), a2y = F(0, L2) + F(0, -L2);
  const double a3x = F(L3, 0) + F(-L3, 0), a3y = F(0, L3) + F(0, -L3);
  const double s4 = F(L4, L4) + F(L4, -L4) + F(-L4, L4) + F(-L4, -L4);
  const double s5 = F(L5, L5) + F(L5, -L5) + F(-L5, L5) + F(-L5, -L5);
  const double s2 = a2x + a2y, s3 = a3x + a3y;
  const double vol = 4 * hx * hy;
  const double i7 = vol * (W1 * f0 + W2 * s2 + W3 * s3 + W4 * s4 + W5 * s5);
  const double i5 = vol * (V1 * f0 + V2 * s2 + V3 * s3 + V4 * s4);
  c.value = i7;
  c.error = std::abs(i7 - i5);
  const double ratio = (L2 * L2) / (L3 * L3);
  const double dx = std::abs(a2x - 2 * f0 - ratio * (a3x - 2 * f0));
  const double dy = std::abs(a2y - 2 * f0 - ratio * (a3y - 2 * f0));
  c.split = dx >= dy ? 0 : 1;
  c.nonfinite = bad;
}

constexpr long kEvalsPerCell = 17;

}  // namespace

CubatureResult adaptive_cubature(const Integrand2D& f, const std::vector<Rect>& domain, const CubatureOptions& opt) {
  std::vector<Cell> cells(domain.size());
  for (size_t i = 0; i < domain.size(); ++i) cells[i].r = domain[i];
  const long n0 = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
  for (long i = 0; i < n0; ++i) evaluate(f, cells[i]);

  CubatureResult res;
  res.evals = n0 * kEvalsPerCell;
  auto cmp = [&](size_t a, size_t b) {
    if (cells[a].error != cells[b].error) return cells[a].error < cells[b].error;
    return a > b;
  };
  std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> heap(cmp);
  for (size_t i = 0; i < cells.size(); ++i) heap.push(i);

  auto totals = [&]() {
    // fixed order, compensated
    double s = 0, c = 0, e = 0;
    for (const Cell& x : cells) {
      double y = x.value - c;
      double t = s + y;
      c = (t - s) - y;
      s = t;
      e += x.error;
    }
    res.value = s;
    res.error = e;
  };
  totals();
  while (res.error > opt.abs_tol && res.evals < opt.max_evals) {
    std::vector<size_t> pick;
    while (!heap.empty() && static_cast<int>(pick.size()) < opt.batch) {
      pick.push_back(heap.top());
      heap.pop();
    }
    if (pick.empty()) break;
    const long k = static_cast<long>(pick.size());
    std::vector<Cell> kids(2 * k);
    for (long j = 0; j < k; ++j) {
      const Cell& c = cells[pick[j]];
      Rect a = c.r, b = c.r;
      if (c.split == 0) {
        a.x1 = b.x0 = 0.5 * (c.r.x0 + c.r.x1);
      } else {
        a.y1 = b.y0 = 0.5 * (c.r.y0 + c.r.y1);
      }
      kids[2 * j].r = a;
      kids[2 * j + 1].r = b;
    }
#pragma omp parallel for schedule(dynamic, 4) if (opt.parallel)
    for (long j = 0; j < 2 * k; ++j) evaluate(f, kids[j]);
    for (long j = 0; j < k; ++j) {
      cells[pick[j]] = kids[2 * j];
      cells.push_back(kids[2 * j + 1]);
      heap.push(pick[j]);
      heap.push(cells.size() - 1);
    }
    res.evals += 2 * k * kEvalsPerCell;
    totals();
  }
  for (const Cell& c : cells) res.nonfinite += c.nonfinite;
  res.cells = static_cast<long>(cells.size());
  res.converged = res.error <= opt.abs_tol;
  return res;
}

}  // namespace leg
