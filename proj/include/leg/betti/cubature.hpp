#pragma once

// Globally adaptive cubature on unions of rectangles with the degree-7
// Genz-Malik rule and its embedded degree-5 rule as error estimate.

#include <functional>
#include <vector>

namespace leg {

struct Rect {
  double x0, x1, y0, y1;
};

struct CubatureOptions {
  double abs_tol = 1e-8;
  long max_evals = 20'000'000;
  int batch = 512;        // cells split per round
  bool parallel = true;   // OpenMP over the cells of a round
};

struct CubatureResult {
  double value = 0, error = 0;
  long cells = 0, evals = 0;
  long nonfinite = 0;  // samples replaced by 0
  bool converged = false;
};

using Integrand2D = std::function<double(double, double)>;

// Deterministic: the cells split in each round and the summation order do
// not depend on the thread count, so serial and parallel runs agree bitwise.
CubatureResult adaptive_cubature(const Integrand2D& f, const std::vector<Rect>& domain, const CubatureOptions& opt);

}  // namespace leg
