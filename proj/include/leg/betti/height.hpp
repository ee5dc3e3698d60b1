#pragma once

// Integrals of the Betti density over the l-plane: the height integral
// (total mass, which is half the canonical height of the section), disk
// masses for torsion counting, and density grids.

#include <string>
#include <vector>

#include "leg/betti/betti.hpp"
#include "leg/betti/cubature.hpp"

namespace leg {

struct HeightIntegralOptions {
  double eps = 1e-3;       // exclusion radius at 0, 1 and 1/eps at infinity
  double tol = 1e-6;       // absolute tolerance of the cubature
  double depth = 200;      // charts reach |log r| = depth; beyond that a fitted tail
  long max_evals = 40'000'000;
  bool parallel = true;
};

struct TailFit {
  std::string center;  // "0", "1", "inf"
  double g_deep = 0, g_half = 0;  // angular integrals at s = -depth and -depth/2
  double exponent = 0;            // fitted p in g(s) ~ A |s|^-p
  double tail = 0;                // fitted mass beyond depth
  double tail_p4 = 0;          // same with p = 4 (|l|^-2 |log l|^-4 envelope)
};

struct HeightIntegral {
  double value = 0, error_estimate = 0;
  double main = 0;               // outside the exclusion disks
  double excluded = 0;           // inside them, down to depth
  double excluded_mass_bound = 0;  // excluded + tails + their error
  std::vector<TailFit> tails;
  long cells = 0, evals = 0;
  bool converged = false;
};

// Throws PrecisionError if the tolerance is not reached within max_evals.
HeightIntegral height_integral(const QPoly& x, const HeightIntegralOptions& opt = {});

// Mass of the open disk |l - c| < r; the disk must lie in |l| <= 5/2.
struct DiskIntegral {
  double value = 0, error_estimate = 0;
  long cells = 0;
};
DiskIntegral disk_integral(const QPoly& x, Cd c, double r, const HeightIntegralOptions& opt = {});

// Density on the l-plane (closed form or finite differences).  Inside the
// exclusion disks (|l| < eps, |l - 1| < eps, |l| > 1/eps) throws domain_error:
// there only the tail bound of height_integral applies.
double betti_density(const QPoly& x, Cd lambda, DensityMethod method = DensityMethod::ClosedForm, double eps = 0);

struct GridSample {
  double re, im, density;
};
std::vector<GridSample> density_grid(const QPoly& x, double re0, double re1, double im0, double im1, double step);

}  // namespace leg
