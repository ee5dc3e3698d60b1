#include "leg/betti/height.hpp"

#include <cmath>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace leg {

namespace {

constexpr double kOuter = 2.5;  // |l| = 5/2 separates the finite charts from infinity

// A star-shaped piece in a chart: t = origin + r e^{i theta} with
// r = exp(alpha(theta) + beta(theta) s), s in [s0, s1].
struct Piece {
  Chart chart;
  Cd origin;
  std::vector<double> theta_breaks;
  double s0, s1;
  std::function<std::pair<double, double>(double)> ab;  // theta -> (alpha, beta)
  bool inner;  // part of an exclusion disk
};

struct Job {
  const FiberModel* model;
  const Piece* piece;
};

double piece_integrand(const FiberModel& m, const Piece& p, double s, double th) {
  auto [alpha, beta] = p.ab(th);
  if (!std::isfinite(alpha) || beta <= 0) return 0;
  const double r = std::exp(alpha + beta * s);
  if (r == 0) return 0;
  const Cd t = p.origin + std::polar(r, th);
  return density_closed(m, t) * r * r * beta;
}

std::vector<Rect> rects(const Piece& p, int sub_s) {
  std::vector<Rect> out;
  std::vector<double> sb;
  // geometric refinement toward s0 for the deep log charts
  if (p.inner) {
    double a = p.s1;
    sb.push_back(a);
    for (double w = 1; a - w > p.s0; w *= 2) sb.push_back(a -= w);
    sb.push_back(p.s0);
    std::reverse(sb.begin(), sb.end());
  } else {
    for (int i = 0; i <= sub_s; ++i) sb.push_back(p.s0 + (p.s1 - p.s0) * i / sub_s);
  }
  for (size_t i = 0; i + 1 < p.theta_breaks.size(); ++i)
    for (size_t j = 0; j + 1 < sb.size(); ++j) out.push_back({sb[j], sb[j + 1], p.theta_breaks[i], p.theta_breaks[i + 1]});
  return out;
}

// Angular integral of the chart integrand at fixed s (composite Gauss-Legendre).
double angular(const FiberModel& m, const Piece& p, double s) {
  static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  static const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                              0.2369268850561891};
  double sum = 0;
  for (size_t i = 0; i + 1 < p.theta_breaks.size(); ++i) {
    const double a = p.theta_breaks[i], b = p.theta_breaks[i + 1];
    const int panels = 32;
    for (int k = 0; k < panels; ++k) {
      const double u0 = a + (b - a) * k / panels, u1 = a + (b - a) * (k + 1) / panels;
      for (int q = 0; q < 5; ++q) {
        const double th = 0.5 * (u0 + u1) + 0.5 * (u1 - u0) * x[q];
        const double v = piece_integrand(m, p, s, th);
        if (std::isfinite(v)) sum += 0.5 * (u1 - u0) * w[q] * v;
      }
    }
  }
  return sum;
}

TailFit fit_tail(const FiberModel& m, const Piece& p, double depth, const std::string& center) {
  TailFit t;
  t.center = center;
  t.g_deep = angular(m, p, -depth);
  t.g_half = angular(m, p, -depth / 2);
  t.tail_p4 = t.g_deep * depth / 3;
  if (t.g_deep > 0 && t.g_half > t.g_deep) {
    t.exponent = std::log2(t.g_half / t.g_deep);
    if (t.exponent > 1.5) {
      t.tail = t.g_deep * depth / (t.exponent - 1);
      return t;
    }
  }
  t.tail = t.tail_p4;
  return t;
}

constexpr double kThetaShift = 0.1234567;  // keeps cell centers off the real axis

std::vector<double> circle_breaks(std::vector<double> kinks) {
  std::vector<double> b;
  const double a = -M_PI + kThetaShift;
  for (double& k : kinks) {
    while (k < a) k += 2 * M_PI;
    while (k >= a + 2 * M_PI) k -= 2 * M_PI;
  }
  kinks.push_back(a);
  kinks.push_back(a + 2 * M_PI);
  std::sort(kinks.begin(), kinks.end());
  // at least 8 angular slices
  for (size_t i = 0; i + 1 < kinks.size(); ++i) {
    const int n = std::max(1, static_cast<int>(std::ceil((kinks[i + 1] - kinks[i]) / (M_PI / 4))));
    for (int j = 0; j < n; ++j) b.push_back(kinks[i] + (kinks[i + 1] - kinks[i]) * j / n);
  }
  b.push_back(kinks.back());
  return b;
}

// Ray length from p to the boundary of {|l - c| < R} intersected with a half
// plane Re l < 1/2 (side = -1) or Re l > 1/2 (side = +1); p in the closure.
double ray_length(Cd p, double th, Cd c, double R, int side) {
  const Cd d = std::polar(1.0, th);
  const Cd q = p - c;
  const double b = std::real(q * std::conj(d));
  const double disc = b * b - (std::norm(q) - R * R);
  double r = disc > 0 ? std::max(0.0, -b + std::sqrt(disc)) : 0.0;
  const double cth = d.real();
  if (side * cth < 0) r = std::min(r, std::max(0.0, (0.5 - p.real()) / cth));
  return r;
}

}  // namespace

HeightIntegral height_integral(const QPoly& x, const HeightIntegralOptions& opt) {
  if (!(opt.eps > 0 && opt.eps < 0.25)) throw std::domain_error("exclusion radius must lie in (0, 1/4)");
  const double le = std::log(opt.eps);
  const FiberModel m0 = FiberModel::make(x, Chart::Zero), m1 = FiberModel::make(x, Chart::One),
                   mi = FiberModel::make(x, Chart::Infinity);
  const double k0 = std::acos(0.2), k1 = std::atan2(std::sqrt(6.0), -0.5);
  auto RA = [](double th) {
    double r = kOuter;
    if (std::cos(th) > 0) r = std::min(r, 0.5 / std::cos(th));
    return r;
  };
  auto RB = [](double th) { return ray_length(Cd(1, 0), th, Cd(0, 0), kOuter, +1); };
  const auto full = circle_breaks({});
  auto unit = [](double) { return std::pair<double, double>(0.0, 1.0); };
  auto ring = [le](std::function<double(double)> R) {
    return [le, R](double th) {
      const double r = R(th);
      return std::pair<double, double>(le, std::log(r) - le);
    };
  };
  std::vector<Piece> pieces = {
      {Chart::Zero, 0.0, full, -opt.depth, le, unit, true},
      {Chart::Zero, 0.0, circle_breaks({k0, -k0}), 0, 1, ring(RA), false},
      {Chart::One, 0.0, full, -opt.depth, le, unit, true},
      {Chart::One, 0.0, circle_breaks({k1, -k1}), 0, 1, ring(RB), false},
      {Chart::Infinity, 0.0, full, -opt.depth, le, unit, true},
      {Chart::Infinity, 0.0, full, 0, 1, ring([](double) { return 1 / kOuter; }), false},
  };
  const FiberModel* models[] = {&m0, &m0, &m1, &m1, &mi, &mi};

  HeightIntegral out;
  CubatureOptions co;
  co.abs_tol = opt.tol / pieces.size();
  co.max_evals = opt.max_evals / pieces.size();
  co.parallel = opt.parallel;
  double qerr = 0;
  out.converged = true;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const FiberModel& m = *models[i];
    auto f = [&](double s, double th) { return piece_integrand(m, p, s, th); };
    CubatureResult r = adaptive_cubature(f, rects(p, 4), co);
    (p.inner ? out.excluded : out.main) += r.value;
    qerr += r.error;
    out.cells += r.cells;
    out.evals += r.evals;
    out.converged = out.converged && r.converged;
  }
  double tail = 0, tail_err = 0;
  const char* names[] = {"0", "1", "inf"};
  for (int c = 0; c < 3; ++c) {
    TailFit t = fit_tail(*models[2 * c], pieces[2 * c], opt.depth, names[c]);
    tail += t.tail;
    tail_err += std::max(std::abs(t.tail - t.tail_p4), 0.25 * t.tail);
    out.tails.push_back(t);
  }
  out.value = out.main + out.excluded + tail;
  out.error_estimate = qerr + tail_err;
  out.excluded_mass_bound = out.excluded + tail + tail_err;
  if (!out.converged)
    throw PrecisionError("height integral: tolerance " + std::to_string(opt.tol) + " not reached (error " +
                         std::to_string(qerr) + ")");
  return out;
}

DiskIntegral disk_integral(const QPoly& x, Cd c, double R, const HeightIntegralOptions& opt) {
  if (!(R > 0) || std::abs(c) + R > kOuter + 1e-12) throw std::domain_error("disk must lie in |l| <= 5/2");
  const FiberModel m0 = FiberModel::make(x, Chart::Zero), m1 = FiberModel::make(x, Chart::One);
  DiskIntegral out;
  CubatureOptions co;
  co.abs_tol = opt.tol / 2;
  co.max_evals = opt.max_evals / 2;
  co.parallel = opt.parallel;
  for (int side : {-1, +1}) {
    if (side < 0 && c.real() - R >= 0.5) continue;
    if (side > 0 && c.real() + R <= 0.5) continue;
    const Cd sing = side < 0 ? Cd(0, 0) : Cd(1, 0);
    Cd p;
    const bool in_half = side < 0 ? c.real() < 0.5 : c.real() > 0.5;
    if (std::abs(sing - c) <= R * (1 + 1e-14))
      p = sing;
    else if (in_half)
      p = c;
    else
      p = Cd(0.5, c.imag());
    const bool singular_origin = p == sing;
    const FiberModel& m = side < 0 ? m0 : m1;
    Piece piece{side < 0 ? Chart::Zero : Chart::One,
                side < 0 ? p : p - 1.0,
                circle_breaks({}),
                singular_origin ? -opt.depth : -30.0,
                0.0,
                [=](double th) {
                  const double r = ray_length(p, th, c, R, side);
                  return std::pair<double, double>(r > 0 ? std::log(r) : -INFINITY, 1.0);
                },
                true};
    auto f = [&](double s, double th) { return piece_integrand(m, piece, s, th); };
    CubatureResult r = adaptive_cubature(f, rects(piece, 4), co);
    out.value += r.value;
    out.error_estimate += r.error;
    out.cells += r.cells;
    if (singular_origin) {
      TailFit t = fit_tail(m, piece, opt.depth, side < 0 ? "0" : "1");
      out.value += t.tail;
      out.error_estimate += std::max(std::abs(t.tail - t.tail_p4), 0.25 * t.tail);
    }
    if (!r.converged) throw PrecisionError("disk integral: tolerance not reached");
  }
  return out;
}

double betti_density(const QPoly& x, Cd lambda, DensityMethod method, double eps) {
  if (eps > 0 && (std::abs(lambda) < eps || std::abs(lambda - 1.0) < eps || std::abs(lambda) * eps > 1))
    throw std::domain_error("inside the exclusion radius; use the tail bound of height_integral");
  if (std::abs(lambda) > kOuter && x.degree() <= 1) {
    const FiberModel m = FiberModel::make(x, Chart::Infinity);
    const double a = std::abs(lambda);
    return density(m, 1.0 / lambda, method) / (a * a * a * a);
  }
  if (lambda.real() >= 0.5) return density(FiberModel::make(x, Chart::One), lambda - 1.0, method);
  return density(FiberModel::make(x, Chart::Zero), lambda, method);
}

std::vector<GridSample> density_grid(const QPoly& x, double re0, double re1, double im0, double im1, double step) {
  if (!(step > 0) || re1 < re0 || im1 < im0) throw std::domain_error("bad grid window");
  const long nx = static_cast<long>(std::floor((re1 - re0) / step + 1e-9)) + 1;
  const long ny = static_cast<long>(std::floor((im1 - im0) / step + 1e-9)) + 1;
  std::vector<GridSample> out(nx * ny);
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < nx * ny; ++k) {
    const double re = re0 + step * (k / ny), im = im0 + step * (k % ny);
    double d;
    try {
      d = betti_density(x, Cd(re, im));
    } catch (const std::domain_error&) {
      d = NAN;  // singular fiber
    }
    out[k] = {re, im, d};
  }
  return out;
}

}  // namespace leg
