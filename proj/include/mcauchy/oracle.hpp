#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "mcauchy/geometry.hpp"

namespace mcauchy {

enum class ExecPolicy { Serial, Parallel };

// Central knobs for the verification machinery. One tuning surface: the
// acceptance suite builds exactly one of these.
struct OracleConfig {
  double quad_tol = 1e-10;       // target absolute error for integrate()
  int quad_min_order = 8;
  int quad_max_order = 8192;
  double fd_step = 1e-5;         // base step for finite differences
  int argmax_budget = 10000;     // function evaluations per numeric_argmax
  int argmax_restarts = 3;
  std::uint64_t seed = 7;
  ExecPolicy policy = ExecPolicy::Serial;
};

struct QuadratureDomain {
  enum class Kind { Interval, Rectangle, CircleS1, SphereS2, LambertDisk };
  Kind kind;
  // Interval: [a(0), b(0)]. Rectangle: [a(0),b(0)] x [a(1),b(1)].
  Vec a, b;

  static QuadratureDomain interval(double lo, double hi);
  static QuadratureDomain rectangle(double x0, double x1, double y0, double y1);
  static QuadratureDomain circle();        // S^1, arc-length measure
  static QuadratureDomain sphere();        // S^2, surface measure
  static QuadratureDomain lambert_disk();  // v1^2+v2^2 <= 4, Lebesgue measure
};

struct QuadratureSpec {
  QuadratureDomain domain;
  int order = 64;      // initial node count per axis (>= 8)
  double tol = 1e-10;  // absolute error target for Richardson doubling
};

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Deterministic pairwise sum, identical tree regardless of policy/threads.
double pairwise_sum(const std::vector<double>& v);

// Integrates f over the domain; integrand takes the domain's natural
// coordinates: Interval -> (x), Rectangle -> (x,y), CircleS1 -> unit vector
// in R^2, SphereS2 -> unit vector in R^3, LambertDisk -> (v1,v2).
// Doubles the order until two successive estimates agree within tol.
double integrate(const std::function<double(const Vec&)>& f, const QuadratureSpec& spec,
                 ExecPolicy policy = ExecPolicy::Serial);

// Integral of f over R^d (d = 1 or 2) by pulling back to the sphere through
// the stereographic chart, so heavy tails are handled exactly once.
double integrate_rd(const std::function<double(const Vec&)>& f, int d, double tol = 1e-10);

// |det| of the finite-difference Jacobian of map at x (central differences,
// one Richardson step). Throws singular_input if singularity_dist < 10h.
double jacobian_det_fd(const std::function<Vec(const Vec&)>& map, const Vec& x,
                       double h = 1e-5,
                       double singularity_dist = std::numeric_limits<double>::infinity());

// Tangent-frame variant for maps preserving the unit sphere: the d x d
// Jacobian determinant in orthonormal tangent frames at y and at map(y).
double jacobian_det_fd_sphere(const std::function<Vec(const Vec&)>& map, const Vec& y,
                              double h = 1e-5);

// Deterministic orthonormal basis of the tangent space at unit y (columns).
Mat tangent_basis(const Vec& y);

struct ArgmaxResult {
  Vec x;
  double value;
  bool converged;
  int evals;
};

// Derivative-free maximization: Nelder-Mead with seeded random restarts.
ArgmaxResult numeric_argmax(const std::function<double(const Vec&)>& f, const Vec& x0,
                            int budget = 10000, int restarts = 3, std::uint64_t seed = 7,
                            double tol = 1e-10);

// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample variant, symmetric in its arguments.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value at alpha = 0.01.
inline double ks_critical_001(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }
inline double ks_critical_001_two_sample(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

}  // namespace mcauchy
