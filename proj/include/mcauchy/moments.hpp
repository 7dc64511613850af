#pragma once

#include "mcauchy/geometry.hpp"

namespace mcauchy {

struct Hyp2F1Args {
  double a, b, c, z;
};

// Gauss hypergeometric series 2F1(a,b;c;z) for z < 1, relative tolerance
// 1e-12. Negative arguments go through the Pfaff transformation so the
// series runs on an argument in (0,1). Term cap 10^6.
double hyp2f1(const Hyp2F1Args& args);
double hyp2f1(double a, double b, double c, double z);

// Same value through the Euler integral representation (needs c > b > 0);
// an independent route used by the verification suite.
double hyp2f1_integral(double a, double b, double c, double z);

// First and second moments mu_1, mu_2 of the marginal family on (-1,1) with
// concentration varphi in (-1,1) and order nu > 0. Integer nu in 1..4 uses
// the closed forms; otherwise both hypergeometric expressions are evaluated
// and cross-checked at 1e-10. A Taylor branch covers |varphi| < 1e-4 where
// the (1+varphi^2)/(2 varphi) prefactor is a removable singularity.
double marginal_mean(double nu, double varphi);
double marginal_second_moment(double nu, double varphi);

// The hypergeometric routes on their own (no closed forms, no Taylor
// branch); the verification suite cross-checks the closed forms against
// these. marginal_mean_2f1 evaluates both displayed expressions and insists
// they agree at 1e-10.
double marginal_mean_2f1(double nu, double varphi);
double marginal_second_moment_2f1(double nu, double varphi);
inline double marginal_variance(double nu, double varphi) {
  const double m1 = marginal_mean(nu, varphi);
  return marginal_second_moment(nu, varphi) - m1 * m1;
}

// E(Y) and E(YY') of the spherical Cauchy with parameter phi (any norm
// except 1; |phi| > 1 is reduced through phi -> phi/|phi|^2 first).
struct SphereMoments {
  Vec mean;
  Mat scatter;
};
SphereMoments sphere_mean_scatter(const Vec& phi, int d);

struct MomResult {
  Vec phi;
  bool clamped;  // sample mean norm at or beyond sup mu_1; boundary returned
};

// Method of moments for the spherical Cauchy: direction from the sample
// mean, concentration by inverting mu_1(d) with bisection. The inversion
// checks monotonicity of mu_1(d) on a grid before trusting it.
MomResult mom_estimate(const std::vector<Vec>& sample, int d);
MomResult mom_estimate(const Mat& sample_rows, int d);

}  // namespace mcauchy
