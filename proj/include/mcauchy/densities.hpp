#pragma once

#include <variant>

#include "mcauchy/moebius.hpp"

namespace mcauchy {

// Cauchy family on R^d u {inf} with parameter theta = mu + i*sigma.
// sigma > 0 is the continuous case; sigma = 0 is a point mass at mu and
// theta = inf a point mass at infinity (densities refuse those regimes).
class EuclideanCauchy {
 public:
  explicit EuclideanCauchy(ExtendedComplex theta);
  EuclideanCauchy(Vec mu, double sigma);

  const ExtendedComplex& theta() const { return theta_; }
  Eigen::Index dim() const { return theta_.dim(); }
  bool is_point_mass() const;

  double log_pdf(const ExtendedPoint& x) const;
  double pdf(const ExtendedPoint& x) const;
  double log_pdf(const Vec& x) const;
  double pdf(const Vec& x) const;

 private:
  ExtendedComplex theta_;  // canonical, sigma >= 0
};

// Cauchy family on the unit sphere S^d in R^{d+1}. |phi| < 1 or > 1 are the
// continuous cases (phi and phi/|phi|^2 give the same density), |phi| = 1 is
// a point mass, and phi = inf (or 0) is the uniform law.
class SphericalCauchy {
 public:
  explicit SphericalCauchy(Vec phi);
  static SphericalCauchy uniform(Eigen::Index sphere_dim);  // phi = inf

  bool is_uniform() const { return uniform_; }
  bool is_point_mass() const;
  const Vec& phi() const;
  Eigen::Index sphere_dim() const { return dim_; }  // d, ambient d+1

  double log_pdf(const Vec& y) const;
  double pdf(const Vec& y) const;

 private:
  SphericalCauchy(Eigen::Index d, bool uniform) : dim_(d), uniform_(uniform) {}
  Vec phi_;
  Eigen::Index dim_;
  bool uniform_;
};

// Marginal of the first coordinate of a spherical Cauchy with phi along e_1:
// a two-parameter family on (-1,1) interpolating to the symmetric beta at
// varphi = 0. Symmetric under varphi -> 1/varphi.
class MarginalCauchyBeta {
 public:
  MarginalCauchyBeta(double varphi, double nu);

  double varphi() const { return varphi_; }
  double nu() const { return nu_; }

  double log_pdf(double y1) const;
  double pdf(double y1) const;

 private:
  double varphi_, nu_;
};

// Parameter update of the marginal family under the real Moebius map
// y -> (y+b)/(by+1): returns (varphi+varphi')/(varphi varphi'+1) with
// varphi' = (1-sqrt(1-b^2))/b; b = 0 is the identity.
double marginal_pushforward_param(double varphi, double b);

// The map itself and its derivative (used in change-of-variables checks).
double real_moebius(double y, double b);
double real_moebius_deriv(double y, double b);

// Oval-contour extension on S^d: the image of the uniform law under
// u -> chart^{-1}(mu + L chart(u)), chart = stereographic projection from
// the lower pole -e_{d+1}. L = sigma*I recovers the spherical Cauchy.
class KentTypeCauchy {
 public:
  KentTypeCauchy(Vec mu, Mat L);

  const Vec& mu() const { return mu_; }
  const Mat& L() const { return L_; }
  Eigen::Index sphere_dim() const { return mu_.size(); }  // d, ambient d+1

  // Quadratic-form data: A is the (d+1)x(d+1) SPD matrix with
  // log pdf = log C - d log(y~' A y~), y~ = (y+e_{d+1})/|y+e_{d+1}|.
  const Mat& A_mat() const { return A_; }
  double Qbar() const { return qbar_; }
  const Mat& T_mat() const { return T_; }
  const Vec& eigenvalues() const { return eigvals_; }
  const Mat& eigenvectors() const { return eigvecs_; }  // columns
  double log_const() const { return log_const_; }

  double log_pdf(const Vec& y) const;
  double pdf(const Vec& y) const;
  // Same value through the plane-chart route (no quadratic form); the two
  // routes agreeing is a structural self-check exposed for tests.
  double log_pdf_chart(const Vec& y) const;

 private:
  Vec mu_;
  Mat L_;
  Mat S_;  // (L'L)^{-1}
  Mat A_, T_;
  Vec eigvals_;
  Mat eigvecs_;
  double qbar_ = 0.0;
  double log_const_ = 0.0;
};

struct KentMode {
  Vec mode;
  Vec antimode;
  double fmax;
  double fmin;
  bool degenerate;  // tied extreme eigenvalues, or extremum at the chart pole
};

KentMode kent_mode_antimode(const KentTypeCauchy& dist);

// d = 2 closed forms in polar and Lambert coordinates, parameterized by the
// entries a11, a12, a22 of (L'L)^{-1} (mu = 0). The polar density is with
// respect to sin(xi1) dxi1 dxi2; the Lambert density is a plain Lebesgue
// density on the disk v1^2+v2^2 <= 4.
double kent_polar_pdf(double a11, double a12, double a22, double xi1, double xi2);
// The equivalent amplitude/phase form with alpha*cos(2(xi2-beta)).
double kent_polar_pdf_alt(double a11, double a12, double a22, double xi1, double xi2);
double kent_lambert_pdf(double a11, double a12, double a22, double v1, double v2);
double kent_d2_const(double a11, double a12, double a22);

// Parameter pushforwards behind the closure theorems: Euclidean maps act on
// theta, sphere maps act on phi as a point of R^{d+1} u {inf}, and the
// stereographic pair transports between the two families.
EuclideanCauchy pushforward_euclid(const MoebiusChain& chain, const EuclideanCauchy& dist);
SphericalCauchy pushforward_sphere(const SphereMoebius& s, const SphericalCauchy& dist);
SphericalCauchy transport_to_sphere(const EuclideanCauchy& dist);
EuclideanCauchy transport_to_euclid(const SphericalCauchy& dist);

}  // namespace mcauchy
