#pragma once

#include <variant>
#include <vector>

#include "mcauchy/densities.hpp"

namespace mcauchy {

// Stationarity measures at a candidate maximum. grad_mu_residual is the norm
// of sum_j (x_j - mu)/(sigma^2 + |x_j - mu|^2); grad_sigma_residual is
// sum_j sigma^2/(sigma^2 + |x_j - mu|^2) - n/2 (signed). Both vanish exactly
// at stationary points.
struct StationaryDiagnostics {
  double grad_mu_residual = 0.0;
  double grad_sigma_residual = 0.0;
  double hessian_max_eigenvalue = 0.0;
  bool coincidence_flag = false;
};

struct PointMassResult {
  ExtendedPoint location;
};

// Circle of equal maximal likelihood in parameter space: center + radius *
// (u cos t + v sin t) with orthonormal u, v. For Euclidean data the circle
// lives in (mu, sigma) coordinates, i.e. R^{d+1} with the last axis = sigma.
struct ContourCircleResult {
  Vec center;
  double radius;
  Vec u, v;
};

struct EstimateResult {
  ExtendedComplex theta;
  double loglik;
  StationaryDiagnostics diag;
  bool converged;
};

using MleResult = std::variant<PointMassResult, ContourCircleResult, EstimateResult>;

struct MleConfig {
  double tol = 1e-8;     // residual tolerance for the converged flag
  int max_evals = 10000; // outer derivative-free budget
  std::uint64_t seed = 7;
};

// Log-likelihood of n iid observations (rows of data) under C_d(theta),
// including the constant term. sigma must be positive.
double loglik_euclid(const ExtendedComplex& theta, const Mat& data);

// Sum of configuration points pushed through the inverse stereographic
// projection: sum_j g((x_j - mu)/sigma) in R^{d+1}. Vanishes exactly at
// stationary points of the likelihood; its components reproduce the two
// stationarity equations up to positive factors.
Vec likelihood_residual(const ExtendedComplex& theta, const Mat& data);

// Analytic Hessian of the full log-likelihood in (mu_1..mu_d, sigma)
// coordinates. Matches central finite differences of loglik_euclid.
Mat loglik_hessian(const ExtendedComplex& theta, const Mat& data);

StationaryDiagnostics stationary_diagnostics(const ExtendedComplex& theta, const Mat& data);

struct ProfileResult {
  double sigma;    // root of the sigma-stationarity equation, 0 on boundary
  double lambda;   // profiled log-likelihood ell(mu, sigma(mu))
  bool diverges;   // majority coincidence at mu: sup is +infinity as sigma->0
};

// Profiles sigma out for fixed mu by bracketing the unique root of
// sum sigma^2/(sigma^2+r_j^2) = n/2 (the left side is increasing in sigma).
ProfileResult profile_sigma(const Vec& mu, const Mat& data);

// Closed-form maximum likelihood for n <= 3 observations.
MleResult mle_closed(const Mat& data);

// General-n maximizer: closed forms for n <= 3; otherwise profile-likelihood
// search over mu (derivative-free with restarts) followed by Newton
// refinement on (mu, sigma) using the analytic gradient and Hessian.
// Degenerate data resolve to PointMass (strict majority at one point) or
// ContourCircle (exactly two values, half each).
MleResult mle_numeric(const Mat& data, const MleConfig& cfg = {});

struct SphereEstimateResult {
  Vec phi;
  double loglik;
  StationaryDiagnostics diag;
  bool converged;
};

// Point mass carries the unit vector itself.
using SphereMleResult = std::variant<Vec, ContourCircleResult, SphereEstimateResult>;

// Maximum likelihood for the spherical Cauchy: transports the data through
// the stereographic projection (after rotating a data-free direction onto
// the projection pole), runs mle_numeric, and transports the result back.
SphereMleResult mle_sphere(const Mat& data_unit_rows, const MleConfig& cfg = {});

}  // namespace mcauchy
