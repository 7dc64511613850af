#include "mcauchy/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "mcauchy/oracle.hpp"

namespace mcauchy {

namespace {

double log_euclid_const(Eigen::Index d) {
  return (d - 1) * std::log(2.0) + std::lgamma((d + 1) / 2.0) - (d + 1) / 2.0 * std::log(M_PI);
}

void check_data(const Mat& data) {
  if (data.rows() < 1 || data.cols() < 1)
    throw invalid_parameter("estimation: data must have at least one row and one column");
  if (!data.allFinite()) throw invalid_parameter("estimation: data must be finite");
}

void check_theta(const ExtendedComplex& theta, const Mat& data, const char* who) {
  if (theta.is_infinite() || !(theta.sigma() > 0.0))
    throw domain_error(std::string(who) + ": requires finite theta with sigma > 0");
  if (theta.dim() != data.cols()) throw invalid_parameter(std::string(who) + ": dimension mismatch");
}

// Largest exact multiplicity among the rows, with a witness.
std::pair<Eigen::Index, Vec> max_multiplicity(const Mat& data) {
  const Eigen::Index n = data.rows();
  Eigen::Index best = 0;
  Vec witness = data.row(0);
  std::vector<bool> seen(n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (seen[i]) continue;
    Eigen::Index count = 1;
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (!seen[j] && data.row(i) == data.row(j)) {
        seen[j] = true;
        ++count;
      }
    if (count > best) {
      best = count;
      witness = data.row(i);
    }
  }
  return {best, witness};
}

Eigen::Index distinct_count(const Mat& data) {
  Eigen::Index n = data.rows(), cnt = 0;
  std::vector<bool> seen(n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cnt;
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (data.row(i) == data.row(j)) seen[j] = true;
  }
  return cnt;
}

ContourCircleResult two_point_contour(const Vec& x1, const Vec& x2) {
  const Eigen::Index d = x1.size();
  Vec center = Vec::Zero(d + 1);
  center.head(d) = 0.5 * (x1 + x2);
  Vec u = Vec::Zero(d + 1);
  u.head(d) = (x1 - x2).normalized();
  return {center, 0.5 * (x1 - x2).norm(), u, Vec::Unit(d + 1, d)};
}

}  // namespace

double loglik_euclid(const ExtendedComplex& theta, const Mat& data) {
  check_data(data);
  check_theta(theta, data, "loglik_euclid");
  const Eigen::Index n = data.rows(), d = data.cols();
  const double s = theta.sigma();
  double acc = n * std::log(s) * static_cast<double>(d);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double r2 = (data.row(j).transpose() - theta.mu()).squaredNorm();
    acc -= d * std::log(s * s + r2);
  }
  return n * log_euclid_const(d) + acc;
}

Vec likelihood_residual(const ExtendedComplex& theta, const Mat& data) {
  check_data(data);
  check_theta(theta, data, "likelihood_residual");
  const Eigen::Index n = data.rows(), d = data.cols();
  Vec acc = Vec::Zero(d + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec a = (data.row(j).transpose() - theta.mu()) / theta.sigma();
    acc += inv_stereographic(ExtendedPoint(a));
  }
  return acc;
}

Mat loglik_hessian(const ExtendedComplex& theta, const Mat& data) {
  check_data(data);
  check_theta(theta, data, "loglik_hessian");
  const Eigen::Index n = data.rows(), d = data.cols();
  const double s = theta.sigma();
  Mat H = Mat::Zero(d + 1, d + 1);
  double hss = -n / (s * s);
  Vec hsm = Vec::Zero(d);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec xb = data.row(j).transpose() - theta.mu();
    const double D = s * s + xb.squaredNorm();
    H.topLeftCorner(d, d) += 2.0 / (D * D) * (2.0 * (xb * xb.transpose()) - D * Mat::Identity(d, d));
    hsm += -4.0 * s / (D * D) * xb;
    hss += -2.0 / D + 4.0 * s * s / (D * D);
  }
  H.topRightCorner(d, 1) = hsm;
  H.bottomLeftCorner(1, d) = hsm.transpose();
  H(d, d) = hss;
  return d * H;  // full log-likelihood carries the factor d
}

StationaryDiagnostics stationary_diagnostics(const ExtendedComplex& theta, const Mat& data) {
  check_data(data);
  check_theta(theta, data, "stationary_diagnostics");
  const Eigen::Index n = data.rows();
  const double s = theta.sigma();
  Vec a1 = Vec::Zero(data.cols());
  double a2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec xb = data.row(j).transpose() - theta.mu();
    const double D = s * s + xb.squaredNorm();
    a1 += xb / D;
    a2 += s * s / D;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(loglik_hessian(theta, data));
  StationaryDiagnostics diag;
  diag.grad_mu_residual = a1.norm();
  diag.grad_sigma_residual = a2 - 0.5 * n;
  diag.hessian_max_eigenvalue = es.eigenvalues().maxCoeff();
  diag.coincidence_flag = 2 * max_multiplicity(data).first >= n;
  return diag;
}

ProfileResult profile_sigma(const Vec& mu, const Mat& data) {
  check_data(data);
  if (data.rows() < 2) throw invalid_parameter("profile_sigma: needs n >= 2");
  if (mu.size() != data.cols()) throw invalid_parameter("profile_sigma: dimension mismatch");
  const Eigen::Index n = data.rows();
  std::vector<double> r2(n);
  Eigen::Index zeros = 0;
  double scale = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    r2[j] = (data.row(j).transpose() - mu).squaredNorm();
    if (r2[j] == 0.0) ++zeros;
    scale = std::max(scale, r2[j]);
  }
  if (2 * zeros > n) return {0.0, std::numeric_limits<double>::infinity(), true};
  if (2 * zeros == n) {
    // The sup is approached as sigma -> 0; the limit is finite.
    double lim = n * log_euclid_const(data.cols());
    for (Eigen::Index j = 0; j < n; ++j)
      if (r2[j] > 0.0) lim -= data.cols() * std::log(r2[j]);
    return {0.0, lim, false};
  }

  auto h = [&](double sig) {
    const double s2 = sig * sig;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) acc += s2 / (s2 + r2[j]);
    return acc;
  };
  double lo = 0.0, hi = std::sqrt(scale) + 1.0;
  while (h(hi) < 0.5 * n) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.5 * n ? lo : hi) = mid;
  }
  const double sig = 0.5 * (lo + hi);
  return {sig, loglik_euclid(ExtendedComplex(mu, sig), data), false};
}

MleResult mle_closed(const Mat& data) {
  check_data(data);
  const Eigen::Index n = data.rows();
  if (n > 3) throw invalid_parameter("mle_closed: only n <= 3");
  if (n == 1) return PointMassResult{ExtendedPoint(data.row(0))};
  if (n == 2) {
    if (data.row(0) == data.row(1)) return PointMassResult{ExtendedPoint(data.row(0))};
    return two_point_contour(data.row(0), data.row(1));
  }
  const auto [mult, witness] = max_multiplicity(data);
  if (mult >= 2) return PointMassResult{ExtendedPoint(witness)};

  const Vec x1 = data.row(0), x2 = data.row(1), x3 = data.row(2);
  const double d12 = (x1 - x2).squaredNorm();
  const double d23 = (x2 - x3).squaredNorm();
  const double d31 = (x3 - x1).squaredNorm();
  const double denom = d12 + d23 + d31;
  const Vec mu = (d12 * x3 + d23 * x1 + d31 * x2) / denom;
  const double sigma = std::sqrt(3.0 * d12 * d23 * d31) / denom;
  const ExtendedComplex theta(mu, sigma);
  return EstimateResult{theta, loglik_euclid(theta, data), stationary_diagnostics(theta, data),
                        true};
}

namespace {

// Gradient of the full log-likelihood in (mu, sigma) coordinates.
Vec loglik_gradient(const ExtendedComplex& theta, const Mat& data) {
  const Eigen::Index n = data.rows(), d = data.cols();
  const double s = theta.sigma();
  Vec g = Vec::Zero(d + 1);
  double gs = n / s;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec xb = data.row(j).transpose() - theta.mu();
    const double D = s * s + xb.squaredNorm();
    g.head(d) += 2.0 * xb / D;
    gs -= 2.0 * s / D;
  }
  g(d) = gs;
  return d * g;
}

ExtendedComplex newton_refine(ExtendedComplex theta, const Mat& data, int max_iter) {
  const Eigen::Index d = data.cols();
  double cur = loglik_euclid(theta, data);
  for (int it = 0; it < max_iter; ++it) {
    const Vec g = loglik_gradient(theta, data);
    if (g.lpNorm<Eigen::Infinity>() < 1e-13 * data.rows() * d) break;
    const Mat H = loglik_hessian(theta, data);
    Vec step = -H.ldlt().solve(g);
    if (!step.allFinite() || g.dot(step) <= 0.0) step = g / (1.0 + g.norm());  // ascent fallback
    double t = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const Vec mu_new = theta.mu() + t * step.head(d);
      const double s_new = theta.sigma() + t * step(d);
      if (!(s_new > 0.0)) continue;
      const ExtendedComplex cand(mu_new, s_new);
      const double val = loglik_euclid(cand, data);
      if (val >= cur) {
        theta = cand;
        cur = val;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return theta;
}

}  // namespace

MleResult mle_numeric(const Mat& data, const MleConfig& cfg) {
  check_data(data);
  const Eigen::Index n = data.rows(), d = data.cols();
  if (n <= 3) return mle_closed(data);

  const auto [mult, witness] = max_multiplicity(data);
  if (2 * mult > n) return PointMassResult{ExtendedPoint(witness)};
  if (2 * mult == n && distinct_count(data) == 2) {
    Vec other = data.row(0);
    for (Eigen::Index j = 0; j < n; ++j)
      if (Vec(data.row(j)) != witness) {
        other = data.row(j);
        break;
      }
    return two_point_contour(witness, other);
  }

  // Start at the coordinate-wise median with sigma = half the median
  // absolute deviation.
  Vec mu0(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    std::vector<double> col(data.col(k).data(), data.col(k).data() + n);
    std::nth_element(col.begin(), col.begin() + n / 2, col.end());
    mu0(k) = col[n / 2];
  }
  std::vector<double> devs(n);
  for (Eigen::Index j = 0; j < n; ++j) devs[j] = (data.row(j).transpose() - mu0).norm();
  std::nth_element(devs.begin(), devs.begin() + n / 2, devs.end());
  double sigma0 = 0.5 * devs[n / 2];
  if (!(sigma0 > 0.0)) sigma0 = 1e-3;

  // Outer search maximizes the profiled likelihood over mu alone; sigma0
  // seeds the first bracket inside profile_sigma implicitly through scale.
  auto profile = [&](const Vec& mu) {
    const ProfileResult p = profile_sigma(mu, data);
    return p.diverges ? std::numeric_limits<double>::infinity() : p.lambda;
  };
  const ArgmaxResult opt = numeric_argmax(profile, mu0, cfg.max_evals, 2, cfg.seed, 1e-12);

  ProfileResult prof = profile_sigma(opt.x, data);
  if (!(prof.sigma > 0.0)) prof.sigma = sigma0;  // boundary case; let Newton decide

  ExtendedComplex theta = newton_refine(ExtendedComplex(opt.x, prof.sigma), data, 60);
  const StationaryDiagnostics diag = stationary_diagnostics(theta, data);
  const bool converged = diag.grad_mu_residual < cfg.tol &&
                         std::abs(diag.grad_sigma_residual) < cfg.tol &&
                         diag.hessian_max_eigenvalue < 0.0;
  return EstimateResult{theta, loglik_euclid(theta, data), diag, converged};
}

namespace {

// Rotation mapping unit u onto the last axis e, as a product T_e T_{u+e} of
// two reflections (each fixes the bisector geometry; the product is proper).
Mat rotation_to_last_axis(const Vec& u) {
  const Eigen::Index m = u.size();
  const Vec e = Vec::Unit(m, m - 1);
  const Vec w = u + e;
  if (w.norm() < 1e-14) {  // u = -e: half turn in the (e_1, e_m) plane
    Mat r = Mat::Identity(m, m);
    r(0, 0) = -1.0;
    r(m - 1, m - 1) = -1.0;
    return r;
  }
  return reflect_matrix(e, reflect_matrix(w, Mat::Identity(m, m)));
}

ContourCircleResult circumcircle(const Vec& p1, const Vec& p2, const Vec& p3) {
  const Vec a = p2 - p1, b = p3 - p1;
  const Vec u = a.normalized();
  const Vec w = b - b.dot(u) * u;
  if (w.norm() <= 1e-9 * std::max(1.0, b.norm()))
    throw domain_error(
        "mle_sphere: the equal-likelihood parameter set is a line (antipodal "
        "observations) and has no finite circle representation");
  const Vec v = w.normalized();
  const double ax = a.norm(), bx = b.dot(u), by = b.dot(v);
  const double cx = 0.5 * ax;
  const double cy = (bx * bx + by * by - 2.0 * cx * bx) / (2.0 * by);
  const Vec center = p1 + cx * u + cy * v;
  return {center, std::hypot(cx, cy), u, v};
}

}  // namespace

SphereMleResult mle_sphere(const Mat& data_unit_rows, const MleConfig& cfg) {
  check_data(data_unit_rows);
  const Eigen::Index n = data_unit_rows.rows(), m = data_unit_rows.cols();
  if (m < 2) throw invalid_parameter("mle_sphere: ambient dimension must be >= 2");
  const Eigen::Index d = m - 1;
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(data_unit_rows.row(j).norm() - 1.0) > 1e-10)
      throw domain_error("mle_sphere: rows must be unit vectors");

  // Keep the projection pole e_{d+1} clear of the data: rotate a direction
  // far from every observation onto the pole.
  Vec pole = Vec::Unit(m, m - 1);
  double clearance = 2.0;
  for (Eigen::Index j = 0; j < n; ++j)
    clearance = std::min(clearance, (data_unit_rows.row(j).transpose() - pole).norm());
  Mat Q = Mat::Identity(m, m);
  if (clearance < 1e-3) {
    Vec best = pole;
    double best_gap = -1.0;
    std::vector<Vec> candidates;
    for (Eigen::Index k = 0; k < m; ++k) {
      candidates.push_back(Vec::Unit(m, k));
      candidates.push_back(-Vec::Unit(m, k));
    }
    Vec mean = data_unit_rows.colwise().mean();
    if (mean.norm() > 1e-8) candidates.push_back(Vec(-mean.normalized()));
    for (const Vec& c : candidates) {
      double gap = 2.0;
      for (Eigen::Index j = 0; j < n; ++j)
        gap = std::min(gap, (data_unit_rows.row(j).transpose() - c).norm());
      if (gap > best_gap) {
        best_gap = gap;
        best = c;
      }
    }
    Q = rotation_to_last_axis(best);
  }

  Mat euclid(n, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec y = Q * data_unit_rows.row(j).transpose();
    const ExtendedComplex t = stereographic(ExtendedPoint(y));
    euclid.row(j) = t.mu();
  }

  const MleResult res = mle_numeric(euclid, cfg);

  if (std::holds_alternative<PointMassResult>(res)) {
    const auto& pm = std::get<PointMassResult>(res);
    return Vec(Q.transpose() * inv_stereographic(pm.location));
  }
  if (std::holds_alternative<EstimateResult>(res)) {
    const auto& est = std::get<EstimateResult>(res);
    const Vec phi = Q.transpose() * inv_stereographic_ext(est.theta).coords();
    const SphericalCauchy fitted{Vec(phi)};
    double ll = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) ll += fitted.log_pdf(data_unit_rows.row(j).transpose());
    return SphereEstimateResult{phi, ll, est.diag, est.converged};
  }
  // Transport the contour circle point by point and re-fit the circle.
  const auto& cc = std::get<ContourCircleResult>(res);
  std::array<Vec, 3> img;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * M_PI * k / 3.0;
    const Vec p = cc.center + cc.radius * (std::cos(t) * cc.u + std::sin(t) * cc.v);
    img[k] = Q.transpose() *
             inv_stereographic_ext(ExtendedComplex(p.head(d), p(d))).coords();
  }
  return circumcircle(img[0], img[1], img[2]);
}

}  // namespace mcauchy
