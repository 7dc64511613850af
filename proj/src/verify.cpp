#include "mcauchy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "mcauchy/estimation.hpp"
#include "mcauchy/moments.hpp"
#include "mcauchy/rng.hpp"
#include "mcauchy/sampling.hpp"

namespace mcauchy {
namespace checks {

namespace {

CheckResult row(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value <= tol};
}

Vec random_vec(SequentialRng& rng, Eigen::Index d, double lo, double hi) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

Vec random_unit(SequentialRng& rng, Eigen::Index ambient) {
  Vec v(ambient);
  for (Eigen::Index i = 0; i < ambient; ++i) v(i) = rng.normal();
  return v.normalized();
}

Mat random_orthogonal(SequentialRng& rng, Eigen::Index d) {
  Mat A = random_rotation(d, rng.next_u64()).matrix();
  if (d > 1 && rng.uniform() < 0.5) A.col(0) = -A.col(0);
  return A;
}

MoebiusMap random_map(SequentialRng& rng, Eigen::Index d) {
  const double gamma = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
  const int eps = rng.uniform() < 0.5 ? 0 : 2;
  return MoebiusMap(random_orthogonal(rng, d), gamma, random_vec(rng, d, -1.0, 1.0),
                    random_vec(rng, d, -1.0, 1.0), eps);
}

SphereMoebius random_sphere_map(SequentialRng& rng, Eigen::Index ambient, bool allow_outside) {
  const Rotation R = random_rotation(ambient, rng.next_u64());
  double norm = rng.uniform(0.1, 0.85);
  if (allow_outside && rng.uniform() < 0.3) norm = rng.uniform(1.2, 2.5);
  return SphereMoebius(R, Vec(norm * random_unit(rng, ambient)));
}

Vec as_vector(const ExtendedComplex& t) {
  Vec v(t.dim() + 1);
  v.head(t.dim()) = t.mu();
  v(t.dim()) = t.sigma();
  return v;
}

// Fig.-1 style parameter sets (a11, a12, a22) for d = 2 and the matching L.
struct KentParams {
  double a11, a12, a22;
  Mat L;
};

KentParams kent_params(double l1, double l2) {
  Mat L = Mat::Zero(2, 2);
  L(0, 0) = l1;
  L(1, 1) = l2;
  return {1.0 / (l1 * l1), 0.0, 1.0 / (l2 * l2), L};
}

// d x d Jacobian determinant of a map R^d -> S^d in the image tangent frame.
double jacobian_det_into_sphere(const std::function<Vec(const Vec&)>& map, const Vec& x,
                                double h) {
  const Mat Timg = tangent_basis(map(x).normalized());
  auto chart = [&](const Vec& u) -> Vec { return Timg.transpose() * map(u); };
  return jacobian_det_fd(chart, x, h);
}

}  // namespace

// Criterion 1: every continuous density integrates to one.
std::vector<CheckResult> normalization(const OracleConfig& cfg) {
  std::vector<CheckResult> out;
  const double tol = 1e-6;

  {
    const EuclideanCauchy c1(Vec::Constant(1, 0.3), 0.8);
    const double v = integrate_rd([&](const Vec& x) { return c1.pdf(x); }, 1, cfg.quad_tol);
    out.push_back(row("normalization/euclid_d1", std::abs(v - 1.0), tol));
  }
  {
    Vec mu(2);
    mu << 0.3, -0.4;
    const EuclideanCauchy c2(mu, 0.7);
    const double v = integrate_rd([&](const Vec& x) { return c2.pdf(x); }, 2, cfg.quad_tol);
    out.push_back(row("normalization/euclid_d2", std::abs(v - 1.0), tol));
  }
  {
    Vec phi(2);
    phi << 0.5, 0.0;
    const SphericalCauchy s1(phi);
    QuadratureSpec spec{QuadratureDomain::circle(), 64, cfg.quad_tol};
    const double v = integrate([&](const Vec& y) { return s1.pdf(y); }, spec);
    out.push_back(row("normalization/sphere_d1", std::abs(v - 1.0), tol));
  }
  {
    Vec phi(3);
    phi << 0.0, 0.0, 0.6;
    const SphericalCauchy s2(phi);
    QuadratureSpec spec{QuadratureDomain::sphere(), 64, cfg.quad_tol};
    const double v = integrate([&](const Vec& y) { return s2.pdf(y); }, spec);
    out.push_back(row("normalization/sphere_d2", std::abs(v - 1.0), tol));
  }
  {
    double worst = 0.0;
    for (const double nu : {1.0, 2.0, 3.0, 4.0})
      for (const double p : {0.0, 0.3, -0.3, 0.7, -0.7}) {
        const MarginalCauchyBeta m(p, nu);
        // y = sin(t) removes the endpoint singularities for nu < 2.
        auto f = [&](const Vec& t) { return m.pdf(std::sin(t(0))) * std::cos(t(0)); };
        QuadratureSpec spec{QuadratureDomain::interval(-M_PI / 2, M_PI / 2), 64, cfg.quad_tol};
        worst = std::max(worst, std::abs(integrate(f, spec) - 1.0));
      }
    out.push_back(row("normalization/marginal", worst, 1e-6));
  }
  {
    double worst = 0.0;
    for (const auto& [l1, l2] : {std::pair{0.5, 0.5}, {0.3, 0.5}, {0.1, 0.5}}) {
      const KentTypeCauchy k(Vec::Zero(2), kent_params(l1, l2).L);
      QuadratureSpec spec{QuadratureDomain::sphere(), 128, 1e-8};
      const double v = integrate([&](const Vec& y) { return k.pdf(y); }, spec);
      worst = std::max(worst, std::abs(v - 1.0));
    }
    out.push_back(row("normalization/kent_d2", worst, 1e-5));
  }
  return out;
}

// Criterion 2: change of variables for the Euclidean family under random
// Moebius maps, with a finite-difference Jacobian.
std::vector<CheckResult> euclid_closure(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 2);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const Eigen::Index d = 1 + c % 3;
    const MoebiusMap m = random_map(rng, d);
    const ExtendedComplex theta(random_vec(rng, d, -1.0, 1.0), rng.uniform(0.3, 1.5));
    Vec x = random_vec(rng, d, -2.0, 2.0);
    if (m.epsilon == 2)
      while ((x + m.a).norm() < 0.05) x = random_vec(rng, d, -2.0, 2.0);

    auto map = [&](const Vec& p) { return moebius_apply(m, ExtendedPoint(p)).coords(); };
    const double jac = jacobian_det_fd(map, x, cfg.fd_step,
                                       m.epsilon == 2 ? (x + m.a).norm() : 1e300);
    const EuclideanCauchy before(theta);
    const EuclideanCauchy after(moebius_apply_param(m, theta));
    const double lhs = after.log_pdf(map(x)) + std::log(jac);
    const double rhs = before.log_pdf(x);
    worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
  }
  return {row("closure/euclid_change_of_var", worst, 1e-4)};
}

// Criterion 3: the same identity on the sphere with tangent-frame Jacobians.
std::vector<CheckResult> sphere_closure(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 3);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const Eigen::Index d = 1 + c % 2;
    const SphereMoebius s = random_sphere_map(rng, d + 1, true);
    const Vec phi0 = rng.uniform(0.1, 0.8) * random_unit(rng, d + 1);
    const Vec y = random_unit(rng, d + 1);

    auto map = [&](const Vec& p) { return sphere_moebius_apply(s, ExtendedPoint(p)).coords(); };
    const double jac = jacobian_det_fd_sphere(map, y, cfg.fd_step);
    const SphericalCauchy before{Vec(phi0)};
    const SphericalCauchy after = pushforward_sphere(s, before);
    const double lhs = after.log_pdf(sphere_moebius_apply_unit(s, y)) + std::log(jac);
    const double rhs = before.log_pdf(y);
    worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
  }
  return {row("closure/sphere_change_of_var", worst, 1e-4)};
}

// Criterion 4: stereographic transport between the two families.
std::vector<CheckResult> stereographic_transport(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 4);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const Eigen::Index d = 1 + c % 3;
    const ExtendedComplex theta(random_vec(rng, d, -1.0, 1.0), rng.uniform(0.3, 1.5));
    const Vec x = random_vec(rng, d, -2.0, 2.0);

    auto map = [&](const Vec& p) { return inv_stereographic(ExtendedPoint(p)); };
    const double jac = jacobian_det_into_sphere(map, x, cfg.fd_step);
    const EuclideanCauchy before(theta);
    const SphericalCauchy after = transport_to_sphere(before);
    const double lhs = after.log_pdf(map(x)) + std::log(jac);
    const double rhs = before.log_pdf(x);
    worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
  }
  return {row("closure/stereographic_transport", worst, 1e-4)};
}

// Criterion 5: composition law and inversion act pointwise correctly.
std::vector<CheckResult> sphere_composition(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 5);
  double worst_comp = 0.0, worst_inv = 0.0;
  for (int c = 0; c < 50; ++c) {
    const Eigen::Index ambient = 2 + c % 3;
    SphereMoebius s1 = random_sphere_map(rng, ambient, false);
    SphereMoebius s2 = random_sphere_map(rng, ambient, false);
    if (c % 5 == 0) {
      // Degenerate branch: phi2~ = -R1 phi1~, i.e. phi2 = -R1 phi1.
      s2 = SphereMoebius(s2.rotation(), Vec(-(s1.rotation().matrix() * s1.phi())));
    }
    const SphereMoebius comp = sphere_moebius_compose(s2, s1);
    const SphereMoebius inv = sphere_moebius_invert(s1);
    for (int k = 0; k < 100; ++k) {
      const Vec y = random_unit(rng, ambient);
      const Vec via_pair = sphere_moebius_apply_unit(s2, sphere_moebius_apply_unit(s1, y));
      worst_comp = std::max(worst_comp, (sphere_moebius_apply_unit(comp, y) - via_pair).norm());
      if (k < 50) {
        const Vec back = sphere_moebius_apply_unit(inv, sphere_moebius_apply_unit(s1, y));
        worst_inv = std::max(worst_inv, (back - y).norm());
      }
    }
  }
  return {row("moebius/composition_law", worst_comp, 1e-9),
          row("moebius/invert_roundtrip", worst_inv, 1e-10)};
}

// Criterion 6: closed-form moments against quadrature, the hypergeometric
// route, and the Gauss recursion.
std::vector<CheckResult> moments_closed_forms(const OracleConfig&) {
  std::vector<CheckResult> out;
  double worst_quad = 0.0;
  for (int nu = 1; nu <= 4; ++nu)
    for (int ip = 1; ip <= 9; ++ip) {
      const double p = 0.1 * ip;
      const MarginalCauchyBeta m(p, nu);
      auto m1 = [&](const Vec& t) {
        const double y = std::sin(t(0));
        return y * m.pdf(y) * std::cos(t(0));
      };
      auto m2 = [&](const Vec& t) {
        const double y = std::sin(t(0));
        return y * y * m.pdf(y) * std::cos(t(0));
      };
      QuadratureSpec spec{QuadratureDomain::interval(-M_PI / 2, M_PI / 2), 64, 1e-10};
      worst_quad = std::max(worst_quad,
                            std::abs(integrate(m1, spec) - marginal_mean(nu, p)));
      worst_quad = std::max(worst_quad,
                            std::abs(integrate(m2, spec) - marginal_second_moment(nu, p)));
    }
  out.push_back(row("moments/closed_vs_quadrature", worst_quad, 1e-8));

  double worst_2f1 = 0.0;
  for (int nu = 1; nu <= 4; ++nu)
    for (int ip = 1; ip <= 9; ++ip) {
      const double p = 0.1 * ip;
      worst_2f1 = std::max(worst_2f1,
                           std::abs(marginal_mean_2f1(nu, p) - marginal_mean(nu, p)));
      worst_2f1 = std::max(worst_2f1, std::abs(marginal_second_moment_2f1(nu, p) -
                                               marginal_second_moment(nu, p)));
    }
  out.push_back(row("moments/2f1_vs_closed", worst_2f1, 1e-9));

  // Contiguous-parameter recursion stepping nu down by 2 reproduces the
  // direct series. With f(nu) = F(1/2,(nu-1)/2;(nu+1)/2;z), eliminating the
  // sqrt(1-z) boundary term between two steps gives the three-term relation
  //   f(nu) = (nu-1)/((nu-2)(nu-3)) { ((nu-4) + (nu-3)/z) f(nu-2)
  //                                  - (nu-3)/z f(nu-4) }.
  double worst_rec = 0.0;
  for (int nu = 5; nu <= 8; ++nu)
    for (const double p : {0.2, 0.5, 0.8}) {
      const double q = 1.0 - p * p;
      const double z = -4.0 * p * p / (q * q);
      const double direct = hyp2f1(0.5, (nu - 1.0) / 2.0, (nu + 1.0) / 2.0, z);
      const double flow = hyp2f1(0.5, (nu - 3.0) / 2.0, (nu - 1.0) / 2.0, z);
      const double fll = hyp2f1(0.5, (nu - 5.0) / 2.0, (nu - 3.0) / 2.0, z);
      const double rec = (nu - 1.0) / ((nu - 2.0) * (nu - 3.0)) *
                         ((nu - 4.0 + (nu - 3.0) / z) * flow - (nu - 3.0) / z * fll);
      worst_rec = std::max(worst_rec, std::abs(rec - direct));
    }
  out.push_back(row("moments/gauss_recursion", worst_rec, 1e-9));
  return out;
}

// Criterion 7: the n = 3 closed form is the maximizer.
std::vector<CheckResult> mle_three_points(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 7);
  double worst = 0.0;
  for (Eigen::Index d = 1; d <= 3; ++d) {
    for (int c = 0; c < 50; ++c) {
      Mat data(3, d);
      for (int j = 0; j < 3; ++j) data.row(j) = random_vec(rng, d, -2.0, 2.0);
      const auto res = mle_closed(data);
      const auto& est = std::get<EstimateResult>(res);

      auto obj = [&](const Vec& p) {
        const ExtendedComplex t(p.head(d), std::exp(p(d)));
        return loglik_euclid(t, data);
      };
      Vec p0(d + 1);
      p0.head(d) = data.colwise().mean();
      p0(d) = 0.0;
      const ArgmaxResult arg = numeric_argmax(obj, p0, cfg.argmax_budget, cfg.argmax_restarts,
                                              cfg.seed + c, 1e-14);
      const double err_mu = (arg.x.head(d) - est.theta.mu()).lpNorm<Eigen::Infinity>();
      const double err_s = std::abs(std::exp(arg.x(d)) - est.theta.sigma());
      worst = std::max(worst, std::max(err_mu, err_s));
    }
  }

  Mat canon(3, 1);
  canon << -1.0, 0.0, 1.0;
  const auto est = std::get<EstimateResult>(mle_closed(canon));
  const double exact = std::max(std::abs(est.theta.mu()(0)),
                                std::abs(est.theta.sigma() - 1.0 / std::sqrt(3.0)));
  return {row("mle/n3_closed_vs_argmax", worst, 1e-5),
          row("mle/n3_canonical_exact", exact, 1e-12)};
}

// Criterion 8: the n = 2 contour is flat and locally maximal.
std::vector<CheckResult> mle_two_points(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 8);
  double worst_flat = 0.0;
  double worst_probe = -std::numeric_limits<double>::infinity();  // must stay strictly below
  for (Eigen::Index d = 1; d <= 2; ++d) {
    for (int c = 0; c < 5; ++c) {
      Mat data(2, d);
      data.row(0) = random_vec(rng, d, -2.0, 2.0);
      do data.row(1) = random_vec(rng, d, -2.0, 2.0);
      while (data.row(0) == data.row(1));
      const auto cc = std::get<ContourCircleResult>(mle_closed(data));

      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int k = 1; k <= 20; ++k) {
        const double t = M_PI * k / 21.0;  // sigma > 0 half of the circle
        const Vec p = cc.center + cc.radius * (std::cos(t) * cc.u + std::sin(t) * cc.v);
        const double ll = loglik_euclid(ExtendedComplex(p.head(d), p(d)), data);
        lo = std::min(lo, ll);
        hi = std::max(hi, ll);
      }
      worst_flat = std::max(worst_flat, hi - lo);

      for (int k = 1; k <= 20; ++k) {
        const double t = M_PI * k / 21.0;
        const double scale = k % 2 == 0 ? 1.15 : 0.85;
        const Vec p = cc.center + scale * cc.radius * (std::cos(t) * cc.u + std::sin(t) * cc.v);
        const double ll = loglik_euclid(ExtendedComplex(p.head(d), p(d)), data);
        worst_probe = std::max(worst_probe, ll - lo);  // negative iff strictly below
      }
    }
  }
  return {row("mle/n2_contour_flat", worst_flat, 1e-9),
          row("mle/n2_off_circle_below", worst_probe <= -1e-6 ? 0.0 : 1.0, 0.5)};
}

// Criterion 9: stationarity diagnostics at numeric optima.
std::vector<CheckResult> stationary_checks(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 9);
  double worst_res = 0.0, worst_hess_sign = -1.0, worst_fd = 0.0;
  int scan_failures = 0;
  int produced = 0;
  int idx = 0;
  while (produced < 20) {
    const Eigen::Index d = 1 + idx % 2;
    const Eigen::Index n = std::vector<int>{5, 10, 50}[idx % 3];
    ++idx;
    const ExtendedComplex truth(random_vec(rng, d, -1.0, 1.0), rng.uniform(0.5, 1.5));
    const Mat data =
        sample_euclid_cauchy(truth, n, RngStream{cfg.seed + 100 + produced, static_cast<std::uint64_t>(9000 + produced)});
    const MleResult res = mle_numeric(data, {1e-8, cfg.argmax_budget, cfg.seed});
    if (!std::holds_alternative<EstimateResult>(res)) continue;
    const auto& est = std::get<EstimateResult>(res);
    ++produced;

    worst_res = std::max({worst_res, est.diag.grad_mu_residual,
                          std::abs(est.diag.grad_sigma_residual)});
    worst_hess_sign = std::max(worst_hess_sign, est.diag.hessian_max_eigenvalue);

    // Analytic Hessian vs central differences of the log-likelihood.
    const Mat H = loglik_hessian(est.theta, data);
    const Vec p0 = as_vector(est.theta);
    auto ll = [&](const Vec& p) { return loglik_euclid(ExtendedComplex(p.head(d), p(d)), data); };
    const double h = 1e-4;
    Mat Hfd(d + 1, d + 1);
    for (Eigen::Index i = 0; i <= d; ++i)
      for (Eigen::Index j = 0; j <= d; ++j) {
        Vec pp = p0, pm = p0, mp = p0, mm = p0;
        pp(i) += h; pp(j) += h;
        pm(i) += h; pm(j) -= h;
        mp(i) -= h; mp(j) += h;
        mm(i) -= h; mm(j) -= h;
        Hfd(i, j) = (ll(pp) - ll(pm) - ll(mp) + ll(mm)) / (4.0 * h * h);
      }
    worst_fd = std::max(worst_fd, (H - Hfd).cwiseAbs().maxCoeff() /
                                      std::max(1.0, H.cwiseAbs().maxCoeff()));

    // The profiled likelihood along a random line has a single local max.
    const Vec dir = random_unit(rng, d);
    std::vector<double> lam(200);
    for (int k = 0; k < 200; ++k) {
      const double t = -3.0 + 6.0 * k / 199.0;
      lam[k] = profile_sigma(Vec(est.theta.mu() + t * dir), data).lambda;
    }
    int maxima = 0;
    for (int k = 1; k < 199; ++k)
      if (lam[k] > lam[k - 1] + 1e-11 && lam[k] > lam[k + 1] + 1e-11) ++maxima;
    if (maxima > 1) ++scan_failures;
  }
  return {row("mle/stationary_residuals", worst_res, 1e-6),
          row("mle/hessian_negative_definite", worst_hess_sign < 0.0 ? 0.0 : 1.0, 0.5),
          row("mle/hessian_analytic_vs_fd", worst_fd, 1e-4),
          row("mle/profile_single_maximum", static_cast<double>(scan_failures), 0.5)};
}

// Criterion 10: equivariance of the MLE under Moebius chains.
std::vector<CheckResult> equivariance(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 10);
  double worst = 0.0;
  int done = 0;
  while (done < 20) {
    const Eigen::Index d = 1 + done % 2;
    const Eigen::Index n = done % 2 == 0 ? 3 : 10;
    const ExtendedComplex truth(random_vec(rng, d, -0.5, 0.5), rng.uniform(0.5, 1.0));
    const Mat data =
        sample_euclid_cauchy(truth, n, RngStream{cfg.seed + 300 + done, static_cast<std::uint64_t>(10000 + done)});

    const MoebiusChain chain =
        chain_compose(MoebiusChain(random_map(rng, d)), MoebiusChain(random_map(rng, d)));
    Mat tdata(n, d);
    bool ok = true;
    for (Eigen::Index j = 0; j < n && ok; ++j) {
      const ExtendedPoint img = chain_apply(chain, ExtendedPoint(Vec(data.row(j))));
      if (img.is_infinite() || img.coords().lpNorm<Eigen::Infinity>() > 1e6 ||
          chain_singularity_distance(chain, data.row(j)) < 1e-3)
        ok = false;
      else
        tdata.row(j) = img.coords();
    }
    if (!ok) continue;

    const MleResult r1 = mle_numeric(data, {1e-10, cfg.argmax_budget, cfg.seed});
    const MleResult r2 = mle_numeric(tdata, {1e-10, cfg.argmax_budget, cfg.seed});
    if (!std::holds_alternative<EstimateResult>(r1) ||
        !std::holds_alternative<EstimateResult>(r2))
      continue;
    ++done;
    const ExtendedComplex pushed =
        chain_apply_param(chain, std::get<EstimateResult>(r1).theta);
    const ExtendedComplex direct = std::get<EstimateResult>(r2).theta;
    worst = std::max(worst, (as_vector(pushed) - as_vector(direct)).lpNorm<Eigen::Infinity>());
  }
  return {row("mle/equivariance", worst, 1e-5)};
}

// Criterion 11: samplers match their distributions.
std::vector<CheckResult> samplers(const OracleConfig& cfg) {
  std::vector<CheckResult> out;
  const Eigen::Index n_ks = 10000;

  {  // wrapped circle case against the numeric CDF in angle
    Vec phi(2);
    phi << 0.5, 0.0;
    const SphericalCauchy dist(phi);
    const Mat ys = sample_sphere_cauchy(phi, n_ks, RngStream{cfg.seed, 11});
    std::vector<double> angles(n_ks);
    for (Eigen::Index i = 0; i < n_ks; ++i) angles[i] = std::atan2(ys(i, 1), ys(i, 0));
    // Cumulative trapezoid grid as the numeric CDF.
    const int g = 1 << 15;
    std::vector<double> cum(g + 1, 0.0);
    auto f = [&](double a) {
      Vec y(2);
      y << std::cos(a), std::sin(a);
      return dist.pdf(y);
    };
    const double h = 2.0 * M_PI / g;
    double prev = f(-M_PI);
    for (int i = 1; i <= g; ++i) {
      const double cur = f(-M_PI + i * h);
      cum[i] = cum[i - 1] + 0.5 * h * (prev + cur);
      prev = cur;
    }
    auto cdf = [&](double a) {
      const double t = (a + M_PI) / h;
      const int i = std::clamp(static_cast<int>(t), 0, g - 1);
      return cum[i] + (t - i) * (cum[i + 1] - cum[i]);
    };
    const double d = ks_statistic(angles, cdf);
    out.push_back(row("samplers/ks_sphere_d1", d, ks_critical_001(n_ks)));
  }
  {  // Euclidean d = 1 against the arctangent CDF
    const Mat xs =
        sample_euclid_cauchy(ExtendedComplex(Vec::Zero(1), 1.0), n_ks, RngStream{cfg.seed, 12});
    std::vector<double> v(xs.data(), xs.data() + n_ks);
    const double d =
        ks_statistic(v, [](double x) { return 0.5 + std::atan(x) / M_PI; });
    out.push_back(row("samplers/ks_euclid_d1", d, ks_critical_001(n_ks)));
  }
  {  // marginal family
    const double p = 0.4;
    const int nu = 3;
    const MarginalCauchyBeta dist(p, nu);
    const Vec s = sample_marginal(p, nu, n_ks, RngStream{cfg.seed, 13});
    std::vector<double> v(s.data(), s.data() + n_ks);
    const int g = 1 << 15;
    std::vector<double> cum(g + 1, 0.0);
    const double h = 2.0 / g;
    double prev = 0.0;  // density vanishes at the endpoints for nu = 3
    for (int i = 1; i <= g; ++i) {
      const double y = -1.0 + i * h;
      const double cur = y >= 1.0 ? 0.0 : dist.pdf(std::min(y, 1.0 - 1e-12));
      cum[i] = cum[i - 1] + 0.5 * h * (prev + cur);
      prev = cur;
    }
    auto cdf = [&](double y) {
      const double t = (y + 1.0) / h;
      const int i = std::clamp(static_cast<int>(t), 0, g - 1);
      return cum[i] + (t - i) * (cum[i + 1] - cum[i]);
    };
    const double d = ks_statistic(v, cdf);
    out.push_back(row("samplers/ks_marginal", d, ks_critical_001(n_ks)));
  }
  {  // moment agreement at n = 1e5 on S^2
    Vec phi(3);
    phi << 0.6, 0.0, 0.0;
    const Eigen::Index n = 100000;
    const Mat ys = sample_sphere_cauchy(phi, n, RngStream{cfg.seed, 14});
    const SphereMoments mom = sphere_mean_scatter(phi, 2);
    const Vec mean = ys.colwise().mean();
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double var = mom.scatter(k, k) - mom.mean(k) * mom.mean(k);
      const double se = std::sqrt(var / n);
      worst = std::max(worst, std::abs(mean(k) - mom.mean(k)) / se);
    }
    out.push_back(row("samplers/mean_within_3se", worst, 3.0));

    const MomResult mm = mom_estimate(ys, 2);
    out.push_back(row("samplers/mom_recovery", (mm.phi - phi).norm(), 0.02));
  }
  return out;
}

// Criterion 12: oval-contour family checks.
std::vector<CheckResult> kent_checks(const OracleConfig& cfg) {
  std::vector<CheckResult> out;
  SequentialRng rng(cfg.seed, 15);
  {  // L = sigma I reduction to the spherical Cauchy
    Vec mu(2);
    mu << 0.2, -0.1;
    const double sigma = 0.6;
    const KentTypeCauchy kent(mu, Mat(sigma * Mat::Identity(2, 2)));
    Vec lift(3);
    lift << mu(0), mu(1), sigma;
    const ExtendedComplex back = stereographic(ExtendedPoint(lift));
    const SphericalCauchy reduced{as_vector(back)};
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const Vec y = random_unit(rng, 3);
      worst = std::max(worst, std::abs(kent.log_pdf(y) - reduced.log_pdf(y)));
    }
    out.push_back(row("kent/reduction_to_sphere_cauchy", worst, 1e-9));
  }
  {  // eigen mode against a grid argmax
    Vec mu(2);
    mu << 0.2, -0.1;
    Mat L = Mat::Zero(2, 2);
    L(0, 0) = 0.3;
    L(1, 1) = 0.5;
    const KentTypeCauchy kent(mu, L);
    const KentMode km = kent_mode_antimode(kent);
    const int n1 = 100, n2 = 200;
    double best = -1e300;
    Vec arg = Vec::Zero(3);
    for (int i = 0; i < n1; ++i) {
      const double xi1 = M_PI * (i + 0.5) / n1;
      for (int j = 0; j < n2; ++j) {
        const double xi2 = -M_PI + 2.0 * M_PI * j / n2;
        Vec y(3);
        y << std::sin(xi1) * std::cos(xi2), std::sin(xi1) * std::sin(xi2), std::cos(xi1);
        const double v = kent.log_pdf(y);
        if (v > best) {
          best = v;
          arg = y;
        }
      }
    }
    const double grid_res = M_PI / n1;
    const double angle = std::acos(std::clamp(arg.dot(km.mode), -1.0, 1.0));
    out.push_back(row("kent/mode_vs_grid_argmax", angle, 1.5 * grid_res));

    double probe_worst = 0.0;
    for (int k = 0; k < 1000; ++k)
      probe_worst = std::max(probe_worst, kent.pdf(random_unit(rng, 3)) - km.fmax);
    out.push_back(row("kent/fmax_dominates", std::max(0.0, probe_worst), 1e-12));
  }
  {  // equal eigenvalues: Lambert level sets are circles
    const double a = 1.0 / (0.5 * 0.5);
    const double level = kent_lambert_pdf(a, 0.0, a, 1.0, 0.0);
    std::vector<double> radii;
    for (int k = 0; k < 64; ++k) {
      const double ang = 2.0 * M_PI * k / 64.0;
      // f decreases in radius for a > 1; bisect f(rho) = level along the ray.
      double lo = 0.0, hi = 2.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v =
            kent_lambert_pdf(a, 0.0, a, mid * std::cos(ang), mid * std::sin(ang));
        (v > level ? lo : hi) = mid;
      }
      radii.push_back(0.5 * (lo + hi));
    }
    double mean = 0.0;
    for (double r : radii) mean += r;
    mean /= radii.size();
    double var = 0.0;
    for (double r : radii) var += (r - mean) * (r - mean);
    var /= radii.size();
    out.push_back(row("kent/circular_level_sets", var, 1e-6));
  }
  return out;
}

// Criterion 13: marginal family closure under the real Moebius map.
std::vector<CheckResult> marginal_closure(const OracleConfig& cfg) {
  SequentialRng rng(cfg.seed, 16);
  double worst = 0.0;
  for (int c = 0; c < 20; ++c) {
    const double p = rng.uniform(-0.9, 0.9);
    const double b = rng.uniform(-0.9, 0.9);
    const double nu = 1 + c % 4;
    const double pushed = marginal_pushforward_param(p, b);
    const MarginalCauchyBeta before(p, nu), after(pushed, nu);
    for (int k = 0; k < 20; ++k) {
      const double y = rng.uniform(-0.999, 0.999);
      const double lhs = after.pdf(real_moebius(y, b)) * real_moebius_deriv(y, b);
      worst = std::max(worst, std::abs(lhs - before.pdf(y)));
    }
  }
  return {row("marginal/real_moebius_closure", worst, 1e-8)};
}

}  // namespace checks

std::vector<CheckResult> run_acceptance(const OracleConfig& cfg) {
  std::vector<CheckResult> all;
  auto add = [&](std::vector<CheckResult> rows) {
    all.insert(all.end(), rows.begin(), rows.end());
  };
  add(checks::normalization(cfg));
  add(checks::euclid_closure(cfg));
  add(checks::sphere_closure(cfg));
  add(checks::stereographic_transport(cfg));
  add(checks::sphere_composition(cfg));
  add(checks::moments_closed_forms(cfg));
  add(checks::mle_three_points(cfg));
  add(checks::mle_two_points(cfg));
  add(checks::stationary_checks(cfg));
  add(checks::equivariance(cfg));
  add(checks::samplers(cfg));
  add(checks::kent_checks(cfg));
  add(checks::marginal_closure(cfg));
  return all;
}

}  // namespace mcauchy
