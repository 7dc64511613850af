#include <doctest.h>

#include <cmath>

#include "mcauchy/densities.hpp"
#include "mcauchy/oracle.hpp"
#include "mcauchy/rng.hpp"

using namespace mcauchy;

namespace {
Vec runit(SequentialRng& rng, Eigen::Index ambient) {
  Vec v(ambient);
  for (Eigen::Index i = 0; i < ambient; ++i) v(i) = rng.normal();
  return v.normalized();
}
Vec lift(const Vec& mu, double sigma) {
  Vec v(mu.size() + 1);
  v.head(mu.size()) = mu;
  v(mu.size()) = sigma;
  return v;
}
}  // namespace

TEST_CASE("pdf_euclid values and regimes") {
  const EuclideanCauchy std1(Vec::Zero(1), 1.0);
  CHECK(std1.pdf(Vec::Zero(1)) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
  CHECK(std1.pdf(ExtendedPoint::infinity(1)) == 0.0);

  // value at the center: 2^{d-1} Gamma((d+1)/2) / (pi^{(d+1)/2} sigma^d)
  for (int d = 1; d <= 3; ++d) {
    const double sigma = 0.7;
    const EuclideanCauchy c(Vec::Zero(d), sigma);
    const double expect = std::pow(2.0, d - 1) * std::tgamma((d + 1) / 2.0) /
                          (std::pow(M_PI, (d + 1) / 2.0) * std::pow(sigma, d));
    CHECK(c.pdf(Vec::Zero(d)) == doctest::Approx(expect).epsilon(1e-13));
  }

  CHECK_THROWS_AS(EuclideanCauchy(Vec::Zero(2), 0.0).log_pdf(Vec::Zero(2)), density_undefined);
  CHECK(EuclideanCauchy(ExtendedComplex::infinity(2)).is_point_mass());
}

TEST_CASE("pdf_euclid integrates to one in d = 2") {
  Vec mu(2);
  mu << 0.1, -0.2;
  const EuclideanCauchy c(mu, 1.0);
  CHECK(std::abs(integrate_rd([&](const Vec& x) { return c.pdf(x); }, 2, 1e-8) - 1.0) < 1e-6);
}

TEST_CASE("pdf_sphere values, inversion symmetry, point mass") {
  const SphericalCauchy uni(Vec::Zero(2));
  Vec y(2);
  y << 1, 0;
  CHECK(uni.pdf(y) == doctest::Approx(1.0 / (2 * M_PI)).epsilon(1e-14));
  CHECK(SphericalCauchy::uniform(1).pdf(y) == doctest::Approx(1.0 / (2 * M_PI)).epsilon(1e-14));

  SequentialRng rng(51);
  for (int k = 0; k < 20; ++k) {
    const Vec phi = 0.5 * runit(rng, 3);
    const SphericalCauchy a{Vec(phi)};
    const SphericalCauchy b{Vec(phi / phi.squaredNorm())};
    const Vec p = runit(rng, 3);
    CHECK(a.log_pdf(p) == doctest::Approx(b.log_pdf(p)).epsilon(1e-13));
  }

  Vec bad(2);
  bad << 0.5, 0.5;
  CHECK_THROWS_AS(uni.pdf(bad), domain_error);
  CHECK_THROWS_AS(SphericalCauchy(Vec::Unit(3, 1)).log_pdf(runit(rng, 3)), density_undefined);
}

TEST_CASE("pdf_marginal values and inversion symmetry") {
  const MarginalCauchyBeta flat(0.0, 2.0);
  CHECK(flat.pdf(0.3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(flat.pdf(-0.9) == doctest::Approx(0.5).epsilon(1e-14));

  const MarginalCauchyBeta m(0.5, 1.0);
  auto f = [&](const Vec& t) { return m.pdf(std::sin(t(0))) * std::cos(t(0)); };
  CHECK(std::abs(integrate(f, {QuadratureDomain::interval(-M_PI / 2, M_PI / 2), 64, 1e-10}) -
                 1.0) < 1e-8);

  const MarginalCauchyBeta inv(2.0, 1.0);  // varphi -> 1/varphi
  for (int k = 0; k < 20; ++k) {
    const double y = -0.95 + 0.1 * k;
    CHECK(m.pdf(y) == doctest::Approx(inv.pdf(y)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(m.pdf(1.0), domain_error);
  CHECK_THROWS_AS(MarginalCauchyBeta(1.0, 2.0), invalid_parameter);
}

TEST_CASE("marginal density equals the marginalized sphere density") {
  const double p = 0.45;
  {  // circle: two branches over the first coordinate, arc-length element
    Vec phi(2);
    phi << p, 0.0;
    const SphericalCauchy sph(phi);
    const MarginalCauchyBeta marg(p, 1.0);
    for (double t : {-0.9, -0.4, 0.0, 0.3, 0.8}) {
      const double s = std::sqrt(1.0 - t * t);
      Vec up(2), dn(2);
      up << t, s;
      dn << t, -s;
      const double lhs = (sph.pdf(up) + sph.pdf(dn)) / s;
      CHECK(lhs == doctest::Approx(marg.pdf(t)).epsilon(1e-10));
    }
  }
  {  // S^2: integrate the longitude out (the slice element is flat in t)
    Vec phi(3);
    phi << p, 0.0, 0.0;
    const SphericalCauchy sph(phi);
    const MarginalCauchyBeta marg(p, 2.0);
    for (double t : {-0.7, -0.2, 0.4, 0.9}) {
      const double r = std::sqrt(1.0 - t * t);
      auto slice = [&](const Vec& a) {
        Vec y(3);
        y << t, r * std::cos(a(0)), r * std::sin(a(0));
        return sph.pdf(y);
      };
      const double lhs =
          integrate(slice, {QuadratureDomain::interval(-M_PI, M_PI), 32, 1e-10});
      CHECK(lhs == doctest::Approx(marg.pdf(t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("marginal_pushforward_param") {
  CHECK(marginal_pushforward_param(0.37, 0.0) == 0.37);
  CHECK(marginal_pushforward_param(0.5, -0.8) == doctest::Approx(0.0).epsilon(1e-14));

  // change of variables under the real Moebius map
  SequentialRng rng(52);
  for (int k = 0; k < 10; ++k) {
    const double p = rng.uniform(-0.8, 0.8);
    const double b = rng.uniform(-0.8, 0.8);
    const double nu = 1 + k % 4;
    const MarginalCauchyBeta before(p, nu), after(marginal_pushforward_param(p, b), nu);
    for (int j = 0; j < 10; ++j) {
      const double y = rng.uniform(-0.99, 0.99);
      const double lhs = after.pdf(real_moebius(y, b)) * real_moebius_deriv(y, b);
      CHECK(lhs == doctest::Approx(before.pdf(y)).epsilon(1e-10));
    }
  }
}

TEST_CASE("kent with L = I is uniform") {
  const KentTypeCauchy k(Vec::Zero(2), Mat::Identity(2, 2));
  SequentialRng rng(53);
  const double uniform = std::tgamma(1.5) / (2.0 * std::pow(M_PI, 1.5));
  for (int i = 0; i < 20; ++i)
    CHECK(k.pdf(runit(rng, 3)) == doctest::Approx(uniform).epsilon(1e-12));
}

TEST_CASE("kent chart route equals quadratic-form route") {
  SequentialRng rng(54);
  for (int k = 0; k < 10; ++k) {
    Vec mu(2);
    mu << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
    Mat L(2, 2);
    L << rng.uniform(0.2, 1.2), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
        rng.uniform(0.2, 1.2);
    if (std::abs(L.determinant()) < 0.05) continue;
    const KentTypeCauchy dist(mu, L);

    // quadratic-form route vs traceless-split route vs plane-chart route
    for (int j = 0; j < 30; ++j) {
      const Vec y = runit(rng, 3);
      const double q = dist.log_pdf(y);
      const double c = dist.log_pdf_chart(y);
      Vec w = lift(Vec(y.head(2)), y(2) + 1.0).normalized();
      const double alt = dist.log_const() - 2.0 * std::log(dist.Qbar() + w.dot(dist.T_mat() * w));
      CHECK(q == doctest::Approx(c).epsilon(1e-12));
      CHECK(q == doctest::Approx(alt).epsilon(1e-12));
    }
    // structural invariants of the derived pieces
    CHECK(std::abs(dist.T_mat().trace()) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(dist.A_mat());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("kent reduces to the spherical Cauchy for L = sigma I") {
  SequentialRng rng(55);
  Vec mu(2);
  mu << 0.2, -0.1;
  const double sigma = 0.5;
  const KentTypeCauchy kent(mu, Mat(sigma * Mat::Identity(2, 2)));
  const ExtendedComplex phi_c = stereographic(ExtendedPoint(lift(mu, sigma)));
  const SphericalCauchy reduced{lift(phi_c.mu(), phi_c.sigma())};
  for (int j = 0; j < 50; ++j) {
    const Vec y = runit(rng, 3);
    CHECK(kent.log_pdf(y) == doctest::Approx(reduced.log_pdf(y)).epsilon(1e-12));
  }
}

TEST_CASE("kent surface integral is one") {
  Vec mu(2);
  mu << 0.3, 0.1;
  Mat L(2, 2);
  L << 0.3, 0.0, 0.0, 0.5;
  const KentTypeCauchy dist(mu, L);
  const double v =
      integrate([&](const Vec& y) { return dist.pdf(y); }, {QuadratureDomain::sphere(), 64, 1e-8});
  CHECK(std::abs(v - 1.0) < 1e-5);
}

TEST_CASE("kent mode and antimode") {
  {  // scalar L: constant density, degenerate
    const KentTypeCauchy k(Vec::Zero(2), Mat(0.4 * Mat::Identity(2, 2)));
    CHECK(kent_mode_antimode(k).degenerate);
  }
  {
    Mat L(2, 2);
    L << 0.3, 0.0, 0.0, 0.5;
    Vec mu(2);
    mu << 0.2, -0.1;
    const KentTypeCauchy k(mu, L);
    const KentMode km = kent_mode_antimode(k);
    CHECK(std::abs(km.mode.norm() - 1.0) < 1e-12);
    CHECK(std::abs(km.antimode.norm() - 1.0) < 1e-12);
    CHECK(km.fmax > km.fmin);
    CHECK(k.pdf(km.mode) == doctest::Approx(km.fmax).epsilon(1e-10));
    // fmax dominates random probes
    SequentialRng rng(56);
    for (int j = 0; j < 500; ++j) CHECK(k.pdf(runit(rng, 3)) <= km.fmax * (1 + 1e-12));
  }
  {  // contracting diagonal L with mu = 0: mode at the upper pole
    Mat L(2, 2);
    L << 0.3, 0.0, 0.0, 0.5;
    const KentTypeCauchy k(Vec::Zero(2), L);
    const KentMode km = kent_mode_antimode(k);
    CHECK((km.mode - Vec::Unit(3, 2)).norm() < 1e-10);
  }
}

TEST_CASE("kent d2 closed forms") {
  const double a11 = 1.0 / 0.09, a22 = 4.0;  // L = diag(0.3, 0.5)
  // at xi1 = 0 the density equals the constant
  const double c2 = kent_d2_const(a11, 0.0, a22);
  for (double xi2 : {-3.0, -1.0, 0.0, 2.0})
    CHECK(kent_polar_pdf(a11, 0.0, a22, 0.0, xi2) == doctest::Approx(c2).epsilon(1e-13));

  // the two polar expressions agree
  SequentialRng rng(57);
  for (int k = 0; k < 50; ++k) {
    const double x1 = rng.uniform(0.0, M_PI), x2 = rng.uniform(-M_PI, M_PI - 1e-9);
    const double a12 = 0.7;
    CHECK(kent_polar_pdf(a11, a12, a22, x1, x2) ==
          doctest::Approx(kent_polar_pdf_alt(a11, a12, a22, x1, x2)).epsilon(1e-12));
  }

  // polar form equals the ambient density in spherical coordinates
  Mat L(2, 2);
  L << 0.3, 0.0, 0.0, 0.5;
  const KentTypeCauchy dist(Vec::Zero(2), L);
  for (int k = 0; k < 50; ++k) {
    const double x1 = rng.uniform(0.01, M_PI - 0.01), x2 = rng.uniform(-M_PI, M_PI - 1e-9);
    Vec y(3);
    y << std::sin(x1) * std::cos(x2), std::sin(x1) * std::sin(x2), std::cos(x1);
    CHECK(kent_polar_pdf(a11, 0.0, a22, x1, x2) ==
          doctest::Approx(dist.pdf(y)).epsilon(1e-11));
  }

  // Lambert form integrates to one over the disk
  const double disk = integrate(
      [&](const Vec& v) {
        return v.squaredNorm() <= 4.0 ? kent_lambert_pdf(a11, 0.0, a22, v(0), v(1)) : 0.0;
      },
      {QuadratureDomain::lambert_disk(), 64, 1e-9});
  CHECK(std::abs(disk - 1.0) < 1e-6);

  // Lambert and polar forms are the same density through the area-preserving map
  for (int k = 0; k < 30; ++k) {
    const double x1 = rng.uniform(0.0, M_PI - 0.02), x2 = rng.uniform(-M_PI, M_PI - 1e-9);
    const double rho = 2.0 * std::sin(x1 / 2.0);
    CHECK(kent_lambert_pdf(a11, 0.0, a22, rho * std::cos(x2), rho * std::sin(x2)) ==
          doctest::Approx(kent_polar_pdf(a11, 0.0, a22, x1, x2)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(kent_polar_pdf(a11, 0.0, a22, -0.1, 0.0), domain_error);
  CHECK_THROWS_AS(kent_lambert_pdf(a11, 0.0, a22, 2.0, 1.0), domain_error);
}

TEST_CASE("kent d2 density decreases along great circles through the pole") {
  // For the plotted parameter sets every radial direction satisfies
  // c' S c > 1, so the density falls monotonically as xi1 runs 0 -> pi.
  for (const auto& [a11, a22] : {std::pair{4.0, 4.0}, {1.0 / 0.09, 4.0}, {100.0, 4.0}}) {
    for (double xi2 : {-2.5, -1.0, 0.0, 0.7, 2.9}) {
      double prev = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 200; ++i) {
        const double xi1 = M_PI * i / 200.0;
        const double f = kent_polar_pdf(a11, 0.0, a22, xi1, xi2);
        CHECK(f <= prev * (1 + 1e-14));
        prev = f;
      }
    }
  }
}

TEST_CASE("parameter pushforwards") {
  SequentialRng rng(58);
  {  // identity transforms leave parameters alone
    const EuclideanCauchy c(Vec::Zero(2), 1.0);
    const EuclideanCauchy c2 = pushforward_euclid(MoebiusChain(MoebiusMap::identity(2)), c);
    CHECK((c2.theta().mu() - c.theta().mu()).norm() == 0.0);
    CHECK(c2.theta().sigma() == 1.0);
  }
  {  // uniform pushed through (R, psi) becomes C*(R psi)
    const Rotation R = random_rotation(3, 17);
    const Vec psi = 0.4 * runit(rng, 3);
    const SphereMoebius s(R, psi);
    const SphericalCauchy out = pushforward_sphere(s, SphericalCauchy::uniform(2));
    CHECK((out.phi() - R.matrix() * psi).norm() < 1e-14);
  }
  {  // uniform transports to the standard Cauchy
    const EuclideanCauchy c = transport_to_euclid(SphericalCauchy::uniform(2));
    CHECK(c.theta().mu().isZero(0.0));
    CHECK(c.theta().sigma() == 1.0);
  }
  {  // point mass on the sphere transports to a point mass
    const SphericalCauchy pm = transport_to_sphere(EuclideanCauchy(Vec::Zero(2), 0.0));
    CHECK(pm.is_point_mass());
  }
}
