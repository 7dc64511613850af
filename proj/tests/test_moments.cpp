#include <doctest.h>

#include <cmath>

#include "mcauchy/densities.hpp"
#include "mcauchy/moments.hpp"
#include "mcauchy/oracle.hpp"
#include "mcauchy/rng.hpp"

using namespace mcauchy;

TEST_CASE("hyp2f1 basic identities") {
  CHECK(hyp2f1(0.7, -1.3, 2.2, 0.0) == 1.0);

  // F(1,1;2;z) = -log(1-z)/z
  const double z = -0.5;
  CHECK(hyp2f1(1, 1, 2, z) == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-13));

  // F(1/2,1;3/2;z^2) = atanh(z)/z
  const double z2 = 0.3;
  CHECK(hyp2f1(0.5, 1.0, 1.5, z2 * z2) ==
        doctest::Approx(std::atanh(z2) / z2).epsilon(1e-13));

  // F(a,b;b;z) = (1-z)^{-a} (terminating b plays no role)
  CHECK(hyp2f1(0.5, 1.0, 1.0, -3.0) == doctest::Approx(0.5).epsilon(1e-13));

  // polynomial case: negative integer parameter terminates
  CHECK(hyp2f1(-2.0, 3.0, 1.5, 0.4) ==
        doctest::Approx(1.0 - 2.0 * 3.0 / 1.5 * 0.4 +
                        (-2.0) * (-1.0) * 3.0 * 4.0 / (1.5 * 2.5) * 0.16 / 2.0)
            .epsilon(1e-13));

  CHECK_THROWS_AS(hyp2f1(0.5, 0.7, -2.0, 0.3), invalid_parameter);
  CHECK_THROWS_AS(hyp2f1(0.5, 0.7, 1.0, 1.0), domain_error);
}

TEST_CASE("hyp2f1 series agrees with the integral representation") {
  SequentialRng rng(61);
  for (int k = 0; k < 20; ++k) {
    const double a = rng.uniform(0.2, 2.5);
    const double b = rng.uniform(0.5, 2.0);
    const double c = b + rng.uniform(0.5, 2.0);
    const double z = rng.uniform(-5.0, 0.9);
    CHECK(hyp2f1(a, b, c, z) == doctest::Approx(hyp2f1_integral(a, b, c, z)).epsilon(1e-9));
  }
}

TEST_CASE("marginal_mean closed forms") {
  CHECK(marginal_mean(1, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(marginal_mean(3, 0.5) == doctest::Approx(0.6875).epsilon(1e-14));
  CHECK(marginal_second_moment(1, 0.5) == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(marginal_second_moment(3, 0.5) == doctest::Approx(0.578125).epsilon(1e-14));

  // nu = 2 against quadrature of the density
  const MarginalCauchyBeta m(0.4, 2.0);
  auto m1 = [&](const Vec& t) {
    const double y = std::sin(t(0));
    return y * m.pdf(y) * std::cos(t(0));
  };
  const double quad =
      integrate(m1, {QuadratureDomain::interval(-M_PI / 2, M_PI / 2), 64, 1e-12});
  CHECK(marginal_mean(2, 0.4) == doctest::Approx(quad).epsilon(1e-8));

  // frozen quadrature values at varphi = 0.4 (computed once with the
  // interval rule at 1e-13 and pinned here)
  CHECK(marginal_mean(2, 0.4) == doctest::Approx(0.515854108923108).epsilon(1e-12));
  CHECK(marginal_second_moment(2, 0.4) == doctest::Approx(0.495976915877013).epsilon(1e-12));
  CHECK(marginal_mean(4, 0.4) == doctest::Approx(0.596906267368410).epsilon(1e-12));
  CHECK(marginal_second_moment(4, 0.4) == doctest::Approx(0.462056350736778).epsilon(1e-12));

  CHECK_THROWS_AS(marginal_mean(2, 1.2), domain_error);
  CHECK_THROWS_AS(marginal_mean(0.0, 0.3), domain_error);
}

TEST_CASE("moment symmetry: mu1 odd, mu2 even in varphi") {
  SequentialRng rng(62);
  for (int k = 0; k < 20; ++k) {
    const double nu = rng.uniform(0.6, 5.0);
    const double p = rng.uniform(0.01, 0.9);
    CHECK(marginal_mean(nu, -p) == doctest::Approx(-marginal_mean(nu, p)).epsilon(1e-11));
    CHECK(marginal_second_moment(nu, -p) ==
          doctest::Approx(marginal_second_moment(nu, p)).epsilon(1e-11));
  }
}

TEST_CASE("the two displayed hypergeometric mean forms agree") {
  SequentialRng rng(63);
  for (int k = 0; k < 50; ++k) {
    const double nu = rng.uniform(0.5, 6.0);
    const double p = rng.uniform(0.02, 0.9);
    CHECK_NOTHROW(marginal_mean_2f1(nu, p));  // internal cross-check at 1e-10
  }
}

TEST_CASE("taylor branch matches quadrature near the removable singularity") {
  for (const double nu : {1.0, 2.0, 3.5}) {
    const double p = 9e-5;  // inside the Taylor branch
    const MarginalCauchyBeta m(p, nu);
    auto mom = [&](int k) {
      auto f = [&](const Vec& t) {
        const double y = std::sin(t(0));
        return std::pow(y, k) * m.pdf(y) * std::cos(t(0));
      };
      return integrate(f, {QuadratureDomain::interval(-M_PI / 2, M_PI / 2), 64, 1e-13});
    };
    CHECK(std::abs(marginal_mean(nu, p) - mom(1)) < 1e-11);
    CHECK(std::abs(marginal_second_moment(nu, p) - mom(2)) < 1e-11);
  }
}

TEST_CASE("non-integer nu goes through the hypergeometric route") {
  // spot value against direct quadrature for nu = 2.5
  const double nu = 2.5, p = 0.35;
  const MarginalCauchyBeta m(p, nu);
  auto m1 = [&](const Vec& t) {
    const double y = std::sin(t(0));
    return y * m.pdf(y) * std::cos(t(0));
  };
  const double quad =
      integrate(m1, {QuadratureDomain::interval(-M_PI / 2, M_PI / 2), 64, 1e-12});
  CHECK(marginal_mean(nu, p) == doctest::Approx(quad).epsilon(1e-9));
}

TEST_CASE("sphere_mean_scatter") {
  {  // uniform case
    const SphereMoments m = sphere_mean_scatter(Vec::Zero(3), 2);
    CHECK(m.mean.isZero(0.0));
    CHECK((m.scatter - Mat::Identity(3, 3) / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  }
  SequentialRng rng(64);
  for (int k = 0; k < 10; ++k) {
    const int d = 1 + k % 3;
    Vec phi(d + 1);
    for (int i = 0; i <= d; ++i) phi(i) = rng.normal();
    phi *= rng.uniform(0.1, 0.9) / phi.norm();
    const SphereMoments m = sphere_mean_scatter(phi, d);
    CHECK(m.scatter.trace() == doctest::Approx(1.0).epsilon(1e-12));
    // inverted parameter gives the same moments
    const SphereMoments mi = sphere_mean_scatter(Vec(phi / phi.squaredNorm()), d);
    CHECK((m.mean - mi.mean).norm() < 1e-12);
    CHECK((m.scatter - mi.scatter).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(sphere_mean_scatter(Vec::Unit(3, 0), 2), domain_error);
}

TEST_CASE("mom_estimate") {
  {  // zero mean maps to phi = 0
    Mat sample(2, 2);
    sample << 1, 0, -1, 0;
    const MomResult r = mom_estimate(sample, 1);
    CHECK(r.phi.isZero(0.0));
    CHECK(!r.clamped);
  }
  {  // d = 1: mu_1 is the identity, so |mean| = 0.3 inverts to 0.3
    const double c = 0.3, s = std::sqrt(1.0 - c * c);
    Mat sample(2, 2);
    sample << c, s, c, -s;
    const MomResult r = mom_estimate(sample, 1);
    CHECK(r.phi(0) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(std::abs(r.phi(1)) < 1e-12);
  }
  {  // clamping at the boundary
    Mat sample(1, 2);
    sample << 1, 0;
    const MomResult r = mom_estimate(sample, 1);
    CHECK(r.clamped);
  }
}
