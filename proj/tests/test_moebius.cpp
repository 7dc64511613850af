#include <doctest.h>

#include <complex>

#include "mcauchy/moebius.hpp"
#include "mcauchy/oracle.hpp"
#include "mcauchy/rng.hpp"

using namespace mcauchy;

namespace {

Vec rvec(SequentialRng& rng, Eigen::Index d, double lo, double hi) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

Vec runit(SequentialRng& rng, Eigen::Index ambient) {
  Vec v(ambient);
  for (Eigen::Index i = 0; i < ambient; ++i) v(i) = rng.normal();
  return v.normalized();
}

MoebiusMap rmap(SequentialRng& rng, Eigen::Index d) {
  Mat A = random_rotation(d, rng.next_u64()).matrix();
  if (d > 1 && rng.uniform() < 0.5) A.col(0) = -A.col(0);
  const double gamma = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
  return MoebiusMap(A, gamma, rvec(rng, d, -1, 1), rvec(rng, d, -1, 1),
                    rng.uniform() < 0.5 ? 0 : 2);
}

SphereMoebius rsphere(SequentialRng& rng, Eigen::Index ambient, double lo = 0.1,
                      double hi = 0.85) {
  return SphereMoebius(random_rotation(ambient, rng.next_u64()),
                       Vec(rng.uniform(lo, hi) * runit(rng, ambient)));
}

}  // namespace

TEST_CASE("moebius_apply identity, inversion, conventions") {
  Vec x(2);
  x << 1, 2;
  CHECK((moebius_apply(MoebiusMap::identity(2), ExtendedPoint(x)).coords() - x).norm() == 0.0);

  Vec y(2);
  y << 3, 4;
  const Vec img = moebius_apply(MoebiusMap::inversion(2), ExtendedPoint(y)).coords();
  CHECK(img(0) == doctest::Approx(3.0 / 25).epsilon(1e-15));
  CHECK(img(1) == doctest::Approx(4.0 / 25).epsilon(1e-15));

  // x = a with epsilon = 2 maps to infinity
  const MoebiusMap m(Mat::Identity(2, 2), 1.0, Vec(-y), Vec::Zero(2), 2);
  CHECK(moebius_apply(m, ExtendedPoint(y)).is_infinite());

  // infinity conventions
  SequentialRng rng(21);
  const MoebiusMap aff = MoebiusMap::shift(rvec(rng, 2, -1, 1));
  CHECK(moebius_apply(aff, ExtendedPoint::infinity(2)).is_infinite());
  const MoebiusMap inv2(random_rotation(2, 5).matrix(), 1.5, rvec(rng, 2, -1, 1),
                        rvec(rng, 2, -1, 1), 2);
  const Vec at_inf = moebius_apply(inv2, ExtendedPoint::infinity(2)).coords();
  CHECK((at_inf - inv2.A * inv2.b).norm() == 0.0);  // continuity limit A*b
}

TEST_CASE("moebius_apply_param examples") {
  const Vec e1 = Vec::Unit(2, 0);
  const ExtendedComplex t0(e1, 1.0);
  const ExtendedComplex id = moebius_apply_param(MoebiusMap::identity(2), t0);
  CHECK((id.mu() - e1).norm() == 0.0);
  CHECK(id.sigma() == 1.0);

  const ExtendedComplex tinv =
      moebius_apply_param(MoebiusMap::inversion(2), ExtendedComplex(Vec::Zero(2), 2.0));
  CHECK(tinv.mu().isZero(0.0));
  CHECK(tinv.sigma() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("moebius_apply_param with sigma = 0 reduces to moebius_apply") {
  SequentialRng rng(22);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index d = 1 + k % 3;
    const MoebiusMap m = rmap(rng, d);
    Vec x = rvec(rng, d, -2, 2);
    if (m.epsilon == 2 && (x + m.a).norm() < 1e-6) x(0) += 0.5;
    const ExtendedComplex out = moebius_apply_param(m, ExtendedComplex(x, 0.0));
    const Vec ref = moebius_apply(m, ExtendedPoint(x)).coords();
    CHECK((out.mu() - ref).norm() < 1e-12 * (1.0 + ref.norm()));
    CHECK(out.sigma() == 0.0);
  }
}

TEST_CASE("chains compose by concatenation") {
  SequentialRng rng(23);
  const Eigen::Index d = 2;
  const MoebiusChain id{MoebiusMap::identity(d)};
  Vec x(2);
  x << 0.3, -0.8;
  CHECK((chain_apply(chain_compose(id, id), ExtendedPoint(x)).coords() - x).norm() == 0.0);

  const MoebiusChain invinv =
      chain_compose(MoebiusChain(MoebiusMap::inversion(d)), MoebiusChain(MoebiusMap::inversion(d)));
  for (int k = 0; k < 20; ++k) {
    const Vec p = rvec(rng, d, -2, 2);
    CHECK((chain_apply(invinv, ExtendedPoint(p)).coords() - p).norm() < 1e-13 * (1 + p.norm()));
  }

  for (int k = 0; k < 20; ++k) {
    const MoebiusChain c1(rmap(rng, d)), c2(rmap(rng, d));
    const MoebiusChain both = chain_compose(c2, c1);
    const Vec p = rvec(rng, d, -2, 2);
    const ExtendedPoint seq = chain_apply(c2, chain_apply(c1, ExtendedPoint(p)));
    const ExtendedPoint one = chain_apply(both, ExtendedPoint(p));
    if (seq.is_infinite())
      CHECK(one.is_infinite());
    else
      CHECK((one.coords() - seq.coords()).norm() < 1e-10 * (1 + seq.coords().norm()));
  }
}

TEST_CASE("moebius maps are conformal: J'J is a positive multiple of I") {
  SequentialRng rng(24);
  for (int k = 0; k < 15; ++k) {
    const Eigen::Index d = 2 + k % 2;
    const MoebiusMap m = rmap(rng, d);
    Vec x = rvec(rng, d, -2, 2);
    while (m.epsilon == 2 && (x + m.a).norm() < 0.2) x = rvec(rng, d, -2, 2);
    const Eigen::Index dd = d;
    Mat J(dd, dd);
    const double h = 1e-6;
    for (Eigen::Index j = 0; j < dd; ++j) {
      Vec xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      J.col(j) = (moebius_apply(m, ExtendedPoint(xp)).coords() -
                  moebius_apply(m, ExtendedPoint(xm)).coords()) /
                 (2 * h);
    }
    const Mat JtJ = J.transpose() * J;
    const double c = JtJ.trace() / dd;
    CHECK(c > 0.0);
    CHECK((JtJ - c * Mat::Identity(dd, dd)).cwiseAbs().maxCoeff() < 1e-5 * c);
  }
}

TEST_CASE("sphere_moebius_apply special points and sphere preservation") {
  SequentialRng rng(25);
  {  // identity when phi = 0
    const SphereMoebius id = SphereMoebius::identity(3);
    const Vec y = runit(rng, 3);
    CHECK((sphere_moebius_apply_unit(id, y) - y).norm() == 0.0);
  }
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index ambient = 2 + k % 3;
    const SphereMoebius s = rsphere(rng, ambient);
    // 0 -> R phi
    const Vec at0 = sphere_moebius_apply(s, ExtendedPoint(Vec::Zero(ambient))).coords();
    CHECK((at0 - s.rotation().matrix() * s.phi()).norm() < 1e-14);
    // inf -> R phi/|phi|^2
    const Vec atinf = sphere_moebius_apply(s, ExtendedPoint::infinity(ambient)).coords();
    CHECK((atinf - s.rotation().matrix() * s.phi() / s.phi().squaredNorm()).norm() < 1e-13);
    // unit in, unit out
    const Vec y = runit(rng, ambient);
    CHECK(std::abs(sphere_moebius_apply_unit(s, y).norm() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(SphereMoebius(Rotation::identity(3), Vec::Unit(3, 0)), invalid_parameter);

  for (int k = 0; k < 40; ++k) {  // |phi| < 1 preserves the open unit ball
    const SphereMoebius s = rsphere(rng, 3, 0.1, 0.85);
    const Vec inside = rng.uniform(0.0, 0.99) * runit(rng, 3);
    const ExtendedPoint img = sphere_moebius_apply(s, ExtendedPoint(inside));
    CHECK(img.coords().norm() < 1.0);
  }

  {  // exact singular point maps to infinity (phi chosen exactly representable)
    const SphereMoebius s(Rotation::identity(3), Vec(0.5 * Vec::Unit(3, 0)));
    const Vec sing = -2.0 * Vec::Unit(3, 0);  // -phi/|phi|^2
    CHECK(sphere_moebius_apply(s, ExtendedPoint(sing)).is_infinite());
    // just off the singular point the image is finite and huge
    Vec near = sing;
    near(1) += 1e-9;
    const ExtendedPoint img = sphere_moebius_apply(s, ExtendedPoint(near));
    CHECK((!img.is_infinite() && img.coords().norm() > 1e6));
  }
}

TEST_CASE("sphere moebius closed-form composition and degenerate branch") {
  SequentialRng rng(26);
  {  // inverse-parameter pair composes to the identity
    const Vec phi = 0.6 * runit(rng, 3);
    const SphereMoebius s1(Rotation::identity(3), phi);
    const SphereMoebius s2(Rotation::identity(3), Vec(-phi));
    const SphereMoebius comp = sphere_moebius_compose(s2, s1);
    CHECK(comp.phi().isZero(0.0));
    CHECK((comp.rotation().matrix() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  }
  {  // composing with the identity acts as the map itself
    const SphereMoebius s = rsphere(rng, 3);
    const SphereMoebius comp = sphere_moebius_compose(s, SphereMoebius::identity(3));
    for (int k = 0; k < 20; ++k) {
      const Vec y = runit(rng, 3);
      CHECK((sphere_moebius_apply_unit(comp, y) - sphere_moebius_apply_unit(s, y)).norm() < 1e-12);
    }
  }
  for (int k = 0; k < 25; ++k) {  // random pairs act pointwise as the composition
    const Eigen::Index ambient = 2 + k % 2;
    const SphereMoebius s1 = rsphere(rng, ambient), s2 = rsphere(rng, ambient);
    const SphereMoebius comp = sphere_moebius_compose(s2, s1);
    for (int j = 0; j < 30; ++j) {
      const Vec y = runit(rng, ambient);
      const Vec ref = sphere_moebius_apply_unit(s2, sphere_moebius_apply_unit(s1, y));
      CHECK((sphere_moebius_apply_unit(comp, y) - ref).norm() < 1e-9);
    }
  }
}

TEST_CASE("sphere moebius inverse") {
  SequentialRng rng(27);
  {  // invert(identity) = identity
    const SphereMoebius inv = sphere_moebius_invert(SphereMoebius::identity(3));
    CHECK(inv.phi().isZero(0.0));
    CHECK((inv.rotation().matrix() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  }
  for (int k = 0; k < 20; ++k) {
    const Eigen::Index ambient = 2 + k % 3;
    const SphereMoebius s = rsphere(rng, ambient);
    const SphereMoebius inv = sphere_moebius_invert(s);
    const SphereMoebius invinv = sphere_moebius_invert(inv);
    for (int j = 0; j < 25; ++j) {
      const Vec y = runit(rng, ambient);
      CHECK((sphere_moebius_apply_unit(inv, sphere_moebius_apply_unit(s, y)) - y).norm() < 1e-10);
      CHECK((sphere_moebius_apply_unit(invinv, y) - sphere_moebius_apply_unit(s, y)).norm() <
            1e-10);
    }
  }
}

TEST_CASE("inv_stereographic values") {
  {  // origin to the bottom of the sphere
    const Vec y = inv_stereographic(ExtendedPoint(Vec::Zero(2)));
    CHECK(y(0) == 0.0);
    CHECK(y(1) == 0.0);
    CHECK(y(2) == -1.0);
  }
  SequentialRng rng(28);
  for (int k = 0; k < 10; ++k) {  // equator is fixed
    const Vec x = runit(rng, 2);
    const Vec y = inv_stereographic(ExtendedPoint(x));
    CHECK((y.head(2) - x).norm() < 1e-14);
    CHECK(std::abs(y(2)) < 1e-14);
  }
  const Vec north = inv_stereographic(ExtendedPoint::infinity(2));
  CHECK(north(2) == 1.0);
  CHECK(north.head(2).isZero(0.0));
}

TEST_CASE("inv_stereographic_ext agrees with inv_stereographic on sigma = 0") {
  SequentialRng rng(29);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index d = 1 + k % 3;
    const Vec x = rvec(rng, d, -3, 3);
    const Vec a = inv_stereographic_ext(ExtendedComplex(x, 0.0)).coords();
    const Vec b = inv_stereographic(ExtendedPoint(x));
    CHECK((a - b).norm() < 1e-15);
  }
  // -i maps to infinity, i maps to the origin
  CHECK(inv_stereographic_ext(ExtendedComplex(Vec::Zero(2), -1.0)).is_infinite());
  CHECK(inv_stereographic_ext(ExtendedComplex(Vec::Zero(2), 1.0)).coords().isZero(0.0));
}

TEST_CASE("stereographic inverts inv_stereographic_ext") {
  CHECK(stereographic(ExtendedPoint(Vec::Unit(3, 2))).is_infinite());  // e_{d+1}
  {
    Vec south(3);
    south << 0, 0, -1;
    const ExtendedComplex t = stereographic(ExtendedPoint(south));
    CHECK(t.mu().isZero(0.0));
    CHECK(t.sigma() == 0.0);
  }
  SequentialRng rng(30);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index d = 1 + k % 3;
    const ExtendedComplex t(rvec(rng, d, -2, 2), rng.uniform(0.0, 2.0));
    const ExtendedComplex back = stereographic(inv_stereographic_ext(t));
    CHECK((back.mu() - t.mu()).norm() < 1e-12 * (1 + t.mu().norm()));
    CHECK(back.sigma() == doctest::Approx(t.sigma()).epsilon(1e-12));
  }
  // infinity round trip
  CHECK((inv_stereographic_ext(ExtendedComplex::infinity(2)).coords() - Vec::Unit(3, 2)).norm() ==
        0.0);
}

TEST_CASE("inv_stereographic_ext is the advertised Moebius element of R^{d+1}") {
  // theta -> 2/(|theta+i|^2)(mu, (|theta|^2-1)/2) equals the 5-tuple
  // [I-2ee', 2, e, -e, 2] acting on (mu', sigma)'.
  SequentialRng rng(32);
  for (int k = 0; k < 30; ++k) {
    const Eigen::Index d = 1 + k % 3;
    Mat A = Mat::Identity(d + 1, d + 1);
    A(d, d) = -1.0;
    const MoebiusMap star(A, 2.0, Vec::Unit(d + 1, d), Vec(-Vec::Unit(d + 1, d)), 2);
    const ExtendedComplex t(rvec(rng, d, -2, 2), rng.uniform(-2.0, 2.0));
    Vec lifted(d + 1);
    lifted.head(d) = t.mu();
    lifted(d) = t.sigma();
    const ExtendedPoint via_map = moebius_apply(star, ExtendedPoint(lifted));
    const ExtendedPoint direct = inv_stereographic_ext(t);
    REQUIRE(!direct.is_infinite());
    CHECK((via_map.coords() - direct.coords()).norm() < 1e-14 * (1 + direct.coords().norm()));
  }
}

TEST_CASE("plane Moebius form matches the sphere map on the circle") {
  // h(z) = alpha0 (z + alpha1)/(conj(alpha1) z + 1) with |alpha0| = 1 acts on
  // the unit circle exactly as the sphere map with R = rot(arg alpha0) and
  // phi = alpha1 read as a vector.
  SequentialRng rng(31);
  for (int k = 0; k < 20; ++k) {
    const double rho = rng.uniform(-M_PI, M_PI);
    const std::complex<double> a0 = std::polar(1.0, rho);
    std::complex<double> a1(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
    if (std::abs(a1) < 1e-3) a1 += 0.3;
    Mat R(2, 2);
    R << std::cos(rho), -std::sin(rho), std::sin(rho), std::cos(rho);
    Vec phi(2);
    phi << a1.real(), a1.imag();
    const SphereMoebius s(Rotation(R), phi);
    for (int j = 0; j < 20; ++j) {
      const double ang = rng.uniform(-M_PI, M_PI);
      const std::complex<double> z = std::polar(1.0, ang);
      const std::complex<double> hz = a0 * (z + a1) / (std::conj(a1) * z + 1.0);
      Vec y(2);
      y << z.real(), z.imag();
      const Vec img = sphere_moebius_apply_unit(s, y);
      CHECK(std::abs(img(0) - hz.real()) < 1e-12);
      CHECK(std::abs(img(1) - hz.imag()) < 1e-12);
    }
  }
}
