#include <doctest.h>

#include "mcauchy/geometry.hpp"
#include "mcauchy/rng.hpp"

using namespace mcauchy;

namespace {
Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("invert_point basic values") {
  const ExtendedPoint p(vec2(3, 4));
  const Vec q = invert_point(p).coords();
  CHECK(q(0) == doctest::Approx(3.0 / 25.0).epsilon(1e-15));
  CHECK(q(1) == doctest::Approx(4.0 / 25.0).epsilon(1e-15));

  CHECK(invert_point(ExtendedPoint(Vec::Zero(2))).is_infinite());
  CHECK(invert_point(ExtendedPoint::infinity(2)).coords().isZero(0.0));

  const Vec e1 = Vec::Unit(3, 0);
  CHECK((invert_point(ExtendedPoint(e1)).coords() - e1).norm() == 0.0);
}

TEST_CASE("invert_point is an involution") {
  SequentialRng rng(11);
  for (int k = 0; k < 50; ++k) {
    Vec x(3);
    for (int i = 0; i < 3; ++i) x(i) = rng.uniform(-2.0, 2.0);
    const Vec back = invert_point(invert_point(ExtendedPoint(x))).coords();
    CHECK((back - x).norm() < 1e-14 * (1.0 + x.norm()));
  }
}

TEST_CASE("reflect") {
  const Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1);
  CHECK((reflect(e1, e1) - e1).norm() == 0.0);
  CHECK((reflect(e1, e2) + e2).norm() == 0.0);
  CHECK_THROWS_AS(reflect(Vec::Zero(3), e1), domain_error);

  SequentialRng rng(12);
  for (int k = 0; k < 50; ++k) {
    Vec phi(3), x(3);
    for (int i = 0; i < 3; ++i) {
      phi(i) = rng.normal();
      x(i) = rng.uniform(-1.0, 1.0);
    }
    const Vec rx = reflect(phi, x);
    CHECK(rx.norm() == doctest::Approx(x.norm()).epsilon(1e-12));
    CHECK((reflect(phi, rx) - x).norm() < 1e-12);
  }
}

TEST_CASE("reflect_matrix matches reflect columnwise") {
  SequentialRng rng(13);
  Vec phi(4);
  Mat m(4, 4);
  for (int i = 0; i < 4; ++i) {
    phi(i) = rng.normal();
    for (int j = 0; j < 4; ++j) m(i, j) = rng.normal();
  }
  const Mat rm = reflect_matrix(phi, m);
  for (int j = 0; j < 4; ++j) CHECK((rm.col(j) - reflect(phi, m.col(j))).norm() < 1e-13);
}

TEST_CASE("ext_param_transform examples") {
  const Vec e1 = Vec::Unit(2, 0);
  {  // pure shift
    const ExtendedComplex t = ext_param_transform(ExtendedComplex(Vec::Zero(2), 1.0), e1, 1.0,
                                                  Mat::Identity(2, 2));
    CHECK((t.mu() - e1).norm() == 0.0);
    CHECK(t.sigma() == 1.0);
  }
  {  // scaling identifies the sign of sigma
    const ExtendedComplex t = ext_param_transform(ExtendedComplex(e1, 1.0), Vec::Zero(2), -2.0,
                                                  Mat::Identity(2, 2));
    CHECK((t.mu() + 2.0 * e1).norm() == 0.0);
    CHECK(t.sigma() == 2.0);
  }
  CHECK(ExtendedComplex(e1, 1.0).norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  {  // identity transform
    const ExtendedComplex t0(vec2(0.3, -0.7), 0.4);
    const ExtendedComplex t =
        ext_param_transform(t0, Vec::Zero(2), 1.0, Mat::Identity(2, 2));
    CHECK((t.mu() - t0.mu()).norm() == 0.0);
    CHECK(t.sigma() == t0.sigma());
  }
}

TEST_CASE("random_rotation") {
  CHECK(random_rotation(1, 99).matrix()(0, 0) == 1.0);
  for (const auto seed : {7ull, 8ull, 9ull}) {
    const Rotation r = random_rotation(4, seed);
    const Mat err = r.matrix() * r.matrix().transpose() - Mat::Identity(4, 4);
    CHECK(err.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(r.matrix().determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(random_rotation(3, 42).matrix() == random_rotation(3, 42).matrix());
  CHECK(random_rotation(3, 42).matrix() != random_rotation(3, 43).matrix());
}

TEST_CASE("Rotation validation") {
  Mat m(2, 2);
  m << 1.0, 0.1, 0.0, 1.0;
  CHECK_THROWS_AS(Rotation{m}, invalid_parameter);
  Mat refl = Mat::Identity(2, 2);
  refl(0, 0) = -1.0;  // orthogonal but improper
  CHECK_THROWS_AS(Rotation{refl}, invalid_parameter);
}

TEST_CASE("ExtendedComplex canonicalization and infinity") {
  const ExtendedComplex t(vec2(1, 2), -0.5);
  CHECK(t.sigma() == -0.5);
  CHECK(t.canonical().sigma() == 0.5);
  const ExtendedComplex inf = ExtendedComplex::infinity(2);
  CHECK(inf.is_infinite());
  CHECK_THROWS_AS(inf.mu(), domain_error);
  CHECK_THROWS_AS(inf.norm(), domain_error);
}

TEST_CASE("ExtendedPoint rejects non-finite input") {
  Vec bad(2);
  bad << 1.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ExtendedPoint{bad}, invalid_parameter);
  CHECK_THROWS_AS(ExtendedPoint::infinity(2).coords(), domain_error);
}
