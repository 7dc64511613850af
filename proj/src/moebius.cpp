#include "mcauchy/moebius.hpp"

#include <cmath>
#include <limits>

namespace mcauchy {

MoebiusMap::MoebiusMap(Mat A_, double gamma_, Vec a_, Vec b_, int epsilon_)
    : A(std::move(A_)), gamma(gamma_), a(std::move(a_)), b(std::move(b_)), epsilon(epsilon_) {
  const Eigen::Index d = a.size();
  if (d < 1) throw invalid_parameter("MoebiusMap: dimension must be >= 1");
  if (epsilon != 0 && epsilon != 2) throw invalid_parameter("MoebiusMap: epsilon must be 0 or 2");
  if (b.size() != d || A.rows() != d || A.cols() != d)
    throw invalid_parameter("MoebiusMap: dimension mismatch");
  if (!is_orthogonal(A)) throw invalid_parameter("MoebiusMap: A must be orthogonal within 1e-12");
  if (!std::isfinite(gamma) || !a.allFinite() || !b.allFinite())
    throw invalid_parameter("MoebiusMap: entries must be finite");
}

MoebiusMap MoebiusMap::identity(Eigen::Index d) {
  return MoebiusMap(Mat::Identity(d, d), 1.0, Vec::Zero(d), Vec::Zero(d), 0);
}
MoebiusMap MoebiusMap::inversion(Eigen::Index d) {
  return MoebiusMap(Mat::Identity(d, d), 1.0, Vec::Zero(d), Vec::Zero(d), 2);
}
MoebiusMap MoebiusMap::shift(const Vec& a) {
  const Eigen::Index d = a.size();
  return MoebiusMap(Mat::Identity(d, d), 1.0, a, Vec::Zero(d), 0);
}
MoebiusMap MoebiusMap::scale(Eigen::Index d, double gamma) {
  return MoebiusMap(Mat::Identity(d, d), gamma, Vec::Zero(d), Vec::Zero(d), 0);
}
MoebiusMap MoebiusMap::orthogonal(const Mat& A) {
  const Eigen::Index d = A.rows();
  return MoebiusMap(A, 1.0, Vec::Zero(d), Vec::Zero(d), 0);
}

ExtendedPoint moebius_apply(const MoebiusMap& m, const ExtendedPoint& x) {
  if (x.dim() != m.dim()) throw invalid_parameter("moebius_apply: dimension mismatch");
  if (x.is_infinite()) {
    if (m.epsilon == 0) return ExtendedPoint::infinity(m.dim());
    return ExtendedPoint(m.A * m.b);
  }
  const Vec v = x.coords() + m.a;
  if (m.epsilon == 2) {
    const double n2 = v.squaredNorm();
    if (n2 == 0.0) return ExtendedPoint::infinity(m.dim());
    return ExtendedPoint(m.A * (m.gamma / n2 * v + m.b));
  }
  return ExtendedPoint(m.A * (m.gamma * v + m.b));
}

ExtendedComplex moebius_apply_param(const MoebiusMap& m, const ExtendedComplex& theta) {
  if (theta.dim() != m.dim()) throw invalid_parameter("moebius_apply_param: dimension mismatch");
  const Eigen::Index d = m.dim();
  if (theta.is_infinite()) {
    if (m.epsilon == 0) return theta;
    return ExtendedComplex(m.A * m.b, 0.0);
  }
  // Lifted action on (mu', sigma)' with tilde-padded a, b and diag(A,1).
  Vec lift(d + 1);
  lift.head(d) = theta.mu() + m.a;
  lift(d) = theta.sigma();
  if (m.epsilon == 2) {
    const double n2 = lift.squaredNorm();
    if (n2 == 0.0) return ExtendedComplex::infinity(d);
    lift *= m.gamma / n2;
  } else {
    lift *= m.gamma;
  }
  lift.head(d) += m.b;
  return ExtendedComplex(m.A * lift.head(d), lift(d)).canonical();
}

MoebiusChain::MoebiusChain(std::vector<MoebiusMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw invalid_parameter("MoebiusChain: must be non-empty");
  for (const auto& m : maps_)
    if (m.dim() != maps_.front().dim())
      throw invalid_parameter("MoebiusChain: all maps must share one dimension");
}

MoebiusChain::MoebiusChain(MoebiusMap map) : maps_{std::move(map)} {}

MoebiusChain chain_compose(const MoebiusChain& outer, const MoebiusChain& inner) {
  if (outer.dim() != inner.dim()) throw invalid_parameter("chain_compose: dimension mismatch");
  std::vector<MoebiusMap> maps = outer.maps();
  maps.insert(maps.end(), inner.maps().begin(), inner.maps().end());
  return MoebiusChain(std::move(maps));
}

ExtendedPoint chain_apply(const MoebiusChain& c, const ExtendedPoint& x) {
  ExtendedPoint y = x;
  for (auto it = c.maps().rbegin(); it != c.maps().rend(); ++it) y = moebius_apply(*it, y);
  return y;
}

ExtendedComplex chain_apply_param(const MoebiusChain& c, const ExtendedComplex& theta) {
  ExtendedComplex t = theta;
  for (auto it = c.maps().rbegin(); it != c.maps().rend(); ++it) t = moebius_apply_param(*it, t);
  return t;
}

double chain_singularity_distance(const MoebiusChain& c, const Vec& x) {
  double dist = std::numeric_limits<double>::infinity();
  ExtendedPoint p{Vec(x)};
  for (auto it = c.maps().rbegin(); it != c.maps().rend(); ++it) {
    if (p.is_infinite()) return 0.0;
    if (it->epsilon == 2) dist = std::min(dist, (p.coords() + it->a).norm());
    p = moebius_apply(*it, p);
  }
  if (p.is_infinite()) return 0.0;
  return dist;
}

SphereMoebius::SphereMoebius(Rotation R, Vec phi) : rot_(std::move(R)), phi_(std::move(phi)) {
  if (phi_.size() != rot_.dim())
    throw invalid_parameter("SphereMoebius: R must be (d+1)x(d+1) matching phi");
  if (phi_.size() < 2) throw invalid_parameter("SphereMoebius: ambient dimension must be >= 2");
  if (!phi_.allFinite()) throw invalid_parameter("SphereMoebius: phi must be finite");
  if (std::abs(phi_.norm() - 1.0) <= 1e-12)
    throw invalid_parameter("SphereMoebius: |phi| = 1 degenerates to a point mass");
}

SphereMoebius SphereMoebius::identity(Eigen::Index ambient_dim) {
  return SphereMoebius(Rotation::identity(ambient_dim), Vec::Zero(ambient_dim));
}

namespace {

// Core of the sphere map without the rotation: (1-|phi|^2)/|u+phi|^2 (u+phi) + phi.
// Finite u with u != -phi only.
Vec sphere_core(const Vec& phi, const Vec& u) {
  const Vec v = u + phi;
  return (1.0 - phi.squaredNorm()) / v.squaredNorm() * v + phi;
}

}  // namespace

ExtendedPoint sphere_moebius_apply(const SphereMoebius& s, const ExtendedPoint& x) {
  if (x.dim() != s.ambient_dim())
    throw invalid_parameter("sphere_moebius_apply: dimension mismatch");
  const Mat& R = s.rotation().matrix();
  const Vec& phi = s.phi();
  if (phi.isZero(0.0)) {
    if (x.is_infinite()) return x;
    return ExtendedPoint(R * x.coords());
  }
  if (x.is_infinite()) return ExtendedPoint(R * (phi / phi.squaredNorm()));
  const Vec& c = x.coords();
  if (c.isZero(0.0)) return ExtendedPoint(R * phi);
  const Vec xt = c / c.squaredNorm();
  if ((xt + phi).isZero(0.0)) return ExtendedPoint::infinity(x.dim());
  return ExtendedPoint(R * sphere_core(phi, xt));
}

Vec sphere_moebius_apply_unit(const SphereMoebius& s, const Vec& y) {
  if (std::abs(y.norm() - 1.0) > 1e-10)
    throw domain_error("sphere_moebius_apply_unit: input must be a unit vector");
  const ExtendedPoint img = sphere_moebius_apply(s, ExtendedPoint(y));
  return img.coords();  // unit input never hits the singular point -phi/|phi|^2
}

SphereMoebius sphere_moebius_compose(const SphereMoebius& s2, const SphereMoebius& s1) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw invalid_parameter("sphere_moebius_compose: dimension mismatch");
  const Mat& R1 = s1.rotation().matrix();
  const Mat& R2 = s2.rotation().matrix();
  const Vec& phi1 = s1.phi();
  const Vec& phi2 = s2.phi();

  // Pure-rotation factors compose by conjugation / concatenation.
  if (phi1.isZero(0.0))
    return SphereMoebius(s2.rotation().compose(s1.rotation()), R1.transpose() * phi2);
  if (phi2.isZero(0.0))
    return SphereMoebius(s2.rotation().compose(s1.rotation()), phi1);

  const Vec phi1t = phi1 / phi1.squaredNorm();
  const Vec phi2t = phi2 / phi2.squaredNorm();
  const Vec w = R1.transpose() * phi2t;
  const Vec v = w + phi1t;
  const double scale = std::max({1.0, phi1t.norm(), phi2t.norm()});
  if (v.norm() <= 1e-12 * scale)
    return SphereMoebius(s2.rotation().compose(s1.rotation()), Vec::Zero(phi1.size()));

  // Composition law in the inverted parameterization.
  const Vec phi_check = reflect(phi1t, sphere_core(phi1t, w));
  if (phi_check.norm() <= 1e-12 * scale)
    throw domain_error(
        "sphere_moebius_compose: composition is a reflection-type element "
        "(parameters straddle the unit sphere); not representable as (R, phi)");
  const Vec beta = reflect(phi1, v) / v.squaredNorm();
  Mat Rc = R2 * reflect_matrix(phi2, R1);
  Rc = Rc * reflect_matrix(phi1, reflect_matrix(beta, reflect_matrix(phi_check, Mat::Identity(phi1.size(), phi1.size()))));
  return SphereMoebius(Rotation(std::move(Rc)), phi_check / phi_check.squaredNorm());
}

SphereMoebius sphere_moebius_invert(const SphereMoebius& s) {
  return SphereMoebius(s.rotation().transposed(), -(s.rotation().matrix() * s.phi()));
}

Vec inv_stereographic(const ExtendedPoint& x) {
  const Eigen::Index d = x.dim();
  Vec y = Vec::Zero(d + 1);
  if (x.is_infinite()) {
    y(d) = 1.0;
    return y;
  }
  const Vec& c = x.coords();
  const double s = c.squaredNorm();
  y.head(d) = 2.0 / (s + 1.0) * c;
  y(d) = (s - 1.0) / (s + 1.0);
  return y;
}

ExtendedPoint inv_stereographic_ext(const ExtendedComplex& theta) {
  const Eigen::Index d = theta.dim();
  if (theta.is_infinite()) {
    Vec y = Vec::Zero(d + 1);
    y(d) = 1.0;
    return ExtendedPoint(y);
  }
  const double denom = theta.mu().squaredNorm() + (theta.sigma() + 1.0) * (theta.sigma() + 1.0);
  if (denom == 0.0) return ExtendedPoint::infinity(d + 1);  // theta = -i
  Vec y(d + 1);
  y.head(d) = 2.0 / denom * theta.mu();
  y(d) = (theta.norm() * theta.norm() - 1.0) / denom;
  return ExtendedPoint(y);
}

ExtendedComplex stereographic(const ExtendedPoint& y) {
  const Eigen::Index d = y.dim() - 1;
  if (d < 1) throw invalid_parameter("stereographic: ambient dimension must be >= 2");
  if (y.is_infinite()) return ExtendedComplex(Vec::Zero(d), -1.0);  // preimage of inf is -i
  // Flip the last coordinate, then apply the involution x -> 2(x+e)/|x+e|^2 - e.
  Vec v = y.coords();
  v(d) = -v(d);
  v(d) += 1.0;
  const double n2 = v.squaredNorm();
  if (n2 == 0.0) return ExtendedComplex::infinity(d);  // y = e_{d+1}
  v *= 2.0 / n2;
  v(d) -= 1.0;
  return ExtendedComplex(v.head(d), v(d));
}

}  // namespace mcauchy
