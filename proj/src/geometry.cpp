#include "mcauchy/geometry.hpp"

#include <cmath>

#include "mcauchy/rng.hpp"

namespace mcauchy {

ExtendedPoint::ExtendedPoint(Vec coords) : dim_(coords.size()), infinite_(false) {
  if (coords.size() < 1) throw invalid_parameter("ExtendedPoint: dimension must be >= 1");
  if (!coords.allFinite()) throw invalid_parameter("ExtendedPoint: coordinates must be finite");
  coords_ = std::move(coords);
}

ExtendedPoint ExtendedPoint::infinity(Eigen::Index dim) {
  if (dim < 1) throw invalid_parameter("ExtendedPoint: dimension must be >= 1");
  return ExtendedPoint(dim, true);
}

const Vec& ExtendedPoint::coords() const {
  if (infinite_) throw domain_error("ExtendedPoint: the point at infinity has no coordinates");
  return coords_;
}

ExtendedComplex::ExtendedComplex(Vec mu, double sigma)
    : sigma_(sigma), dim_(mu.size()), infinite_(false) {
  if (mu.size() < 1) throw invalid_parameter("ExtendedComplex: dimension must be >= 1");
  if (!mu.allFinite() || !std::isfinite(sigma))
    throw invalid_parameter("ExtendedComplex: entries must be finite");
  mu_ = std::move(mu);
}

ExtendedComplex ExtendedComplex::infinity(Eigen::Index dim) {
  if (dim < 1) throw invalid_parameter("ExtendedComplex: dimension must be >= 1");
  return ExtendedComplex(dim, true);
}

const Vec& ExtendedComplex::mu() const {
  if (infinite_) throw domain_error("ExtendedComplex: infinity carries no coordinates");
  return mu_;
}

double ExtendedComplex::sigma() const {
  if (infinite_) throw domain_error("ExtendedComplex: infinity carries no coordinates");
  return sigma_;
}

ExtendedComplex ExtendedComplex::canonical() const {
  if (infinite_) return *this;
  return ExtendedComplex(mu_, std::abs(sigma_));
}

double ExtendedComplex::norm() const {
  if (infinite_) throw domain_error("ExtendedComplex: infinity has no norm");
  return std::sqrt(mu_.squaredNorm() + sigma_ * sigma_);
}

ExtendedComplex ExtendedComplex::shifted(const Vec& a) const {
  if (infinite_) return *this;
  if (a.size() != dim_) throw invalid_parameter("shifted: dimension mismatch");
  return ExtendedComplex(mu_ + a, sigma_);
}

ExtendedComplex ExtendedComplex::scaled(double gamma) const {
  if (infinite_) return *this;
  return ExtendedComplex(gamma * mu_, gamma * sigma_);
}

ExtendedComplex ExtendedComplex::rotated(const Mat& A) const {
  if (infinite_) return *this;
  if (A.rows() != dim_ || A.cols() != dim_)
    throw invalid_parameter("rotated: dimension mismatch");
  if (!is_orthogonal(A)) throw invalid_parameter("rotated: matrix is not orthogonal");
  return ExtendedComplex(A * mu_, sigma_);
}

bool is_orthogonal(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Mat err = m * m.transpose() - Mat::Identity(m.rows(), m.cols());
  return err.cwiseAbs().maxCoeff() <= tol;
}

Rotation::Rotation(Mat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw invalid_parameter("Rotation: matrix must be square, d >= 1");
  if (!is_orthogonal(m_)) throw invalid_parameter("Rotation: R R' != I within 1e-12");
  if (std::abs(m_.determinant() - 1.0) > kOrthoTol * m_.rows() * 10)
    throw invalid_parameter("Rotation: det != +1 within tolerance");
}

Rotation Rotation::identity(Eigen::Index d) { return Rotation(Mat::Identity(d, d)); }

Rotation Rotation::transposed() const { return Rotation(m_.transpose()); }

Rotation Rotation::compose(const Rotation& other) const {
  if (dim() != other.dim()) throw invalid_parameter("Rotation::compose: dimension mismatch");
  return Rotation(m_ * other.m_);
}

ExtendedPoint invert_point(const ExtendedPoint& x) {
  if (x.is_infinite()) return ExtendedPoint(Vec::Zero(x.dim()));
  const Vec& v = x.coords();
  if (v.isZero(0.0)) return ExtendedPoint::infinity(x.dim());
  return ExtendedPoint(v / v.squaredNorm());
}

Vec reflect(const Vec& phi, const Vec& x) {
  if (phi.size() != x.size()) throw invalid_parameter("reflect: dimension mismatch");
  const double n2 = phi.squaredNorm();
  if (n2 == 0.0) throw domain_error("reflect: phi must be nonzero");
  return 2.0 * (phi.dot(x) / n2) * phi - x;
}

Mat reflect_matrix(const Vec& phi, const Mat& m) {
  const double n2 = phi.squaredNorm();
  if (n2 == 0.0) throw domain_error("reflect_matrix: phi must be nonzero");
  if (phi.size() != m.rows()) throw invalid_parameter("reflect_matrix: dimension mismatch");
  return 2.0 / n2 * (phi * (phi.transpose() * m)) - m;
}

ExtendedComplex ext_param_transform(const ExtendedComplex& theta, const Vec& a,
                                    double gamma, const Mat& A) {
  if (theta.is_infinite()) return theta;
  return theta.shifted(a).scaled(gamma).rotated(A).canonical();
}

Rotation random_rotation(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw invalid_parameter("random_rotation: d must be >= 1");
  if (d == 1) return Rotation::identity(1);
  SequentialRng rng(seed, /*stream=*/0x726f74);
  Mat g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Sign fix makes the factorization unique, hence Haar on O(d); flipping one
  // column when det = -1 lands the law on SO(d).
  for (Eigen::Index j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(d - 1) = -q.col(d - 1);
  return Rotation(std::move(q));
}

}  // namespace mcauchy
