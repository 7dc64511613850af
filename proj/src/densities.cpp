#include "mcauchy/densities.hpp"

#include <cmath>
#include <limits>

namespace mcauchy {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// log of 2^{d-1} Gamma((d+1)/2) / pi^{(d+1)/2}
double log_euclid_const(Eigen::Index d) {
  return (d - 1) * std::log(2.0) + std::lgamma((d + 1) / 2.0) - (d + 1) / 2.0 * std::log(M_PI);
}

// log of Gamma((d+1)/2) / (2 pi^{(d+1)/2}), the reciprocal sphere area
double log_sphere_const(Eigen::Index d) {
  return std::lgamma((d + 1) / 2.0) - std::log(2.0) - (d + 1) / 2.0 * std::log(M_PI);
}

void check_unit(const Vec& y, const char* who) {
  if (std::abs(y.norm() - 1.0) > 1e-10)
    throw domain_error(std::string(who) + ": input must lie on the unit sphere");
}

}  // namespace

EuclideanCauchy::EuclideanCauchy(ExtendedComplex theta) : theta_(theta.canonical()) {}

EuclideanCauchy::EuclideanCauchy(Vec mu, double sigma)
    : theta_(ExtendedComplex(std::move(mu), sigma).canonical()) {}

bool EuclideanCauchy::is_point_mass() const {
  return theta_.is_infinite() || theta_.sigma() == 0.0;
}

double EuclideanCauchy::log_pdf(const ExtendedPoint& x) const {
  if (is_point_mass())
    throw density_undefined("EuclideanCauchy: point-mass parameter has no density");
  if (x.dim() != dim()) throw invalid_parameter("EuclideanCauchy::log_pdf: dimension mismatch");
  if (x.is_infinite()) return -std::numeric_limits<double>::infinity();
  const double s = theta_.sigma();
  const double r2 = s * s + (x.coords() - theta_.mu()).squaredNorm();
  return log_euclid_const(dim()) + dim() * (std::log(s) - std::log(r2));
}

double EuclideanCauchy::pdf(const ExtendedPoint& x) const { return std::exp(log_pdf(x)); }
double EuclideanCauchy::log_pdf(const Vec& x) const { return log_pdf(ExtendedPoint(x)); }
double EuclideanCauchy::pdf(const Vec& x) const { return std::exp(log_pdf(x)); }

SphericalCauchy::SphericalCauchy(Vec phi) : dim_(phi.size() - 1), uniform_(false) {
  if (phi.size() < 2) throw invalid_parameter("SphericalCauchy: ambient dimension must be >= 2");
  if (!phi.allFinite()) throw invalid_parameter("SphericalCauchy: phi must be finite");
  phi_ = std::move(phi);
}

SphericalCauchy SphericalCauchy::uniform(Eigen::Index sphere_dim) {
  if (sphere_dim < 1) throw invalid_parameter("SphericalCauchy: sphere dimension must be >= 1");
  return SphericalCauchy(sphere_dim, true);
}

bool SphericalCauchy::is_point_mass() const {
  return !uniform_ && std::abs(phi_.norm() - 1.0) <= 1e-12;
}

const Vec& SphericalCauchy::phi() const {
  if (uniform_) throw domain_error("SphericalCauchy: the uniform law has phi = infinity");
  return phi_;
}

double SphericalCauchy::log_pdf(const Vec& y) const {
  if (y.size() != dim_ + 1) throw invalid_parameter("SphericalCauchy::log_pdf: dimension mismatch");
  check_unit(y, "SphericalCauchy::log_pdf");
  if (uniform_) return log_sphere_const(dim_);
  if (is_point_mass())
    throw density_undefined("SphericalCauchy: |phi| = 1 is a point mass, no density");
  const double n2 = phi_.squaredNorm();
  return log_sphere_const(dim_) +
         dim_ * (std::log(std::abs(1.0 - n2)) - std::log((y - phi_).squaredNorm()));
}

double SphericalCauchy::pdf(const Vec& y) const { return std::exp(log_pdf(y)); }

MarginalCauchyBeta::MarginalCauchyBeta(double varphi, double nu) : varphi_(varphi), nu_(nu) {
  if (!std::isfinite(varphi) || std::abs(std::abs(varphi) - 1.0) <= 1e-12)
    throw invalid_parameter("MarginalCauchyBeta: |varphi| must differ from 1");
  if (!(nu >= 0.0)) throw invalid_parameter("MarginalCauchyBeta: nu must be >= 0");
}

double MarginalCauchyBeta::log_pdf(double y1) const {
  if (!(y1 > -1.0 && y1 < 1.0))
    throw domain_error("MarginalCauchyBeta: support is the open interval (-1,1)");
  if (!(nu_ > 0.0)) throw density_undefined("MarginalCauchyBeta: nu = 0 has no density");
  const double p2 = varphi_ * varphi_;
  return -log_beta(nu_ / 2.0, 0.5) +
         nu_ * (std::log(std::abs(1.0 - p2)) - std::log(1.0 + p2 - 2.0 * varphi_ * y1)) +
         (nu_ - 2.0) / 2.0 * std::log1p(-y1 * y1);
}

double MarginalCauchyBeta::pdf(double y1) const { return std::exp(log_pdf(y1)); }

double marginal_pushforward_param(double varphi, double b) {
  if (!(b > -1.0 && b < 1.0)) throw domain_error("marginal_pushforward_param: need |b| < 1");
  if (b == 0.0) return varphi;
  const double vp = (1.0 - std::sqrt(1.0 - b * b)) / b;
  return (varphi + vp) / (varphi * vp + 1.0);
}

double real_moebius(double y, double b) { return (y + b) / (b * y + 1.0); }
double real_moebius_deriv(double y, double b) {
  const double t = b * y + 1.0;
  return (1.0 - b * b) / (t * t);
}

KentTypeCauchy::KentTypeCauchy(Vec mu, Mat L) : mu_(std::move(mu)), L_(std::move(L)) {
  const Eigen::Index d = mu_.size();
  if (d < 1) throw invalid_parameter("KentTypeCauchy: dimension must be >= 1");
  if (L_.rows() != d || L_.cols() != d)
    throw invalid_parameter("KentTypeCauchy: L must be d x d");
  Eigen::FullPivLU<Mat> lu(L_);
  if (!lu.isInvertible()) throw invalid_parameter("KentTypeCauchy: L must be invertible");
  // |L^{-1} v|^2 = v' (L L')^{-1} v drives the quadratic form.
  S_ = (L_ * L_.transpose()).inverse();

  A_.resize(d + 1, d + 1);
  const Vec smu = S_ * mu_;
  A_.topLeftCorner(d, d) = S_;
  A_.topRightCorner(d, 1) = -smu;
  A_.bottomLeftCorner(1, d) = -smu.transpose();
  A_(d, d) = 1.0 + mu_.dot(smu);

  qbar_ = A_.trace() / (d + 1);
  T_ = A_ - qbar_ * Mat::Identity(d + 1, d + 1);

  Eigen::SelfAdjointEigenSolver<Mat> es(A_);
  eigvals_ = es.eigenvalues();
  eigvecs_ = es.eigenvectors();

  log_const_ = log_sphere_const(d) - std::log(std::abs(L_.determinant()));
}

double KentTypeCauchy::log_pdf(const Vec& y) const {
  const Eigen::Index d = sphere_dim();
  if (y.size() != d + 1) throw invalid_parameter("KentTypeCauchy::log_pdf: dimension mismatch");
  check_unit(y, "KentTypeCauchy::log_pdf");
  Vec w = y;
  w(d) += 1.0;
  const double wn = w.norm();
  if (wn <= 1e-10)
    throw singular_input("KentTypeCauchy::log_pdf: density undefined at the chart pole");
  w /= wn;
  return log_const_ - d * std::log(w.dot(A_ * w));
}

double KentTypeCauchy::pdf(const Vec& y) const { return std::exp(log_pdf(y)); }

double KentTypeCauchy::log_pdf_chart(const Vec& y) const {
  const Eigen::Index d = sphere_dim();
  if (y.size() != d + 1) throw invalid_parameter("KentTypeCauchy::log_pdf_chart: dimension mismatch");
  check_unit(y, "KentTypeCauchy::log_pdf_chart");
  const double t = 1.0 + y(d);
  if (t <= 1e-10)
    throw singular_input("KentTypeCauchy::log_pdf_chart: density undefined at the chart pole");
  const Vec q = y.head(d) / t;
  const Vec p = L_.partialPivLu().solve(q - mu_);
  return log_const_ + d * (std::log1p(q.squaredNorm()) - std::log1p(p.squaredNorm()));
}

KentMode kent_mode_antimode(const KentTypeCauchy& dist) {
  const Eigen::Index d = dist.sphere_dim();
  const Vec& lam = dist.eigenvalues();  // ascending
  const Mat& P = dist.eigenvectors();

  const double tie_tol = 1e-12 * std::abs(lam(d));
  bool degenerate = (lam(1) - lam(0) <= tie_tol) || (lam(d) - lam(d - 1) <= tie_tol);

  auto to_sphere = [&](Vec v) -> Vec {
    if (v(d) < 0) v = -v;  // the chart image lives in the upper hemisphere
    if (v(d) <= 1e-9) {
      // Extremum attained only in the limit at the chart pole.
      Vec pole = Vec::Zero(d + 1);
      pole(d) = -1.0;
      return pole;
    }
    return 2.0 * v(d) * v - Vec::Unit(d + 1, d);
  };

  Vec mode_t = P.col(0), anti_t = P.col(d);
  Vec mode = to_sphere(mode_t), anti = to_sphere(anti_t);
  if (mode(d) == -1.0 || anti(d) == -1.0) degenerate = true;

  const double fmax = std::exp(dist.log_const() - d * std::log(lam(0)));
  const double fmin = std::exp(dist.log_const() - d * std::log(lam(d)));
  return {mode, anti, fmax, fmin, degenerate};
}

double kent_d2_const(double a11, double a12, double a22) {
  const double det = a11 * a22 - a12 * a12;
  if (det == 0.0) throw invalid_parameter("kent_d2: a-matrix must be nonsingular");
  return std::sqrt(std::abs(det)) / (4.0 * M_PI);
}

namespace {
void check_polar(double xi1, double xi2) {
  if (!(xi1 >= 0.0 && xi1 <= M_PI)) throw domain_error("kent_polar_pdf: xi1 outside [0, pi]");
  if (!(xi2 >= -M_PI && xi2 < M_PI)) throw domain_error("kent_polar_pdf: xi2 outside [-pi, pi)");
}
}  // namespace

double kent_polar_pdf(double a11, double a12, double a22, double xi1, double xi2) {
  check_polar(xi1, xi2);
  const double c = std::cos(xi2), s = std::sin(xi2);
  const double sh = std::sin(xi1 / 2.0);
  const double br =
      1.0 + sh * sh * ((a11 - 1.0) * c * c + 2.0 * a12 * c * s + (a22 - 1.0) * s * s);
  return kent_d2_const(a11, a12, a22) / (br * br);
}

double kent_polar_pdf_alt(double a11, double a12, double a22, double xi1, double xi2) {
  check_polar(xi1, xi2);
  const double alpha = std::hypot(a11 - a22, 2.0 * a12);
  const double beta = 0.5 * std::atan2(2.0 * a12, a11 - a22);
  const double sh = std::sin(xi1 / 2.0);
  const double br =
      1.0 + 0.5 * sh * sh * (a11 + a22 - 2.0 + alpha * std::cos(2.0 * (xi2 - beta)));
  return kent_d2_const(a11, a12, a22) / (br * br);
}

double kent_lambert_pdf(double a11, double a12, double a22, double v1, double v2) {
  if (v1 * v1 + v2 * v2 > 4.0 + 1e-12)
    throw domain_error("kent_lambert_pdf: point outside the disk of radius 2");
  const double br =
      1.0 + 0.25 * ((a11 - 1.0) * v1 * v1 + 2.0 * a12 * v1 * v2 + (a22 - 1.0) * v2 * v2);
  return kent_d2_const(a11, a12, a22) / (br * br);
}

EuclideanCauchy pushforward_euclid(const MoebiusChain& chain, const EuclideanCauchy& dist) {
  return EuclideanCauchy(chain_apply_param(chain, dist.theta()));
}

SphericalCauchy pushforward_sphere(const SphereMoebius& s, const SphericalCauchy& dist) {
  const Eigen::Index n = s.ambient_dim();
  if (dist.is_uniform()) return SphericalCauchy(s.rotation().matrix() * s.phi());
  const ExtendedPoint img = sphere_moebius_apply(s, ExtendedPoint(dist.phi()));
  if (img.is_infinite()) return SphericalCauchy::uniform(n - 1);
  return SphericalCauchy(img.coords());
}

SphericalCauchy transport_to_sphere(const EuclideanCauchy& dist) {
  const ExtendedPoint img = inv_stereographic_ext(dist.theta());
  return SphericalCauchy(img.coords());  // canonical theta never hits -i
}

EuclideanCauchy transport_to_euclid(const SphericalCauchy& dist) {
  if (dist.is_uniform())
    return EuclideanCauchy(Vec::Zero(dist.sphere_dim()), 1.0);  // standard Cauchy
  return EuclideanCauchy(stereographic(ExtendedPoint(dist.phi())));
}

}  // namespace mcauchy
