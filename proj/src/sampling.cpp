#include "mcauchy/sampling.hpp"

#include <cmath>

namespace mcauchy {

namespace {

std::uint64_t stride_for(int d) { return static_cast<std::uint64_t>(d + 2) / 2; }

Vec uniform_sphere_variate(int d, const RngStream& rng, std::uint64_t base) {
  Vec x(d + 1);
  Eigen::Index k = 0;
  std::uint64_t c = base;
  while (k < d + 1) {
    const auto [z1, z2] = philox::normals_at(rng, c++);
    x(k++) = z1;
    if (k < d + 1) x(k++) = z2;
  }
  const double nrm = x.norm();
  if (nrm == 0.0) throw singular_input("sample_uniform_sphere: zero normal vector");
  return x / nrm;
}

void check_n(Eigen::Index n) {
  if (n < 0) throw invalid_parameter("samplers: n must be >= 0");
}

template <typename PerVariate>
Mat fill_rows(Eigen::Index n, Eigen::Index cols, ExecPolicy policy, PerVariate&& body) {
  Mat out(n, cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::Parallel)
  for (Eigen::Index i = 0; i < n; ++i) out.row(i) = body(i);
#else
  (void)policy;
  for (Eigen::Index i = 0; i < n; ++i) out.row(i) = body(i);
#endif
  return out;
}

}  // namespace

Mat sample_uniform_sphere(int d, Eigen::Index n, const RngStream& rng, ExecPolicy policy) {
  if (d < 1) throw invalid_parameter("sample_uniform_sphere: d must be >= 1");
  check_n(n);
  const std::uint64_t stride = stride_for(d);
  return fill_rows(n, d + 1, policy,
                   [&](Eigen::Index i) { return uniform_sphere_variate(d, rng, i * stride); });
}

Mat sample_sphere_cauchy(const Vec& phi, Eigen::Index n, const RngStream& rng,
                         ExecPolicy policy) {
  const int d = static_cast<int>(phi.size()) - 1;
  if (d < 1) throw invalid_parameter("sample_sphere_cauchy: phi must have length d+1 >= 2");
  check_n(n);
  if (std::abs(phi.norm() - 1.0) <= 1e-12)
    throw domain_error("sample_sphere_cauchy: |phi| = 1 is a point mass");
  const SphereMoebius map(Rotation::identity(d + 1), phi);
  const std::uint64_t stride = stride_for(d);
  return fill_rows(n, d + 1, policy, [&](Eigen::Index i) {
    return sphere_moebius_apply_unit(map, uniform_sphere_variate(d, rng, i * stride));
  });
}

Mat sample_euclid_cauchy(const ExtendedComplex& theta, Eigen::Index n, const RngStream& rng,
                         ExecPolicy policy) {
  if (theta.is_infinite() || theta.sigma() == 0.0)
    throw domain_error("sample_euclid_cauchy: requires sigma > 0");
  const ExtendedComplex t = theta.canonical();
  const int d = static_cast<int>(t.dim());
  check_n(n);
  const std::uint64_t stride = stride_for(d);
  return fill_rows(n, d, policy, [&](Eigen::Index i) -> Vec {
    const Vec u = uniform_sphere_variate(d, rng, i * stride);
    const ExtendedComplex z = stereographic(ExtendedPoint(u));  // sigma = 0 on the sphere
    if (z.is_infinite())
      throw singular_input("sample_euclid_cauchy: variate hit the projection pole");
    return t.mu() + t.sigma() * z.mu();
  });
}

Vec kent_map(const Vec& mu, const Mat& L, const Vec& u) {
  const Eigen::Index d = mu.size();
  if (u.size() != d + 1) throw invalid_parameter("kent_map: dimension mismatch");
  const ExtendedPoint img = inv_stereographic_ext(ExtendedComplex(u.head(d), u(d)));
  Vec y(d + 1);
  if (img.is_infinite()) {  // u at the chart pole; the map fixes it
    y.setZero();
    y(d) = -1.0;
    return y;
  }
  const Vec q = mu + L * img.coords().head(d);
  Vec q1(d + 1);
  q1.head(d) = q;
  q1(d) = 0.0;
  const ExtendedComplex back = stereographic(ExtendedPoint(q1));
  y.head(d) = back.mu();
  y(d) = back.sigma();
  return y;
}

Mat sample_kent(const Vec& mu, const Mat& L, Eigen::Index n, const RngStream& rng,
                ExecPolicy policy) {
  const int d = static_cast<int>(mu.size());
  if (d < 1) throw invalid_parameter("sample_kent: dimension must be >= 1");
  if (L.rows() != d || L.cols() != d) throw invalid_parameter("sample_kent: L must be d x d");
  Eigen::FullPivLU<Mat> lu(L);
  if (!lu.isInvertible()) throw domain_error("sample_kent: L must be invertible");
  check_n(n);
  const std::uint64_t stride = stride_for(d);
  return fill_rows(n, d + 1, policy, [&](Eigen::Index i) {
    return kent_map(mu, L, uniform_sphere_variate(d, rng, i * stride));
  });
}

Vec sample_marginal(double varphi, int nu, Eigen::Index n, const RngStream& rng,
                    ExecPolicy policy) {
  if (nu < 1) throw invalid_parameter("sample_marginal: nu must be a positive integer");
  if (std::abs(std::abs(varphi) - 1.0) <= 1e-12)
    throw domain_error("sample_marginal: |varphi| = 1 is a point mass");
  Vec phi = Vec::Zero(nu + 1);
  phi(0) = varphi;
  return sample_sphere_cauchy(phi, n, rng, policy).col(0);
}

}  // namespace mcauchy
