#include "mcauchy/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mcauchy/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcauchy {

QuadratureDomain QuadratureDomain::interval(double lo, double hi) {
  QuadratureDomain d{Kind::Interval, Vec(1), Vec(1)};
  d.a(0) = lo;
  d.b(0) = hi;
  return d;
}
QuadratureDomain QuadratureDomain::rectangle(double x0, double x1, double y0, double y1) {
  QuadratureDomain d{Kind::Rectangle, Vec(2), Vec(2)};
  d.a << x0, y0;
  d.b << x1, y1;
  return d;
}
QuadratureDomain QuadratureDomain::circle() { return {Kind::CircleS1, Vec(), Vec()}; }
QuadratureDomain QuadratureDomain::sphere() { return {Kind::SphereS2, Vec(), Vec()}; }
QuadratureDomain QuadratureDomain::lambert_disk() { return {Kind::LambertDisk, Vec(), Vec()}; }

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

namespace {

double pairwise_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_range(v, half) + pairwise_range(v + half, n - half);
}

// Evaluate f over a node list and sum pairwise. The summation tree depends
// only on the node count, so serial and parallel runs agree bitwise.
double eval_and_sum(const std::function<double(const Vec&)>& f, const std::vector<Vec>& pts,
                    const std::vector<double>& w, ExecPolicy policy) {
  const std::size_t n = pts.size();
  std::vector<double> vals(n);
  if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
      vals[i] = w[i] * f(pts[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) vals[i] = w[i] * f(pts[i]);
  }
  return pairwise_range(vals.data(), n);
}

void build_nodes(const QuadratureDomain& dom, int order, std::vector<Vec>& pts,
                 std::vector<double>& wts) {
  pts.clear();
  wts.clear();
  std::vector<double> gx, gw;
  switch (dom.kind) {
    case QuadratureDomain::Kind::Interval: {
      gauss_legendre(order, gx, gw);
      const double c = 0.5 * (dom.a(0) + dom.b(0)), h = 0.5 * (dom.b(0) - dom.a(0));
      for (int i = 0; i < order; ++i) {
        Vec p(1);
        p(0) = c + h * gx[i];
        pts.push_back(p);
        wts.push_back(h * gw[i]);
      }
      break;
    }
    case QuadratureDomain::Kind::Rectangle: {
      gauss_legendre(order, gx, gw);
      const double cx = 0.5 * (dom.a(0) + dom.b(0)), hx = 0.5 * (dom.b(0) - dom.a(0));
      const double cy = 0.5 * (dom.a(1) + dom.b(1)), hy = 0.5 * (dom.b(1) - dom.a(1));
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
          Vec p(2);
          p << cx + hx * gx[i], cy + hy * gx[j];
          pts.push_back(p);
          wts.push_back(hx * hy * gw[i] * gw[j]);
        }
      break;
    }
    case QuadratureDomain::Kind::CircleS1: {
      // Trapezoid rule on a periodic integrand is spectrally accurate; the
      // half-step offset keeps the axis points (stereographic pole) off the
      // node grid.
      const double h = 2.0 * M_PI / order;
      for (int i = 0; i < order; ++i) {
        const double a = (i + 0.5) * h - M_PI;
        Vec p(2);
        p << std::cos(a), std::sin(a);
        pts.push_back(p);
        wts.push_back(h);
      }
      break;
    }
    case QuadratureDomain::Kind::SphereS2: {
      // Gauss-Legendre in cos(colatitude) x trapezoid in longitude.
      gauss_legendre(order, gx, gw);
      const int nlon = 2 * order;
      const double h = 2.0 * M_PI / nlon;
      for (int i = 0; i < order; ++i) {
        const double ct = gx[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < nlon; ++j) {
          const double a = (j + 0.5) * h - M_PI;
          Vec p(3);
          p << st * std::cos(a), st * std::sin(a), ct;
          pts.push_back(p);
          wts.push_back(gw[i] * h);
        }
      }
      break;
    }
    case QuadratureDomain::Kind::LambertDisk: {
      // Polar coordinates over radius [0,2] with the rho weight.
      gauss_legendre(order, gx, gw);
      const int nang = 2 * order;
      const double h = 2.0 * M_PI / nang;
      for (int i = 0; i < order; ++i) {
        const double rho = 1.0 + gx[i];  // [0,2]
        for (int j = 0; j < nang; ++j) {
          Vec p(2);
          p << rho * std::cos(j * h - M_PI), rho * std::sin(j * h - M_PI);
          pts.push_back(p);
          wts.push_back(gw[i] * rho * h);
        }
      }
      break;
    }
  }
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) { return pairwise_range(v.data(), v.size()); }

double integrate(const std::function<double(const Vec&)>& f, const QuadratureSpec& spec,
                 ExecPolicy policy) {
  if (spec.order < 8) throw invalid_parameter("integrate: order must be >= 8");
  if (!(spec.tol > 0)) throw invalid_parameter("integrate: tol must be positive");
  std::vector<Vec> pts;
  std::vector<double> wts;
  int order = spec.order;
  build_nodes(spec.domain, order, pts, wts);
  double prev = eval_and_sum(f, pts, wts, policy);
  while (2 * order <= 8192) {
    order *= 2;
    build_nodes(spec.domain, order, pts, wts);
    const double cur = eval_and_sum(f, pts, wts, policy);
    if (std::abs(cur - prev) < spec.tol) return cur;
    prev = cur;
  }
  throw non_convergence("integrate: Richardson doubling did not reach tolerance");
}

double integrate_rd(const std::function<double(const Vec&)>& f, int d, double tol) {
  if (d != 1 && d != 2) throw invalid_parameter("integrate_rd: only d = 1, 2 supported");
  // Pull back along y -> y_{1..d}/(1-y_{d+1}); the chart factor is
  // (1-y_{d+1})^{-d} and the pole itself contributes nothing for decaying f.
  auto pulled = [&](const Vec& y) {
    const double t = 1.0 - y(d);
    if (t <= 1e-14) return 0.0;
    const Vec x = y.head(d) / t;
    return f(x) / std::pow(t, d);
  };
  QuadratureSpec spec{d == 1 ? QuadratureDomain::circle() : QuadratureDomain::sphere(), 64, tol};
  return integrate(pulled, spec);
}

namespace {

double det_fd_at(const std::function<Vec(const Vec&)>& map, const Vec& x, double h) {
  const Eigen::Index n = x.size();
  Mat J(map(x).size(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    J.col(j) = (map(xp) - map(xm)) / (2.0 * h);
  }
  if (J.rows() != J.cols()) throw invalid_parameter("jacobian_det_fd: map must preserve dimension");
  return std::abs(J.determinant());
}

}  // namespace

double jacobian_det_fd(const std::function<Vec(const Vec&)>& map, const Vec& x, double h,
                       double singularity_dist) {
  if (singularity_dist < 10.0 * h)
    throw singular_input("jacobian_det_fd: evaluation point too close to a singularity");
  const double d1 = det_fd_at(map, x, h);
  const double d2 = det_fd_at(map, x, h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

Mat tangent_basis(const Vec& y) {
  const Eigen::Index n = y.size();
  // Householder reflection taking y to +-e_1; its remaining columns span the
  // tangent space. Deterministic in y.
  Vec w = y;
  w(0) += (y(0) >= 0 ? 1.0 : -1.0) * y.norm();
  const double wn2 = w.squaredNorm();
  Mat H = Mat::Identity(n, n);
  if (wn2 > 0) H -= 2.0 / wn2 * (w * w.transpose());
  return H.rightCols(n - 1);
}

double jacobian_det_fd_sphere(const std::function<Vec(const Vec&)>& map, const Vec& y, double h) {
  const Eigen::Index n = y.size();
  const Mat T = tangent_basis(y);
  const Mat Timg = tangent_basis(map(y).normalized());
  auto chart = [&](const Vec& u) -> Vec {
    Vec z = y + T * u;
    z.normalize();
    return Timg.transpose() * map(z);
  };
  const Vec u0 = Vec::Zero(n - 1);
  const double d1 = det_fd_at(chart, u0, h);
  const double d2 = det_fd_at(chart, u0, h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

namespace {

// Standard Nelder-Mead on a maximization objective (internally minimizes -f).
ArgmaxResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0, int budget,
                         double tol, double scale) {
  const Eigen::Index n = x0.size();
  int evals = 0;
  auto neg = [&](const Vec& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? -v : std::numeric_limits<double>::infinity();
  };
  std::vector<Vec> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) simplex[i + 1](i) += scale;
  for (Eigen::Index i = 0; i <= n; ++i) fv[i] = neg(simplex[i]);

  auto order = [&] {
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<Vec> s2(n + 1);
    std::vector<double> f2(n + 1);
    for (int i = 0; i <= n; ++i) {
      s2[i] = simplex[idx[i]];
      f2[i] = fv[idx[i]];
    }
    simplex.swap(s2);
    fv.swap(f2);
  };

  order();
  while (evals < budget) {
    if (std::abs(fv[n] - fv[0]) < tol * (std::abs(fv[0]) + tol)) break;
    Vec centroid = Vec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Vec xr = centroid + (centroid - simplex[n]);
    const double fr = neg(xr);
    if (fr < fv[0]) {
      const Vec xe = centroid + 2.0 * (centroid - simplex[n]);
      const double fe = neg(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
    } else {
      const Vec xc = centroid + 0.5 * (simplex[n] - centroid);
      const double fc = neg(xc);
      if (fc < fv[n]) {
        simplex[n] = xc;
        fv[n] = fc;
      } else {
        for (Eigen::Index i = 1; i <= n; ++i) {
          simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
          fv[i] = neg(simplex[i]);
        }
      }
    }
    order();
  }
  return {simplex[0], -fv[0], evals < budget, evals};
}

}  // namespace

ArgmaxResult numeric_argmax(const std::function<double(const Vec&)>& f, const Vec& x0, int budget,
                            int restarts, std::uint64_t seed, double tol) {
  SequentialRng rng(seed, 0x617267);
  ArgmaxResult best{x0, -std::numeric_limits<double>::infinity(), false, 0};
  const int per_run = std::max(100, budget / std::max(1, restarts + 1));
  int used = 0;
  for (int r = 0; r <= restarts && used < budget; ++r) {
    Vec start = r == 0 ? x0 : best.x;
    double scale = 0.5;
    if (r > 0) {
      for (Eigen::Index i = 0; i < start.size(); ++i) start(i) += rng.uniform(-0.5, 0.5);
      scale = 0.1 + 0.4 * rng.uniform();
    }
    ArgmaxResult res = nelder_mead(f, start, std::min(per_run, budget - used), tol, scale);
    used += res.evals;
    if (res.value > best.value) {
      best.x = res.x;
      best.value = res.value;
      best.converged = res.converged;
    }
  }
  best.evals = used;
  return best;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw invalid_parameter("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max(d, std::max(F - i / n, (i + 1) / n - F));
  }
  return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw invalid_parameter("ks_statistic_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace mcauchy
