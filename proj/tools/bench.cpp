// Timing harness comparing the OpenMP kernels against their serial
// reference paths. Outputs one line per kernel with both timings and the
// max absolute difference (expected: exactly zero).
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcauchy/batch.hpp"
#include "mcauchy/sampling.hpp"

using namespace mcauchy;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = clock_type::now();
  f();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, double maxdiff) {
  std::printf("%-28s serial %8.1f ms   parallel %8.1f ms   speedup %5.2fx   maxdiff %g\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms, maxdiff);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif

  const Eigen::Index n_pdf = 2000000;
  const Eigen::Index n_sample = 1000000;

  Vec phi(3);
  phi << 0.6, 0.1, -0.2;
  const Mat ys = sample_uniform_sphere(2, n_pdf, RngStream{1, 0}, ExecPolicy::Parallel);

  {
    const SphericalCauchy dist(phi);
    Vec a, b;
    const double ts = time_ms([&] { a = batch_log_pdf_sphere(dist, ys, ExecPolicy::Serial); });
    const double tp = time_ms([&] { b = batch_log_pdf_sphere(dist, ys, ExecPolicy::Parallel); });
    report("log-pdf sphere-cauchy", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  {
    Vec mu(2);
    mu << 0.2, -0.1;
    Mat L(2, 2);
    L << 0.4, 0.1, 0.0, 0.7;
    const KentTypeCauchy dist(mu, L);
    Vec a, b;
    const double ts = time_ms([&] { a = batch_log_pdf_kent(dist, ys, ExecPolicy::Serial); });
    const double tp = time_ms([&] { b = batch_log_pdf_kent(dist, ys, ExecPolicy::Parallel); });
    report("log-pdf kent", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  {
    Mat a, b;
    const double ts =
        time_ms([&] { a = sample_sphere_cauchy(phi, n_sample, RngStream{2, 0}, ExecPolicy::Serial); });
    const double tp = time_ms(
        [&] { b = sample_sphere_cauchy(phi, n_sample, RngStream{2, 0}, ExecPolicy::Parallel); });
    report("sample sphere-cauchy", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  {
    Mat a, b;
    const double ts = time_ms([&] {
      a = sample_euclid_cauchy(ExtendedComplex(Vec::Zero(2), 1.0), n_sample, RngStream{3, 0},
                               ExecPolicy::Serial);
    });
    const double tp = time_ms([&] {
      b = sample_euclid_cauchy(ExtendedComplex(Vec::Zero(2), 1.0), n_sample, RngStream{3, 0},
                               ExecPolicy::Parallel);
    });
    report("sample euclid-cauchy", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  {
    Vec mu(2);
    mu << 0.3, 0.1;
    Mat L(2, 2);
    L << 0.3, 0.0, 0.0, 0.5;
    const KentTypeCauchy dist(mu, L);
    auto f = [&](const Vec& y) { return dist.pdf(y); };
    const QuadratureSpec spec{QuadratureDomain::sphere(), 256, 1e-12};
    double a = 0, b = 0;
    const double ts = time_ms([&] { a = integrate(f, spec, ExecPolicy::Serial); });
    const double tp = time_ms([&] { b = integrate(f, spec, ExecPolicy::Parallel); });
    report("quadrature kent on S^2", ts, tp, std::abs(a - b));
  }
  return 0;
}
