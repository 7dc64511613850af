#include "mcauchy/moments.hpp"

#include <cmath>
#include <vector>

#include "mcauchy/errors.hpp"
#include "mcauchy/oracle.hpp"

namespace mcauchy {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxTerms = 1000000;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Raw series at 0 <= z < 1 (or any |z| < 1 when it terminates).
double series_2f1(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0, comp = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    if (term == 0.0) return sum + comp;
    // Kahan update keeps the long slowly-decaying tails honest.
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < kRelTol * std::abs(sum) && k > 2) return sum + comp;
  }
  throw non_convergence("hyp2f1: series did not converge within the term cap");
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
  if (!(z < 1.0)) throw domain_error("hyp2f1: requires z < 1");
  if (is_nonpositive_integer(c) &&
      !((is_nonpositive_integer(a) && a > c) || (is_nonpositive_integer(b) && b > c)))
    throw invalid_parameter("hyp2f1: c is a nonpositive integer");
  if (z == 0.0) return 1.0;
  // Terminating cases are polynomials; evaluate directly.
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series_2f1(a, b, c, z);
  if (z < 0.0) {
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)), argument in (0,1).
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w);
  }
  return series_2f1(a, b, c, z);
}

double hyp2f1(const Hyp2F1Args& args) { return hyp2f1(args.a, args.b, args.c, args.z); }

double hyp2f1_integral(double a, double b, double c, double z) {
  if (!(c > b && b > 0.0)) throw domain_error("hyp2f1_integral: needs c > b > 0");
  if (!(z < 1.0)) throw domain_error("hyp2f1_integral: requires z < 1");
  // Euler integral over (0,1) with algebraic endpoint singularities; a
  // tanh-sinh rule absorbs those. t and 1-t are tracked through logistic
  // forms so the tails keep full relative precision, and the weight's
  // t(1-t) factor regularizes both endpoints for positive b, c-b.
  auto term = [&](double u) {
    const double x = M_PI * std::sinh(u);  // 2 * (pi/2) sinh(u)
    const double t = 1.0 / (1.0 + std::exp(-x));
    const double omt = 1.0 / (1.0 + std::exp(x));
    if (t == 0.0 || omt == 0.0) return 0.0;
    return M_PI * std::cosh(u) * std::pow(t, b) * std::pow(omt, c - b) *
           std::pow(1.0 - t * z, -a);
  };
  double prev = 0.0;
  for (int level = 2; level <= 10; ++level) {
    const double h = 1.0 / (1 << level);
    double sum = 0.0;
    for (int k = -5 * (1 << level); k <= 5 * (1 << level); ++k) sum += h * term(k * h);
    if (level > 3 && std::abs(sum - prev) < 1e-13 * std::max(1.0, std::abs(sum)))
      return std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b)) * sum;
    prev = sum;
  }
  throw non_convergence("hyp2f1_integral: tanh-sinh levels exhausted");
}

namespace {

double log_ratio(double p) { return std::log1p(p) - std::log1p(-p); }  // log((1+p)/(1-p))

// Closed forms for integer nu.
double mu1_closed(int nu, double p) {
  const double p2 = p * p;
  switch (nu) {
    case 1:
      return p;
    case 2:
      return (1.0 + p2) / (2.0 * p) *
             (1.0 - (1.0 - p2) * (1.0 - p2) / (2.0 * p * (1.0 + p2)) * log_ratio(p));
    case 3:
      return p * (3.0 - p2) / 2.0;
    case 4: {
      const double q = 1.0 - p2;
      return (1.0 + p2) / (2.0 * p) *
             (1.0 - 3.0 * q * q / (8.0 * p2) +
              3.0 * q * q * q * q / (16.0 * p2 * p * (1.0 + p2)) * log_ratio(p));
    }
    default:
      throw invalid_parameter("mu1_closed: only nu = 1..4");
  }
}

double mu2_closed(int nu, double p) {
  const double p2 = p * p;
  switch (nu) {
    case 1:
      return (1.0 + p2) / 2.0;
    case 2: {
      const double q = 1.0 - p2;
      return (1.0 + p2) / (4.0 * p2) *
             (2.0 * (1.0 + p2 * p2) / (1.0 + p2) - q * q / p * log_ratio(p));
    }
    case 3:
      return (1.0 + 6.0 * p2 - 3.0 * p2 * p2) / 4.0;
    case 4: {
      const double q = 1.0 - p2;
      const double poly =
          3.0 - 8.0 * p2 + 2.0 * p2 * p2 - 8.0 * p2 * p2 * p2 + 3.0 * p2 * p2 * p2 * p2;
      return (1.0 + p2) / (16.0 * p2 * p2) *
             (-2.0 * poly / (1.0 + p2) + 3.0 * q * q * q * q / p * log_ratio(p));
    }
    default:
      throw invalid_parameter("mu2_closed: only nu = 1..4");
  }
}

// Hypergeometric expressions, both displayed forms of the mean.
double mu1_2f1_form1(double nu, double p) {
  const double z = -4.0 * p / ((1.0 - p) * (1.0 - p));
  const double f = hyp2f1(1.0, nu / 2.0, nu, z);
  return (1.0 + p * p) / (2.0 * p) * (1.0 - (1.0 + p) * (1.0 + p) / (1.0 + p * p) * f);
}

double mu1_2f1_form2(double nu, double p) {
  const double q = 1.0 - p * p;
  const double z = -4.0 * p * p / (q * q);
  const double f = hyp2f1(0.5, (nu - 1.0) / 2.0, (nu + 1.0) / 2.0, z);
  return (1.0 + p * p) / (2.0 * p) * (1.0 - q / (1.0 + p * p) * f);
}

double mu2_2f1(double nu, double p) {
  const double z = -4.0 * p / ((1.0 - p) * (1.0 - p));
  const double f1 = hyp2f1(1.0, nu / 2.0, nu, z);
  const double f2 = hyp2f1(2.0, nu / 2.0, nu, z);
  const double p2 = p * p;
  const double w = (1.0 + p) * (1.0 + p);
  return (1.0 + p2) * (1.0 + p2) / (4.0 * p2) *
         (1.0 - 2.0 * w / (1.0 + p2) * f1 + w * w / ((1.0 + p2) * (1.0 + p2)) * f2);
}

// Taylor branches around varphi = 0 (removable singularity of the prefactor).
double mu1_taylor(double nu, double p) {
  return 2.0 * nu * p / (nu + 1.0) -
         2.0 * nu * (nu - 1.0) * p * p * p / ((nu + 1.0) * (nu + 3.0));
}

double mu2_taylor(double nu, double p) {
  const double m2 = 1.0 / (nu + 1.0);
  const double m4 = 3.0 / ((nu + 1.0) * (nu + 3.0));
  const double c2 = 2.0 * nu * (m4 - m2) + 2.0 * nu * nu * m4 - 2.0 * nu * m2 * (m2 - 1.0) -
                    2.0 * nu * nu * m2 * m2;
  return m2 + c2 * p * p;
}

void check_marginal_args(double nu, double p, const char* who) {
  if (!(std::abs(p) < 1.0)) throw domain_error(std::string(who) + ": requires |varphi| < 1");
  if (!(nu > 0.0)) throw domain_error(std::string(who) + ": requires nu > 0");
}

bool is_small_integer(double nu) {
  return nu == std::floor(nu) && nu >= 1.0 && nu <= 4.0;
}

}  // namespace

double marginal_mean_2f1(double nu, double varphi) {
  check_marginal_args(nu, varphi, "marginal_mean_2f1");
  if (varphi == 0.0) return 0.0;
  const double f1 = mu1_2f1_form1(nu, varphi);
  const double f2 = mu1_2f1_form2(nu, varphi);
  if (std::abs(f1 - f2) > 1e-10 * std::max(1.0, std::abs(f1)))
    throw non_convergence("marginal_mean_2f1: the two hypergeometric routes disagree");
  return f2;
}

double marginal_second_moment_2f1(double nu, double varphi) {
  check_marginal_args(nu, varphi, "marginal_second_moment_2f1");
  if (varphi == 0.0) return 1.0 / (nu + 1.0);
  return mu2_2f1(nu, varphi);
}

double marginal_mean(double nu, double varphi) {
  check_marginal_args(nu, varphi, "marginal_mean");
  if (std::abs(varphi) < 1e-4) return mu1_taylor(nu, varphi);
  if (is_small_integer(nu)) return mu1_closed(static_cast<int>(nu), varphi);
  return marginal_mean_2f1(nu, varphi);
}

double marginal_second_moment(double nu, double varphi) {
  check_marginal_args(nu, varphi, "marginal_second_moment");
  if (std::abs(varphi) < 1e-4) return mu2_taylor(nu, varphi);
  if (is_small_integer(nu)) return mu2_closed(static_cast<int>(nu), varphi);
  return marginal_second_moment_2f1(nu, varphi);
}

SphereMoments sphere_mean_scatter(const Vec& phi, int d) {
  if (phi.size() != d + 1) throw invalid_parameter("sphere_mean_scatter: phi must have length d+1");
  const Eigen::Index n = d + 1;
  const double norm = phi.norm();
  if (std::abs(norm - 1.0) <= 1e-12)
    throw domain_error("sphere_mean_scatter: |phi| = 1 is a point mass");
  if (norm == 0.0) return {Vec::Zero(n), Mat::Identity(n, n) / d};
  Vec ph = phi;
  double r = norm;
  if (r > 1.0) {  // same distribution as the inverted parameter
    ph /= r * r;
    r = 1.0 / r;
  }
  const double m1 = marginal_mean(d, r);
  const double m2 = marginal_second_moment(d, r);
  const Vec dir = ph / r;
  Mat scatter = (1.0 - m2) / d * Mat::Identity(n, n);
  scatter += ((d + 1) * m2 - 1.0) / d * (dir * dir.transpose());
  return {m1 * dir, scatter};
}

namespace {

double mu1_of_r(int d, double r) { return marginal_mean(d, r); }

}  // namespace

MomResult mom_estimate(const Mat& sample_rows, int d) {
  if (sample_rows.rows() == 0) throw invalid_parameter("mom_estimate: empty sample");
  if (sample_rows.cols() != d + 1)
    throw invalid_parameter("mom_estimate: points must have length d+1");
  const Vec mean = sample_rows.colwise().mean();
  const double mnorm = mean.norm();
  if (mnorm == 0.0) return {Vec::Zero(d + 1), false};

  // mu_1(d) is expected to be increasing in r; verify on a grid before
  // inverting, and abort loudly if the assumption ever fails.
  const double hi = 1.0 - 1e-9;
  double prev = 0.0;
  for (int i = 1; i <= 64; ++i) {
    const double r = hi * i / 64.0;
    const double v = mu1_of_r(d, r);
    if (v < prev - 1e-12)
      throw non_convergence("mom_estimate: mu_1(d) not monotone on the probe grid");
    prev = v;
  }

  const Vec dir = mean / mnorm;
  if (mnorm >= mu1_of_r(d, hi)) return {hi * dir, true};
  double lo = 0.0, up = hi;
  for (int it = 0; it < 200 && up - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + up);
    (mu1_of_r(d, mid) < mnorm ? lo : up) = mid;
  }
  return {0.5 * (lo + up) * dir, false};
}

MomResult mom_estimate(const std::vector<Vec>& sample, int d) {
  if (sample.empty()) throw invalid_parameter("mom_estimate: empty sample");
  Mat rows(static_cast<Eigen::Index>(sample.size()), d + 1);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample[i].size() != d + 1)
      throw invalid_parameter("mom_estimate: points must have length d+1");
    rows.row(static_cast<Eigen::Index>(i)) = sample[i];
  }
  return mom_estimate(rows, d);
}

}  // namespace mcauchy
