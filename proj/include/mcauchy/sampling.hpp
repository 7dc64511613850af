#pragma once

#include "mcauchy/densities.hpp"
#include "mcauchy/oracle.hpp"
#include "mcauchy/rng.hpp"

namespace mcauchy {

// Exact samplers: every variate is a deterministic map of uniform sphere
// variates (normals normalized to the sphere, then pushed through Moebius /
// stereographic maps). No rejection anywhere. Variate i is computed from
// counters [i*stride, (i+1)*stride), so results do not depend on execution
// order and the Parallel policy is bit-identical to Serial.

// n unit vectors on S^d, one per row (d+1 columns).
Mat sample_uniform_sphere(int d, Eigen::Index n, const RngStream& rng,
                          ExecPolicy policy = ExecPolicy::Serial);

// Spherical Cauchy with parameter phi (|phi| != 1): the image of uniform
// variates under the sphere Moebius map with R = I.
Mat sample_sphere_cauchy(const Vec& phi, Eigen::Index n, const RngStream& rng,
                         ExecPolicy policy = ExecPolicy::Serial);

// Cauchy on R^d with theta = mu + i*sigma, sigma > 0: standard variates are
// stereographic images of uniform sphere variates, then shifted and scaled.
Mat sample_euclid_cauchy(const ExtendedComplex& theta, Eigen::Index n, const RngStream& rng,
                         ExecPolicy policy = ExecPolicy::Serial);

// Oval-contour spherical family: uniform variates through the chart map
// u -> chart^{-1}(mu + L chart(u)).
Mat sample_kent(const Vec& mu, const Mat& L, Eigen::Index n, const RngStream& rng,
                ExecPolicy policy = ExecPolicy::Serial);

// First coordinate of a spherical Cauchy on S^nu with phi = varphi * e_1.
Vec sample_marginal(double varphi, int nu, Eigen::Index n, const RngStream& rng,
                    ExecPolicy policy = ExecPolicy::Serial);

// The deterministic map applied per uniform variate by sample_kent; exposed
// for tests of the construction itself.
Vec kent_map(const Vec& mu, const Mat& L, const Vec& u);

}  // namespace mcauchy
