#pragma once

#include "mcauchy/densities.hpp"
#include "mcauchy/oracle.hpp"

namespace mcauchy {

// Batch log-density kernels: data-parallel loops over point sets (rows).
// The Parallel policy splits rows across OpenMP threads; outputs are
// bit-identical to Serial because rows are independent. The *_ref variants
// are the plain one-point-at-a-time reference loops kept for testing.

Vec batch_log_pdf_euclid(const EuclideanCauchy& dist, const Mat& points,
                         ExecPolicy policy = ExecPolicy::Serial);
Vec batch_log_pdf_euclid_ref(const EuclideanCauchy& dist, const Mat& points);

Vec batch_log_pdf_sphere(const SphericalCauchy& dist, const Mat& unit_rows,
                         ExecPolicy policy = ExecPolicy::Serial);
Vec batch_log_pdf_sphere_ref(const SphericalCauchy& dist, const Mat& unit_rows);

Vec batch_log_pdf_kent(const KentTypeCauchy& dist, const Mat& unit_rows,
                       ExecPolicy policy = ExecPolicy::Serial);
Vec batch_log_pdf_kent_ref(const KentTypeCauchy& dist, const Mat& unit_rows);

}  // namespace mcauchy
