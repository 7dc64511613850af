#pragma once

#include <string>
#include <vector>

#include "mcauchy/oracle.hpp"

namespace mcauchy {

struct CheckResult {
  std::string check;
  double value;      // worst observed error (or statistic)
  double tolerance;  // bound the value must not exceed
  bool pass;
};

// The full oracle-backed acceptance suite. Deterministic in cfg.seed.
std::vector<CheckResult> run_acceptance(const OracleConfig& cfg = {});

// Individual criteria (each may emit several rows).
namespace checks {
std::vector<CheckResult> normalization(const OracleConfig& cfg);
std::vector<CheckResult> euclid_closure(const OracleConfig& cfg);
std::vector<CheckResult> sphere_closure(const OracleConfig& cfg);
std::vector<CheckResult> stereographic_transport(const OracleConfig& cfg);
std::vector<CheckResult> sphere_composition(const OracleConfig& cfg);
std::vector<CheckResult> moments_closed_forms(const OracleConfig& cfg);
std::vector<CheckResult> mle_three_points(const OracleConfig& cfg);
std::vector<CheckResult> mle_two_points(const OracleConfig& cfg);
std::vector<CheckResult> stationary_checks(const OracleConfig& cfg);
std::vector<CheckResult> equivariance(const OracleConfig& cfg);
std::vector<CheckResult> samplers(const OracleConfig& cfg);
std::vector<CheckResult> kent_checks(const OracleConfig& cfg);
std::vector<CheckResult> marginal_closure(const OracleConfig& cfg);
}  // namespace checks

}  // namespace mcauchy
