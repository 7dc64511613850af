#pragma once

#include <stdexcept>
#include <string>

namespace mcauchy {

// Invalid flag/argument values (bad dimension, epsilon outside {0,2}, ...).
class invalid_parameter : public std::invalid_argument {
 public:
  explicit invalid_parameter(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Density requested for a point-mass / singular parameter regime.
class density_undefined : public domain_error {
 public:
  explicit density_undefined(const std::string& msg) : domain_error(msg) {}
};

// Evaluation point coincides with a singularity of the map/density.
class singular_input : public domain_error {
 public:
  explicit singular_input(const std::string& msg) : domain_error(msg) {}
};

// Iterative scheme exhausted its budget without reaching tolerance.
class non_convergence : public std::runtime_error {
 public:
  explicit non_convergence(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mcauchy
