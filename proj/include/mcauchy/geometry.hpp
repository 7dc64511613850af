#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "mcauchy/errors.hpp"

namespace mcauchy {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kOrthoTol = 1e-12;

// A point of the extended Euclidean space: a finite vector or the point at
// infinity. Infinity is a tagged state, never an IEEE special value; every
// map pattern-matches on it before touching coordinates.
class ExtendedPoint {
 public:
  explicit ExtendedPoint(Vec coords);
  static ExtendedPoint infinity(Eigen::Index dim);

  bool is_infinite() const { return infinite_; }
  const Vec& coords() const;
  Eigen::Index dim() const { return dim_; }

 private:
  ExtendedPoint(Eigen::Index dim, bool infinite) : dim_(dim), infinite_(infinite) {}
  Vec coords_;
  Eigen::Index dim_;
  bool infinite_;
};

// theta = mu + i*sigma, mu in R^d, sigma real, plus a point at infinity.
// As a Cauchy parameter, sigma and -sigma are identified; canonical() maps to
// the sigma >= 0 representative. The sign is kept at construction because the
// stereographic maps distinguish it (they act on the full space, not on the
// identified parameter space).
class ExtendedComplex {
 public:
  ExtendedComplex(Vec mu, double sigma);
  static ExtendedComplex infinity(Eigen::Index dim);

  bool is_infinite() const { return infinite_; }
  const Vec& mu() const;
  double sigma() const;
  Eigen::Index dim() const { return dim_; }

  ExtendedComplex canonical() const;
  double norm() const;  // sqrt(|mu|^2 + sigma^2)

  ExtendedComplex shifted(const Vec& a) const;   // theta + a
  ExtendedComplex scaled(double gamma) const;    // gamma * theta
  ExtendedComplex rotated(const Mat& A) const;   // A*mu + i*sigma, A orthogonal

 private:
  ExtendedComplex(Eigen::Index dim, bool infinite) : dim_(dim), infinite_(infinite) {}
  Vec mu_;
  double sigma_ = 0.0;
  Eigen::Index dim_;
  bool infinite_;
};

// d x d rotation matrix, validated at construction: R R' = I and det R = +1,
// both within 1e-12. Composition drift is caught here rather than downstream.
class Rotation {
 public:
  explicit Rotation(Mat m);
  static Rotation identity(Eigen::Index d);

  const Mat& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  Rotation transposed() const;
  Rotation compose(const Rotation& other) const;  // this * other

 private:
  Mat m_;
};

// x -> x/|x|^2 on the extended space; 0 and infinity swap.
ExtendedPoint invert_point(const ExtendedPoint& x);

// T_phi x with T_phi = 2 phi phi'/|phi|^2 - I. An involution; preserves norm.
Vec reflect(const Vec& phi, const Vec& x);

// Reflection applied to a full matrix from the left, i.e. T_phi * M, without
// forming T_phi.
Mat reflect_matrix(const Vec& phi, const Mat& m);

// A * (gamma * (theta + a)), result canonicalized to sigma >= 0.
ExtendedComplex ext_param_transform(const ExtendedComplex& theta, const Vec& a,
                                    double gamma, const Mat& A);

// Haar-distributed rotation, deterministic in the seed (QR of a Gaussian
// matrix with sign fixing, one column flip to land in SO(d)).
Rotation random_rotation(Eigen::Index d, std::uint64_t seed);

bool is_orthogonal(const Mat& m, double tol = kOrthoTol);

}  // namespace mcauchy
