#pragma once

#include <vector>

#include "mcauchy/geometry.hpp"

namespace mcauchy {

// Moebius map on the extended space R^d u {inf}:
//   x -> A (gamma (x+a)/|x+a|^eps + b),  eps in {0,2}.
// eps = 0 gives the affine subgroup, eps = 2 the inversion-carrying maps.
// Conventions at the special points: for eps = 0, -a -> Ab and inf -> inf;
// for eps = 2, -a -> inf and inf -> Ab (the limit of the formula; see README
// notes on conventions).
struct MoebiusMap {
  Mat A;
  double gamma;
  Vec a;
  Vec b;
  int epsilon;

  MoebiusMap(Mat A_, double gamma_, Vec a_, Vec b_, int epsilon_);
  Eigen::Index dim() const { return a.size(); }

  static MoebiusMap identity(Eigen::Index d);
  static MoebiusMap inversion(Eigen::Index d);           // x -> x/|x|^2
  static MoebiusMap shift(const Vec& a);                 // x -> x + a
  static MoebiusMap scale(Eigen::Index d, double gamma); // x -> gamma x
  static MoebiusMap orthogonal(const Mat& A);            // x -> A x
};

ExtendedPoint moebius_apply(const MoebiusMap& m, const ExtendedPoint& x);

// The same group element acting on theta = mu + i*sigma through the lift to
// R^{d+1} with block-orthogonal diag(A,1) and a,b padded by a zero last
// coordinate. Reduces to moebius_apply when sigma = 0. Result is canonical
// (sigma >= 0).
ExtendedComplex moebius_apply_param(const MoebiusMap& m, const ExtendedComplex& theta);

// General compositions are stored as chains; only the sphere subgroup below
// has a closed composition law. maps.back() applies first (right-to-left).
class MoebiusChain {
 public:
  explicit MoebiusChain(std::vector<MoebiusMap> maps);
  explicit MoebiusChain(MoebiusMap map);

  const std::vector<MoebiusMap>& maps() const { return maps_; }
  Eigen::Index dim() const { return maps_.front().dim(); }

 private:
  std::vector<MoebiusMap> maps_;
};

MoebiusChain chain_compose(const MoebiusChain& outer, const MoebiusChain& inner);
ExtendedPoint chain_apply(const MoebiusChain& c, const ExtendedPoint& x);
ExtendedComplex chain_apply_param(const MoebiusChain& c, const ExtendedComplex& theta);

// Distance from x to the nearest point where some stage of the chain blows
// up (finite-difference probes must keep clear of these). Infinity-valued
// intermediates count as distance 0.
double chain_singularity_distance(const MoebiusChain& c, const Vec& x);

// Sphere Moebius transformation of R^{d+1} u {inf}, mapping S^d onto itself:
//   x -> R { (1-|phi|^2)/|x~+phi|^2 (x~+phi) + phi },  x~ = x/|x|^2,
// with 0 -> R phi, -phi/|phi|^2 -> inf, inf -> R phi/|phi|^2.
// |phi| = 1 is rejected (the map degenerates to a point).
class SphereMoebius {
 public:
  SphereMoebius(Rotation R, Vec phi);

  const Rotation& rotation() const { return rot_; }
  const Vec& phi() const { return phi_; }
  Eigen::Index ambient_dim() const { return phi_.size(); }  // = d+1
  static SphereMoebius identity(Eigen::Index ambient_dim);

 private:
  Rotation rot_;
  Vec phi_;
};

ExtendedPoint sphere_moebius_apply(const SphereMoebius& s, const ExtendedPoint& x);

// Restriction to the sphere: unit-norm input, unit-norm output.
Vec sphere_moebius_apply_unit(const SphereMoebius& s, const Vec& y);

// Closed-form composition (s2 after s1). The underlying algebra works in the
// inverted parameterization phi~ = phi/|phi|^2; this converts in and out.
// The branch phi2~ = -R1 phi1~ composes to a pure rotation (R2 R1, 0).
SphereMoebius sphere_moebius_compose(const SphereMoebius& s2, const SphereMoebius& s1);

// Inverse via the factorization s = (R,0) o (I,phi): returns (R', -R phi).
SphereMoebius sphere_moebius_invert(const SphereMoebius& s);

// Inverse stereographic projection R^d u {inf} -> S^d in R^{d+1};
// inf -> e_{d+1}, so the north pole is the image of infinity.
Vec inv_stereographic(const ExtendedPoint& x);

// Extension acting on theta = mu + i*sigma:
//   theta -> 2/|theta+i|^2 (mu_1..mu_d, (|theta|^2-1)/2),
// with -i -> inf and inf -> e_{d+1}. Restricted to sigma = 0 this is
// inv_stereographic; as a self-map of R^{d+1} it is a Moebius transformation.
ExtendedPoint inv_stereographic_ext(const ExtendedComplex& theta);

// Exact inverse of inv_stereographic_ext. Unit vectors come back with
// sigma = 0 (the classic chart y -> y_{1..d}/(1 - y_{d+1})).
ExtendedComplex stereographic(const ExtendedPoint& y);

}  // namespace mcauchy
