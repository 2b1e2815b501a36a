#pragma once

#include <cstddef>
#include <vector>

#include "fovkit/linalg.hpp"

namespace fov {

struct BoundarySample {
  double theta = 0.0;    // direction, radians in [0, 2pi)
  double support = 0.0;  // lambda_max(Re(e^{-i theta} T))
  Complex point;         // <T x, x> for a top eigenvector x
};

/// Sampled support data of the numerical range W(T), thetas strictly increasing.
struct BoundaryCurve {
  std::vector<BoundarySample> samples;
};

/// (e^{-i theta} T + e^{i theta} T*) / 2, exactly Hermitian.
CMatrix hermitian_part(const CMatrix& t, double theta);

/// Support value of W(T) in direction theta.
double support_value(const CMatrix& t, double theta);

/// Boundary samples of W(T) on a uniform grid of n_angles >= 8 directions.
BoundaryCurve boundary(const CMatrix& t, std::size_t n_angles);

/**
 * Numerical radius w(T) = max over theta of lambda_max(H(theta)).
 *
 * A 256-direction grid locates the peaks; golden-section search then
 * refines the brackets around the three highest local grid maxima until
 * the bracket is narrower than `tol`. The result is never below the grid
 * maximum.
 */
double numerical_radius(const CMatrix& t, double tol = kDefaultTol);

/// Membership of z in the closure of W(T), tested against the support
/// function on a grid of n_angles >= 64 directions.
bool contains(const CMatrix& t, Complex z, double tol = kDefaultTol, std::size_t n_angles = 360);

}  // namespace fov
