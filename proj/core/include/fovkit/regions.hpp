#pragma once

#include <cstddef>
#include <vector>

#include "fovkit/linalg.hpp"

namespace fov {

// Teardrop td(alpha): convex hull of the closed unit disk and the closed disk
// of centre alpha and radius 1 - |alpha|^2, for |alpha| <= 1.

/// Support function max(1, Re(e^{-i phi} alpha) + 1 - |alpha|^2).
double teardrop_support(Complex alpha, double phi);

/// Largest Re(e^{-i phi} z) - support(phi) over a 720-direction grid plus the
/// directions arg z and arg(z - alpha). Non-positive iff z is in td(alpha) up
/// to the grid.
double teardrop_excess(Complex alpha, Complex z);

bool teardrop_contains(Complex alpha, Complex z, double tol = kDefaultTol);

struct TeardropPoint {
  double phi;  // outward normal direction of the supporting line
  Complex point;
};

/// Boundary of td(alpha) traced counterclockwise: support points on a uniform
/// grid of n directions, plus both endpoints of each common tangent segment
/// (emitted at the same phi) when 0 < |alpha| < 1.
std::vector<TeardropPoint> teardrop_boundary(Complex alpha, std::size_t n);

/// Region S holds the pairs (t, s) with Q(T, t, s) >= 0 whenever w(T) <= 1.
/// Lower boundary of region S at t >= 0 (t^2 - 1/4, 2t - 1, t^2 by branch).
double region_S_boundary(double t);

/// Piecewise membership test for region S; throws NegativeT for t < 0.
bool region_S_contains(double t, double s);

/// Q(T, t, s) = I + t (T + T*) + s T* T, exactly Hermitian.
CMatrix q_form(const CMatrix& t, double t_coeff, double s_coeff);

struct DruryParams {
  Complex omega;  // unimodular
  double t;
  double s;
};

/**
 * Reduction of Re(e^{i theta} phi_alpha(T)) <= I, for real alpha in [0, 1)
 * and cos(theta) <= alpha, to Q(omega T, t, s) >= 0 with t in [1/2, 1] and
 * s = 2t - 1, where omega = (2 alpha - e^{i theta} - alpha^2 e^{-i theta}) / |1 - alpha e^{i theta}|^2.
 * Congruence by I + alpha T turns the inequality into
 * 2 (1 - alpha cos theta) Q(omega T, t, s) >= 0.
 *
 * The rotation here is e^{+i theta}, the mirror of the inner branch; both
 * cover every direction since the cos(theta) conditions are even in theta.
 */
DruryParams drury_params_outer(double alpha, double theta);

/**
 * Reduction of Re(e^{-i theta}(phi_alpha(T) - alpha)) <= (1 - alpha^2) I, for
 * cos(theta) >= alpha, to Q(omega T, t, s) >= 0 with t in [0, 1/2] and
 * s = t^2 - 1/4; the congruent form is 2 Q(omega T, t, s).
 *
 * The T* coefficient of the expanded form is read as (2 alpha - e^{i theta}),
 * the adjoint of the T coefficient. At t = 0 (alpha = 1/2, theta = 0) the
 * phase is undefined and omega = 1 is returned.
 */
DruryParams drury_params_inner(double alpha, double theta);

}  // namespace fov
