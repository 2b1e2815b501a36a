#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fovkit/linalg.hpp"

namespace fov {

/**
 * Finite Blaschke product B(z) = c * prod_k (a_k - z) / (1 - conj(a_k) z)
 * with |c| = 1 and every zero inside the open unit disk.
 *
 * The identity function is zeros = {0}, constant = -1.
 */
class BlaschkeProduct {
 public:
  BlaschkeProduct(Complex constant, std::vector<Complex> zeros);

  static BlaschkeProduct identity() { return BlaschkeProduct(-1.0, {0.0}); }

  Complex constant() const noexcept { return constant_; }
  const std::vector<Complex>& zeros() const noexcept { return zeros_; }
  std::size_t degree() const noexcept { return zeros_.size(); }

  /// True when one of the stored zeros is the origin (within 1e-12).
  bool vanishes_at_origin() const;

 private:
  Complex constant_;
  std::vector<Complex> zeros_;
};

/// Throws PoleHit if some |1 - conj(a_k) z| < 1e-14.
Complex eval(const BlaschkeProduct& b, Complex z);

/// zeta B'(zeta) / B(zeta) = sum_k (1 - |a_k|^2) / |zeta - a_k|^2 for |zeta| = 1.
/// This is the derivative of t -> arg B(e^{it}).
double circle_log_derivative(const BlaschkeProduct& b, Complex zeta);

/// The `degree` solutions of B(zeta) = gamma on the unit circle, ordered by
/// increasing argument in [0, 2pi).
std::vector<Complex> level_set(const BlaschkeProduct& b, Complex gamma);

struct ClarkAtom {
  Complex zeta;   // unimodular
  double weight;  // positive
};

/// 1 / (1 - conj(gamma) B(z)) = sum_k c_k / (1 - conj(zeta_k) z) for B(0) = 0.
struct ClarkDecomposition {
  Complex gamma;
  std::vector<ClarkAtom> atoms;

  double total_weight() const;
  /// Right-hand side of the partial-fraction expansion at z.
  Complex expansion(Complex z) const;
};

ClarkDecomposition clark_decomposition(const BlaschkeProduct& b, Complex gamma);

/// Largest |1/(1 - conj(gamma) B(z)) - expansion(z)| over the given points.
double clark_residual(const BlaschkeProduct& b, const ClarkDecomposition& d,
                      std::span<const Complex> points);

/// Deterministic spiral of n points filling the closed disk of the given radius.
std::vector<Complex> disk_sample_points(std::size_t n, double radius);

}  // namespace fov
